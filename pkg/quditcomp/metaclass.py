#!/usr/bin/env python3
#
#  metaclass.py
"""
Metaclass for settings.
"""
#
#  Copyright © 2020 Dominic Davis-Foster <dominic@davis-foster.co.uk>
#  Copyright © 2026 The quditcomp Authors
#
#  Permission is hereby granted, free of charge, to any person obtaining a copy
#  of this software and associated documentation files (the "Software"), to deal
#  in the Software without restriction, including without limitation the rights
#  to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
#  copies of the Software, and to permit persons to whom the Software is
#  furnished to do so, subject to the following conditions:
#
#  The above copyright notice and this permission notice shall be included in all
#  copies or substantial portions of the Software.
#
#  THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
#  EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF
#  MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.
#  IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM,
#  DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR
#  OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE
#  OR OTHER DEALINGS IN THE SOFTWARE.
#

# stdlib
from abc import abstractmethod
from typing import TYPE_CHECKING, Any, Dict, Mapping, Optional, Type, cast

# this package
from quditcomp.utils import basic_schema, flag_name, get_json_type

__all__ = ["SettingMeta"]

if TYPE_CHECKING:
	# this package
	from quditcomp.configvar import Setting

#: Bound attributes, and the JSON schema keywords they are emitted as.
_bound_keywords = {
		"minimum": "minimum",
		"maximum": "maximum",
		"exclusive_minimum": "exclusiveMinimum",
		"exclusive_maximum": "exclusiveMaximum",
		}


class SettingMeta(type):
	"""
	Metaclass for settings.
	"""

	dtype: Type
	required: bool
	default: Any
	category: str
	minimum: Optional[float]
	maximum: Optional[float]
	exclusive_minimum: Optional[float]
	exclusive_maximum: Optional[float]
	envvar: Optional[str]
	flag: str
	__name__: str

	def __new__(cls, name: str, bases, dct: Dict):  # noqa: D102,MAN001
		x = cast("Setting", super().__new__(cls, name, bases, dct))

		def get(name: str, default: Any) -> Any:
			return dct.get(name, getattr(x, name, default))

		x.dtype = get("dtype", Any)
		x.required = get("required", False)
		x.default = get("default", None)
		x.category = get("category", "other")
		x.envvar = dct.get("envvar", None)

		for attr in _bound_keywords:
			setattr(x, attr, dct.get(attr, None))

		x.__name__ = dct.get("name", dct.get("__name__", x.__name__))
		x.flag = flag_name(x.__name__)

		return x

	@property
	def description(cls) -> str:
		"""
		The first paragraph of the setting's docstring, on one line.
		"""

		for paragraph in (cls.__doc__ or '').split("\n\n"):
			paragraph = ' '.join(p.strip() for p in paragraph.split('\n') if p.strip())
			if paragraph:
				return paragraph

		return ''

	@property
	def bounds(cls) -> Dict[str, float]:
		"""
		The bounds which are set, keyed by attribute name.
		"""

		return {attr: getattr(cls, attr) for attr in _bound_keywords if getattr(cls, attr) is not None}

	def get_schema_entry(cls, schema: Optional[Dict] = None) -> Dict[str, Any]:
		"""
		Returns the JSON schema entry for this setting.

		:param schema: An existing schema to add the entry to.

		:return: Dictionary representation of the JSON schema.
		"""

		if schema is None:
			schema = {
					**basic_schema,
					"properties": {},
					"required": [],
					}

		entry = get_json_type(cls.dtype)
		if entry is NotImplemented:
			raise NotImplementedError(cls.__name__, cls.dtype)

		entry = dict(entry)

		for attr, value in cls.bounds.items():
			entry[_bound_keywords[attr]] = value

		if cls.description:
			entry["description"] = cls.description

		schema["properties"][cls.__name__] = entry

		if cls.required:
			schema["required"].append(cls.__name__)

		return schema

	@property
	def schema_entry(cls) -> Dict[str, Any]:  # noqa: D102
		return cls.get_schema_entry()

	def __call__(cls, raw_settings: Mapping[str, Any]) -> Any:  # type: ignore[override]
		"""
		Alias for :meth:`Setting.get <.Setting.get>`.

		:param raw_settings: Mapping to obtain the value from.
		"""

		return cls.get(raw_settings)

	@abstractmethod
	def get(cls, raw_settings: Mapping[str, Any]):  # pragma: no cover  # noqa: D102,MAN002
		return NotImplemented

	def __repr__(self) -> str:
		return f"<Setting {self.__name__!r}>"
