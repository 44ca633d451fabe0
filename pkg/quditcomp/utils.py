#!/usr/bin/env python3
#
#  utils.py
"""
Helpers for declaring settings: value lookup, type names and JSON schemas.
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
import copy
import os
from types import MappingProxyType
from typing import TYPE_CHECKING, Any, Dict, Mapping, Tuple, Type

# 3rd party
from typing_inspect import is_literal_type  # type: ignore[import]

if TYPE_CHECKING:
	# this package
	from quditcomp.metaclass import SettingMeta

__all__ = [
		"RawSettingsType",
		"basic_schema",
		"get_literal_values",
		"get_json_type",
		"get_type_name",
		"optional_getter",
		"make_schema",
		"flag_name",
		]

RawSettingsType = Mapping[str, Any]


def get_literal_values(literal: Any) -> Tuple[Any, ...]:
	"""
	Returns a tuple of permitted values for a :class:`typing.Literal`.

	:param literal:
	"""

	return tuple(literal.__args__)


#: Mapping of Python types to their JSON schema types.
json_type_lookup = {
		str: "string",
		int: "integer",
		float: "number",
		bool: "boolean",
		}

#: Mapping of Python types to the names shown in help text.
type_name_lookup = {
		str: "string",
		int: "integer",
		float: "number",
		bool: "boolean",
		}


def get_json_type(type_: Type) -> Dict[str, Any]:
	r"""
	Get the JSON schema entry that corresponds to the given Python type.

	:param type\_:

	:returns: The schema entry, or :py:obj:`NotImplemented` if the type is not supported.
	"""

	if type_ in json_type_lookup:
		return {"type": json_type_lookup[type_]}

	elif is_literal_type(type_):
		return {"enum": list(get_literal_values(type_))}

	else:
		return NotImplemented


def get_type_name(type_: Type) -> str:
	r"""
	Returns a human-readable name for the given Python type.

	:param type\_:
	"""

	if type_ in type_name_lookup:
		return type_name_lookup[type_]

	elif is_literal_type(type_):
		return " or ".join(repr(x) for x in get_literal_values(type_))

	else:
		return str(type_)


basic_schema = MappingProxyType({
		"$schema": "http://json-schema.org/draft-07/schema",
		"type": "object",
		})


def optional_getter(raw_settings: RawSettingsType, cls: "SettingMeta", required: bool) -> Any:
	"""
	Returns the value of a setting from ``raw_settings``,
	then from the setting's environment variable, then the default.

	:param raw_settings:
	:param cls:
	:param required:

	:raises ValueError: If the value is required but was not supplied.
	"""  # noqa: D400

	if cls.__name__ in raw_settings:
		return raw_settings[cls.__name__]

	if cls.envvar and os.environ.get(cls.envvar):
		return os.environ[cls.envvar]

	if required:
		raise ValueError(f"A value for '{cls.__name__}' is required.")

	if callable(cls.default):
		return copy.deepcopy(cls.default(raw_settings))
	else:
		return copy.deepcopy(cls.default)


def make_schema(*settings: "SettingMeta") -> Dict[str, Any]:
	"""
	Create a JSON schema from a list of :class:`~quditcomp.configvar.Setting` classes.

	:param settings:

	:return: Dictionary representation of the JSON schema.
	"""

	schema: Dict[str, Any] = {
			**basic_schema,
			"properties": {},
			"required": [],
			"additionalProperties": False,
			}

	for var in settings:
		schema = var.get_schema_entry(schema)

	return schema


def flag_name(name: str) -> str:
	"""
	Returns the command-line flag for a setting name, e.g. ``--target-infidelity``.

	:param name:
	"""

	return "--" + name.replace('_', '-')
