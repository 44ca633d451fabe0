#!/usr/bin/env python3
#
#  validator.py
"""
Validation of setting values and of JSON documents.
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
from typing import Any, Mapping, Optional, Union

# 3rd party
import jsonschema  # type: ignore[import]
from domdf_python_tools.utils import strtobool
from typing_extensions import NoReturn
from typing_inspect import is_literal_type  # type: ignore[import]

# this package
from quditcomp.metaclass import SettingMeta
from quditcomp.utils import RawSettingsType, get_literal_values, optional_getter

__all__ = ["Validator", "validate_document"]


class Validator:
	"""
	Validates the value of a setting. Methods are named ``visit_<type>``.

	:param setting:
	"""

	def __init__(self, setting: SettingMeta):
		self.setting = setting

	_dtypes = {
			str: "str",
			int: "int",
			float: "float",
			bool: "bool",
			}

	def validate(self, raw_settings: Optional[RawSettingsType] = None) -> Any:
		"""
		Validate the setting's value.

		:param raw_settings:

		:returns: The validated value.
		"""

		if raw_settings is None:
			raw_settings = {}

		if self.setting.dtype in self._dtypes:
			return getattr(self, f"visit_{self._dtypes[self.setting.dtype]}")(raw_settings)

		elif is_literal_type(self.setting.dtype):
			return self.visit_literal(raw_settings)

		else:
			self.unknown_type()

	def _check_bounds(self, value: Union[int, float]) -> Union[int, float]:
		name = self.setting.__name__
		bounds = self.setting.bounds

		if "minimum" in bounds and value < bounds["minimum"]:
			raise ValueError(f"'{name}' must be at least {bounds['minimum']}, not {value!r}")
		if "maximum" in bounds and value > bounds["maximum"]:
			raise ValueError(f"'{name}' must be at most {bounds['maximum']}, not {value!r}")
		if "exclusive_minimum" in bounds and value <= bounds["exclusive_minimum"]:
			raise ValueError(f"'{name}' must be greater than {bounds['exclusive_minimum']}, not {value!r}")
		if "exclusive_maximum" in bounds and value >= bounds["exclusive_maximum"]:
			raise ValueError(f"'{name}' must be less than {bounds['exclusive_maximum']}, not {value!r}")

		return value

	def visit_str(self, raw_settings: RawSettingsType) -> str:
		"""
		Used to validate :class:`str` values.

		:param raw_settings:
		"""

		obj = optional_getter(raw_settings, self.setting, self.setting.required)

		if not isinstance(obj, str):
			raise ValueError(f"'{self.setting.__name__}' must be a string, not {type(obj)}") from None

		return obj

	def visit_int(self, raw_settings: RawSettingsType) -> int:
		"""
		Used to validate :class:`int` values.

		:class:`bool` is rejected even though it subclasses :class:`int`.

		:param raw_settings:
		"""

		obj = optional_getter(raw_settings, self.setting, self.setting.required)

		if isinstance(obj, bool) or not isinstance(obj, int):
			raise ValueError(f"'{self.setting.__name__}' must be an integer, not {type(obj)}") from None

		return int(self._check_bounds(obj))

	def visit_float(self, raw_settings: RawSettingsType) -> float:
		"""
		Used to validate :class:`float` values. Integers are accepted and converted.

		:param raw_settings:
		"""

		obj = optional_getter(raw_settings, self.setting, self.setting.required)

		if isinstance(obj, bool) or not isinstance(obj, (int, float)):
			raise ValueError(f"'{self.setting.__name__}' must be a number, not {type(obj)}") from None

		return float(self._check_bounds(obj))

	def visit_bool(self, raw_settings: RawSettingsType) -> bool:
		"""
		Used to validate :class:`bool` values.

		Strings such as ``'yes'`` and ``'off'`` are converted.

		:param raw_settings:
		"""

		obj = optional_getter(raw_settings, self.setting, self.setting.required)

		if not isinstance(obj, (int, bool, str)):
			raise ValueError(
					f"'{self.setting.__name__}' must be one of {(int, bool, str)}, "
					f"not {type(obj)}"
					) from None

		return bool(strtobool(obj))

	def visit_literal(self, raw_settings: RawSettingsType) -> Any:
		"""
		Used to validate :class:`typing.Literal` values.

		:param raw_settings:
		"""

		obj = optional_getter(raw_settings, self.setting, self.setting.required)

		if isinstance(obj, str):
			obj = obj.lower()

		if obj not in get_literal_values(self.setting.dtype):
			raise ValueError(
					f"'{self.setting.__name__}' must be one of {get_literal_values(self.setting.dtype)}, "
					f"not {obj!r}"
					) from None

		return obj

	def unknown_type(self) -> NoReturn:
		"""
		Called when the desired type has no visitor.
		"""

		raise NotImplementedError(f"No validator for {self.setting!r} of type {self.setting.dtype}")


def validate_document(document: Any, schema: Mapping[str, Any], filename: Optional[str] = None) -> None:
	"""
	Validate a parsed JSON or YAML document against a JSON schema.

	:param document:
	:param schema:
	:param filename: Recorded on the exception as ``filename``.

	:raises jsonschema.exceptions.ValidationError: If the document does not match.
	"""

	try:
		jsonschema.validate(document, schema, format_checker=jsonschema.FormatChecker())
	except jsonschema.exceptions.ValidationError as e:
		e.filename = filename
		raise e
