#!/usr/bin/env python3
#
#  configvar.py
"""
Base class for settings.
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
from typing import Any, Callable, Optional, Type, Union

# this package
from quditcomp.metaclass import SettingMeta
from quditcomp.utils import RawSettingsType, get_type_name
from quditcomp.validator import Validator

__all__ = ["Setting"]


class Setting(metaclass=SettingMeta):
	"""
	Base class for compiler settings.

	The class docstring is the description of the setting,
	and the name of the class is the setting's name in configuration files.

	:bold-title:`Example:`

	.. code-block:: python

		class restarts(Setting):
			\"\"\"
			Independent annealing runs per layer count.
			\"\"\"

			dtype = int
			default = 4
			minimum = 1
			category = "annealing"

	"""  # noqa: D300,D301

	dtype: Type
	"""
	The allowed type in configuration files: :class:`str`, :class:`int`, :class:`float`,
	:class:`bool` or a :class:`typing.Literal`.
	"""

	required: bool
	"""
	Flag to indicate whether the setting is required. Default :py:obj:`False`.
	"""

	default: Union[Callable[[RawSettingsType], Any], Any]
	"""
	The default value of the setting. May also be a callable which returns the default.
	"""

	category: str
	"""
	The group the setting is listed under.
	"""

	minimum: Optional[float]
	maximum: Optional[float]
	exclusive_minimum: Optional[float]
	exclusive_maximum: Optional[float]

	envvar: Optional[str]
	"""
	An environment variable consulted before the default.
	"""

	flag: str
	"""
	The command-line flag for the setting.
	"""

	__name__: str

	@classmethod
	def validator(cls, value: Any) -> Any:
		"""
		Additional validation, run after the type and bounds checks.

		* Should raise :exc:`ValueError` if the value is invalid, and return it otherwise.
		* May change the value before returning it.
		"""

		return value

	def __new__(cls, raw_settings: RawSettingsType) -> Any:  # noqa: D102
		# Exists purely so mypy knows about the signature
		return cls.get(raw_settings)  # pragma: no cover

	@classmethod
	def get(cls, raw_settings: Optional[RawSettingsType] = None) -> Any:
		"""
		Returns the value of this setting.

		:param raw_settings: Mapping to obtain the value from.
		"""

		return cls.validator(cls.validate(raw_settings))

	@classmethod
	def validate(cls, raw_settings: Optional[RawSettingsType] = None) -> Any:
		"""
		Validate the value obtained from ``raw_settings`` and coerce it into :attr:`~.Setting.dtype`.

		:param raw_settings: Mapping to obtain the value from.
		"""

		return Validator(cls).validate(raw_settings)

	@classmethod
	def help_text(cls) -> str:
		"""
		Returns the description of the setting for ``--help``, with its default and bounds.
		"""

		parts = [cls.description.rstrip('.') + '.']

		if cls.bounds:
			parts.append(f"Type: {get_type_name(cls.dtype)}, {_format_bounds(cls.bounds)}.")
		else:
			parts.append(f"Type: {get_type_name(cls.dtype)}.")

		if cls.envvar:
			parts.append(f"Environment variable: {cls.envvar}.")

		if not callable(cls.default):
			parts.append(f"Default: {cls.default!r}.")

		# argparse expands %-formatting in help
		return ' '.join(parts).replace('%', "%%")


def _format_bounds(bounds: dict) -> str:
	symbols = {
			"minimum": ">=",
			"maximum": "<=",
			"exclusive_minimum": '>',
			"exclusive_maximum": '<',
			}

	return " and ".join(f"{symbols[attr]} {value}" for attr, value in bounds.items())
