#!/usr/bin/env python3
#
#  parser.py
"""
Parser for YAML settings files.
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
from typing import Any, Dict, List, Mapping, MutableMapping, Optional

# 3rd party
import jsonschema  # type: ignore[import]
from domdf_python_tools.paths import PathPlus
from domdf_python_tools.typing import PathLike
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

# this package
from quditcomp.files import FileFormatError
from quditcomp.metaclass import SettingMeta
from quditcomp.utils import make_schema
from quditcomp.validator import validate_document

__all__ = ["Parser"]


class Parser:
	"""
	Base class for settings parsers.

	Custom parsing steps for each setting can be implemented with methods in the form:

	.. code-block:: python

		def visit_<setting name>(
				self,
				raw_settings: Mapping[str, Any],
				) -> Any: ...

	The method must return the value of the setting, or raise :exc:`ValueError` for invalid input.

	A final step, useful when settings must be checked against one another,
	may be implemented in the ``custom_parsing`` method.

	:param allow_unknown_keys: Whether settings files may contain keys with no matching setting.
	"""

	settings: List[SettingMeta]

	def __init__(self, allow_unknown_keys: bool = False):
		self.allow_unknown_keys = allow_unknown_keys

	@property
	def schema(self) -> Dict[str, Any]:
		"""
		The JSON schema settings files are validated against.
		"""

		schema = make_schema(*self.settings)
		schema["additionalProperties"] = self.allow_unknown_keys
		return schema

	def load(self, filename: PathLike) -> Dict[str, Any]:
		"""
		Load and validate the raw settings from a YAML file.

		An empty file gives no settings.

		:param filename:

		:raises FileNotFoundError: If the file does not exist.
		:raises FileFormatError: If the file is not YAML or does not match :attr:`schema`.
		"""

		filename = PathPlus(filename)

		if not filename.is_file():
			raise FileNotFoundError(str(filename))

		try:
			raw_settings = YAML(typ="safe", pure=True).load(filename.read_text())
		except YAMLError as e:
			raise FileFormatError(filename, f"invalid YAML: {e}") from None

		if raw_settings is None:
			raw_settings = {}

		try:
			validate_document(raw_settings, self.schema, str(filename))
		except jsonschema.exceptions.ValidationError as e:
			raise FileFormatError(filename, e.message) from None

		return dict(raw_settings)

	def parse(self, raw_settings: Mapping[str, Any]) -> MutableMapping[str, Any]:
		"""
		Validate each setting from ``raw_settings``, falling back to environment variables and defaults.

		:param raw_settings:

		:raises ValueError: If a value is invalid.
		"""

		parsed_settings: MutableMapping[str, Any] = {}

		for var in self.settings:
			parsed_settings[var.__name__] = getattr(self, f"visit_{var.__name__}", var.get)(raw_settings)

		return self.custom_parsing(raw_settings, parsed_settings)

	def run(
			self,
			filename: Optional[PathLike] = None,
			overrides: Optional[Mapping[str, Any]] = None,
			) -> MutableMapping[str, Any]:
		"""
		Parse settings from an optional file, with ``overrides`` taking precedence.

		Overrides whose value is :py:obj:`None` are ignored.

		:param filename: The YAML settings file.
		:param overrides: Values given on the command line.
		"""

		raw_settings = self.load(filename) if filename is not None else {}

		for key, value in (overrides or {}).items():
			if value is not None:
				raw_settings[key] = value

		return self.parse(raw_settings)

	def custom_parsing(
			self,
			raw_settings: Mapping[str, Any],
			parsed_settings: MutableMapping[str, Any],
			) -> MutableMapping[str, Any]:
		"""
		Custom parsing step.

		:param raw_settings: Mapping of raw settings.
		:param parsed_settings: Mapping of validated settings.
		"""

		return parsed_settings
