#!/usr/bin/env python3
#
#  testing.py
"""
Helpers for testing settings and matrices.

.. extras-require:: testing
	:pyproject:
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
from abc import ABC
from typing import Any, Dict, List

# 3rd party
import numpy as np
import pytest  # nodep

# this package
from quditcomp.linalg import ComplexMatrix, as_matrix, fidelity, unitarity_deviation
from quditcomp.metaclass import SettingMeta

__all__ = [
		"SettingTest",
		"NotStrTest",
		"NotBoolTest",
		"NotListTest",
		"IntTest",
		"FloatTest",
		"BoolFalseTest",
		"LiteralTest",
		"StringTest",
		"assert_unitary",
		"assert_equal_up_to_phase",
		"test_list_int",
		"test_list_str",
		]

test_list_int = [1, 2, 3, 4]
test_list_str = ['a', 'b', 'c', 'd']


class SettingTest(ABC):
	r"""
	Base class for tests of :class:`~quditcomp.configvar.Setting`\s.
	"""

	#: The :class:`~quditcomp.configvar.Setting` under test.
	setting: SettingMeta

	#: The value returned when no value is given.
	default_value: Any

	different_key_value: Dict[str, Any] = {"unrelated_key": "value"}
	"""
	A mapping whose keys are not the setting's name.
	"""

	def test_default(self):  # noqa: D102
		assert self.setting.get() == self.default_value
		assert self.setting.get({}) == self.default_value
		assert self.setting.get(self.different_key_value) == self.default_value

	def test_schema_entry(self):  # noqa: D102
		entry = self.setting.schema_entry
		assert self.setting.__name__ in entry["properties"]
		assert entry["properties"][self.setting.__name__]["description"]


class NotStrTest(SettingTest):
	r"""
	Mixin to add tests for :class:`~quditcomp.configvar.Setting`\s that can't be strings.
	"""

	def test_error_str(self):
		"""
		Checks that the setting raises a :class:`ValueError` when passed a :class:`str`.
		"""

		with pytest.raises(ValueError):  # noqa: PT011
			self.setting.get({self.setting.__name__: "a string"})


class NotBoolTest(SettingTest):
	r"""
	Mixin to add tests for :class:`~quditcomp.configvar.Setting`\s that can't be boolean values.
	"""

	def test_error_bool(self):
		"""
		Checks that the setting raises a :class:`ValueError` when passed a :class:`bool`.
		"""

		with pytest.raises(ValueError):  # noqa: PT011
			self.setting.get({self.setting.__name__: True})


class NotListTest(SettingTest):
	r"""
	Mixin to add tests for :class:`~quditcomp.configvar.Setting`\s that can't be lists.
	"""

	def test_error_list(self):  # noqa: D102
		for value in (test_list_int, test_list_str):
			with pytest.raises(ValueError):  # noqa: PT011
				self.setting.get({self.setting.__name__: value})


class IntTest(NotStrTest, NotBoolTest, NotListTest):
	"""
	Test for integer settings.
	"""

	#: Values which are valid and should be returned unchanged.
	valid_values: List[int]

	#: Integers outside the setting's bounds.
	out_of_bounds: List[int] = []

	def test_success(self):  # noqa: D102
		for value in self.valid_values:
			assert self.setting.get({self.setting.__name__: value}) == value

	def test_error_float(self):
		"""
		Checks that the setting raises a :class:`ValueError` when passed a :class:`float`.
		"""

		with pytest.raises(ValueError, match="must be an integer"):
			self.setting.get({self.setting.__name__: 1.5})

	def test_out_of_bounds(self):  # noqa: D102
		for value in self.out_of_bounds:
			with pytest.raises(ValueError, match=f"'{self.setting.__name__}' must be"):
				self.setting.get({self.setting.__name__: value})


class FloatTest(NotStrTest, NotBoolTest, NotListTest):
	"""
	Test for floating-point settings. Integers are accepted.
	"""

	#: Values which are valid and should be returned unchanged.
	valid_values: List[float]

	#: Numbers outside the setting's bounds.
	out_of_bounds: List[float] = []

	def test_success(self):  # noqa: D102
		for value in self.valid_values:
			result = self.setting.get({self.setting.__name__: value})
			assert isinstance(result, float)
			assert result == value

	def test_out_of_bounds(self):  # noqa: D102
		for value in self.out_of_bounds:
			with pytest.raises(ValueError, match=f"'{self.setting.__name__}' must be"):
				self.setting.get({self.setting.__name__: value})


class BoolFalseTest(SettingTest):
	"""
	Test for boolean settings which default to :py:obj:`False`.
	"""

	default_value = False

	@property
	def true_values(self) -> List[Dict[str, Any]]:  # noqa: D102
		return [
				{self.setting.__name__: True},
				{self.setting.__name__: 1},
				{self.setting.__name__: "True"},
				{self.setting.__name__: "yes"},
				]

	@property
	def false_values(self) -> List[Dict[str, Any]]:  # noqa: D102
		return [
				{self.setting.__name__: 0},
				{self.setting.__name__: False},
				{self.setting.__name__: "off"},
				self.different_key_value,
				{},
				]

	def test_true(self):  # noqa: D102
		for true_value in self.true_values:
			assert self.setting.get(true_value) is True

	def test_false(self):  # noqa: D102
		for false_value in self.false_values:
			assert self.setting.get(false_value) is False

	def test_errors(self):  # noqa: D102
		for wrong_value in ("a string", test_list_int, 1.5):
			with pytest.raises(ValueError):  # noqa: PT011
				self.setting.get({self.setting.__name__: wrong_value})


class LiteralTest(SettingTest):
	"""
	Test for settings with a fixed set of values.
	"""

	#: Values of the right type which are not allowed.
	non_enum_values: List[Any]

	def test_allowed(self):  # noqa: D102
		for value in self.setting.schema_entry["properties"][self.setting.__name__]["enum"]:
			assert self.setting.get({self.setting.__name__: value}) == value
			assert self.setting.get({self.setting.__name__: value.upper()}) == value

	def test_non_enum(self):  # noqa: D102
		for non_enum in self.non_enum_values:
			with pytest.raises(ValueError, match="must be one of"):
				self.setting.get({self.setting.__name__: non_enum})

	def test_errors(self):  # noqa: D102
		for wrong_value in (1234, True, test_list_str):
			with pytest.raises(ValueError):  # noqa: PT011
				self.setting.get({self.setting.__name__: wrong_value})


class StringTest(NotBoolTest, NotListTest):
	"""
	Test for string settings.
	"""

	#: A value that is valid and should be returned unchanged.
	test_value: str

	def test_success(self):  # noqa: D102
		assert self.setting.get({self.setting.__name__: self.test_value}) == self.test_value

	def test_error_int(self):  # noqa: D102
		with pytest.raises(ValueError, match="must be a string"):
			self.setting.get({self.setting.__name__: 1234})


def assert_unitary(matrix: ComplexMatrix, tol: float = 1e-10) -> None:
	"""
	Assert that ``matrix`` is unitary to within ``tol`` in the max-norm.
	"""

	deviation = unitarity_deviation(matrix)
	assert deviation <= tol, f"Matrix deviates from unitarity by {deviation:.3e}"


def assert_equal_up_to_phase(actual: ComplexMatrix, expected: ComplexMatrix, tol: float = 1e-10) -> None:
	"""
	Assert that two matrices are equal up to a global phase.

	Both the infidelity and the elementwise difference after removing the phase must be within ``tol``.
	"""

	actual, expected = as_matrix(actual), as_matrix(expected)
	assert actual.shape == expected.shape, f"Shapes differ: {actual.shape} != {expected.shape}"

	infidelity = 1 - fidelity(actual, expected)
	assert infidelity <= tol, f"Infidelity {infidelity:.3e} exceeds {tol:.1e}"

	overlap = np.vdot(actual, expected)
	phase = overlap / abs(overlap) if abs(overlap) else 1
	np.testing.assert_allclose(actual * phase, expected, atol=max(tol, 1e-8) * 10)
