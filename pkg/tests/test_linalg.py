# stdlib
import math

# 3rd party
import numpy as np
import pytest

# this package
from quditcomp.circuit import build_named
from quditcomp.gates import QuditSystem, rotation_block
from quditcomp.linalg import (
		NonUnitaryError,
		as_matrix,
		embed_two_level,
		fidelity,
		infidelity,
		is_unitary,
		kron,
		multiply,
		nearest_unitary,
		random_unitary,
		unitarity_deviation
		)
from quditcomp.testing import assert_unitary

X01 = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)


def test_multiply():
	np.testing.assert_allclose(multiply(np.eye(3), np.eye(3)), np.eye(3))
	np.testing.assert_allclose(multiply(X01, X01), np.eye(3))

	forward = embed_two_level(rotation_block(math.pi / 2, 0), 3, 0, 1)
	backward = embed_two_level(rotation_block(-math.pi / 2, 0), 3, 0, 1)
	np.testing.assert_allclose(multiply(forward, backward), np.eye(3), atol=1e-15)


def test_multiply_mismatch():
	with pytest.raises(ValueError, match="Dimension mismatch: 2 != 3"):
		multiply(np.eye(2), np.eye(3))


def test_multiply_matches_loops():
	a, b = random_unitary(5, seed=1), random_unitary(5, seed=2)
	expected = np.zeros((5, 5), dtype=complex)

	for i in range(5):
		for j in range(5):
			for k in range(5):
				expected[i, j] += a[i, k] * b[k, j]

	np.testing.assert_allclose(multiply(a, b), expected, atol=1e-12)


def test_kron():
	np.testing.assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

	omega = np.exp(2j * math.pi / 3)
	product = kron(np.diag([1, omega, omega**2]), np.eye(3))

	for i in range(3):
		for j in range(3):
			assert product[3 * i + j, 3 * i + j] == pytest.approx(omega**i)


def test_kron_matches_loops():
	a, b = random_unitary(2, seed=3), random_unitary(3, seed=4)
	expected = np.zeros((6, 6), dtype=complex)

	for i in range(2):
		for j in range(3):
			for k in range(2):
				for m in range(3):
					expected[3 * i + j, 3 * k + m] = a[i, k] * b[j, m]

	np.testing.assert_allclose(kron(a, b), expected, atol=1e-12)


def test_kron_mixed_product():
	a, b, c, d = (random_unitary(3, seed=s) for s in range(4))
	np.testing.assert_allclose(kron(a, b) @ kron(c, d), kron(a @ c, b @ d), atol=1e-12)


def test_fidelity():
	u = random_unitary(9, seed=7)

	assert fidelity(u, u) == pytest.approx(1.0)
	assert fidelity(u, np.exp(0.4j) * u) == pytest.approx(1.0)
	assert infidelity(u, u) == pytest.approx(0.0, abs=1e-12)

	csum = build_named("CSUM", QuditSystem(3, 3))
	assert fidelity(np.eye(9), csum) == pytest.approx(1 / 3)


@pytest.mark.parametrize("seed", range(100))
def test_fidelity_symmetric_and_left_invariant(seed: int):
	a, b, w = (random_unitary(9, seed=1000 + 3 * seed + k) for k in range(3))

	assert fidelity(a, b) == pytest.approx(fidelity(b, a), abs=1e-12)
	assert fidelity(w @ a, w @ b) == pytest.approx(fidelity(a, b), abs=1e-12)
	assert 0 <= fidelity(a, b) <= 1 + 1e-12


def test_fidelity_mismatch():
	with pytest.raises(ValueError, match="Dimension mismatch"):
		fidelity(np.eye(4), np.eye(9))


@pytest.mark.parametrize(
		"matrix, expects",
		[
				pytest.param(np.eye(4), True, id="identity"),
				pytest.param(2 * np.eye(4), False, id="scaled"),
				pytest.param(X01, True, id="permutation"),
				pytest.param(np.ones((2, 2)), False, id="ones"),
				]
		)
def test_is_unitary(matrix: np.ndarray, expects: bool):
	assert is_unitary(matrix, 1e-12) is expects


def test_is_unitary_tolerance():
	with pytest.raises(ValueError, match="'tol' must be positive"):
		is_unitary(np.eye(2), 0)


def test_unitarity_deviation():
	assert unitarity_deviation(np.eye(3)) == 0
	assert unitarity_deviation(2 * np.eye(3)) == pytest.approx(3)


@pytest.mark.parametrize("value", [math.nan, math.inf, -math.inf, complex(0, math.nan)])
def test_non_finite_not_unitary(value: complex):
	matrix = np.eye(4, dtype=complex)
	matrix[2, 1] = value

	assert unitarity_deviation(matrix) == math.inf
	assert not is_unitary(matrix, 1e-3)


def test_nearest_unitary():
	u = random_unitary(4, seed=11)
	noisy = u + 1e-6 * np.random.default_rng(0).standard_normal((4, 4))

	repaired = nearest_unitary(noisy)
	assert_unitary(repaired)
	assert fidelity(repaired, u) > 1 - 1e-9


def test_random_unitary():
	u = random_unitary(6, seed=5)
	assert_unitary(u)
	np.testing.assert_array_equal(u, random_unitary(6, seed=5))

	assert random_unitary(1, seed=0).shape == (1, 1)
	assert_unitary(random_unitary(1, seed=0))

	with pytest.raises(ValueError, match="'dim' must be at least 1"):
		random_unitary(0)


def test_as_matrix():
	assert as_matrix([[1, 0], [0, 1]]).dtype == complex

	with pytest.raises(ValueError, match="square matrix"):
		as_matrix([[1, 0, 0], [0, 1, 0]])

	with pytest.raises(ValueError, match="square matrix"):
		as_matrix([1, 2])


def test_embed_two_level():
	block = np.array([[1, 2], [3, 4]])
	out = embed_two_level(block, 4, 3, 1)

	assert out[3, 3] == 1
	assert out[3, 1] == 2
	assert out[1, 3] == 3
	assert out[1, 1] == 4
	assert out[0, 0] == out[2, 2] == 1

	with pytest.raises(ValueError, match="Levels must be distinct"):
		embed_two_level(block, 4, 1, 1)

	with pytest.raises(ValueError, match="Level 4 out of range for dimension 4"):
		embed_two_level(block, 4, 0, 4)


def test_non_unitary_error():
	error = NonUnitaryError(0.5, 1e-8)

	assert isinstance(error, ValueError)
	assert error.deviation == 0.5
	assert error.tol == 1e-8
	assert "5.000e-01" in str(error)
