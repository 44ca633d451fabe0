#!/usr/bin/env python3
#
#  linalg.py
r"""
Dense complex linear algebra and the unitary metrics the compiler is built on.

Every matrix is a square :class:`numpy.ndarray` of ``complex128`` entries.
Two-qudit states :math:`|i, j\rangle` are indexed ``d2 * i + j``,
which is the ordering produced by :func:`numpy.kron`.
"""
#
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
import math
from typing import Optional

# 3rd party
import numpy as np
from scipy.stats import unitary_group  # type: ignore[import]

__all__ = [
		"ComplexMatrix",
		"NonUnitaryError",
		"as_matrix",
		"multiply",
		"kron",
		"fidelity",
		"infidelity",
		"unitarity_deviation",
		"is_unitary",
		"nearest_unitary",
		"random_unitary",
		"embed_two_level",
		"FIDELITY_SLACK",
		]

#: Type alias for the dense complex matrices passed between modules.
ComplexMatrix = np.ndarray

#: Numerical slack permitted above a fidelity of ``1`` for unitary inputs.
FIDELITY_SLACK = 1e-12


class NonUnitaryError(ValueError):
	"""
	Raised when a matrix that must be unitary deviates from unitarity by more than the tolerance.

	:param deviation: The max-norm of :math:`M^\\dagger M - I`.
	:param tol: The tolerance which was exceeded.
	"""

	def __init__(self, deviation: float, tol: float):
		self.deviation = deviation
		self.tol = tol
		super().__init__(f"Matrix is not unitary: max deviation {deviation:.3e} exceeds tolerance {tol:.1e}")


def as_matrix(m: object) -> ComplexMatrix:
	"""
	Coerce ``m`` to a square ``complex128`` matrix.

	:param m: Anything :func:`numpy.asarray` understands.

	:raises ValueError: If the result is not a non-empty square matrix.
	"""

	arr = np.asarray(m, dtype=complex)

	if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
		raise ValueError(f"Expected a non-empty square matrix, got shape {arr.shape}")

	return arr


def _check_same_dim(a: ComplexMatrix, b: ComplexMatrix) -> None:
	if a.shape != b.shape:
		raise ValueError(f"Dimension mismatch: {a.shape[0]} != {b.shape[0]}")


def multiply(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
	"""
	Returns the matrix product ``a @ b``.

	:raises ValueError: If the dimensions differ.
	"""

	a, b = as_matrix(a), as_matrix(b)
	_check_same_dim(a, b)
	return a @ b


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
	"""
	Returns the Kronecker product of ``a`` and ``b``.

	Row ``b.dim * i + j`` of the result corresponds to the two-qudit state :math:`|i, j\\rangle`.
	"""

	return np.kron(as_matrix(a), as_matrix(b))


def fidelity(a: ComplexMatrix, b: ComplexMatrix) -> float:
	r"""
	Returns the global-phase invariant fidelity :math:`|\mathrm{Tr}(A^\dagger B)| / D`.

	:param a:
	:param b:

	:raises ValueError: If the dimensions differ.
	"""

	a, b = as_matrix(a), as_matrix(b)
	_check_same_dim(a, b)
	# Tr(A^dagger B) is the sum over the elementwise product conj(A) * B
	return float(abs(np.vdot(a, b)) / a.shape[0])


def infidelity(a: ComplexMatrix, b: ComplexMatrix) -> float:
	"""
	Returns ``1 - fidelity(a, b)``.
	"""

	return 1.0 - fidelity(a, b)


def unitarity_deviation(m: ComplexMatrix) -> float:
	r"""
	Returns the max-norm of :math:`M^\dagger M - I`.

	Matrices with NaN or infinite entries are infinitely far from unitary.
	"""

	m = as_matrix(m)
	if not np.isfinite(m).all():
		return math.inf

	return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def is_unitary(m: ComplexMatrix, tol: float = 1e-10) -> bool:
	"""
	Returns whether ``m`` is unitary to within ``tol`` in the max-norm.

	:param m:
	:param tol: Must be positive.
	"""

	if tol <= 0:
		raise ValueError(f"'tol' must be positive, not {tol!r}")

	return unitarity_deviation(m) <= tol


def nearest_unitary(m: ComplexMatrix) -> ComplexMatrix:
	"""
	Returns the unitary closest to ``m`` in the Frobenius norm.

	This is the unitary factor of the polar decomposition, obtained from the SVD.
	"""

	u, _, vh = np.linalg.svd(as_matrix(m))
	return u @ vh


def random_unitary(dim: int, seed: Optional[int] = None) -> ComplexMatrix:
	"""
	Draw a Haar-random unitary.

	:param dim:
	:param seed: Seed for the random number generator.
	"""

	if dim < 1:
		raise ValueError(f"'dim' must be at least 1, not {dim}")
	if dim == 1:
		rng = np.random.default_rng(seed)
		return np.array([[np.exp(2j * np.pi * rng.random())]])

	return np.asarray(unitary_group.rvs(dim, random_state=seed), dtype=complex)


def embed_two_level(block: ComplexMatrix, dim: int, m: int, n: int) -> ComplexMatrix:
	"""
	Place the 2x2 ``block`` on levels ``m`` and ``n`` of a ``dim``-dimensional identity.

	``block[0, 1]`` lands at ``(m, n)``, so swapping ``m`` and ``n`` transposes the block's role.

	:param block:
	:param dim:
	:param m:
	:param n:
	"""

	if m == n:
		raise ValueError(f"Levels must be distinct, got ({m}, {n})")
	for level in (m, n):
		if not 0 <= level < dim:
			raise ValueError(f"Level {level} out of range for dimension {dim}")

	out = np.eye(dim, dtype=complex)
	out[m, m] = block[0, 0]
	out[m, n] = block[0, 1]
	out[n, m] = block[1, 0]
	out[n, n] = block[1, 1]
	return out
