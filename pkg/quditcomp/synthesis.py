#!/usr/bin/env python3
#
#  synthesis.py
"""
Exact synthesis of a two-qudit unitary into controlled rotations and partial swaps.

The unitary is read as a single qudit of dimension ``D = d * d`` with ladder coupling,
reduced to a diagonal by adjacent-level Givens rotations,
and the remaining diagonal is rewritten as adjacent-level rotations too.
Each rotation is then classified by whether it stays inside one control block.
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
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

# 3rd party
import numpy as np

# this package
from quditcomp.circuit import Circuit, Provenance, evaluate
from quditcomp.gates import CRot, PSwap, QuditSystem, VirtualR, rotation_block
from quditcomp.linalg import ComplexMatrix, NonUnitaryError, as_matrix, embed_two_level, fidelity, unitarity_deviation

__all__ = [
		"SynthesisError",
		"SynthesisResult",
		"embed_two_qudit",
		"givens_qr",
		"split_global_phase",
		"phase_to_rotations",
		"classify",
		"synthesize",
		"PRUNE_THRESHOLD",
		"COLUMN_TOLERANCE",
		"RECONSTRUCTION_TOLERANCE",
		]

logger = logging.getLogger(__name__)

#: Rotation angles and relative phases below this magnitude are dropped.
PRUNE_THRESHOLD = 1e-12

#: Largest sub-diagonal magnitude allowed in a column once it has been eliminated.
COLUMN_TOLERANCE = 1e-10

#: Largest infidelity allowed between the input and the synthesized sequence.
RECONSTRUCTION_TOLERANCE = 1e-10

_HALF_PI = math.pi / 2


class SynthesisError(RuntimeError):
	"""
	Raised when the elimination fails to reach a diagonal, or the result does not reconstruct the input.
	"""


@dataclass(frozen=True)
class SynthesisResult:
	"""
	The output of the synthesis stage.

	All gate sequences are in application order.

	:param rotations: The inverted elimination rotations, applied after the phase gates.
	:param phases: Angles of the diagonal left once elimination finishes.
	:param phase_gates: The diagonal re-expressed as adjacent-level rotations, up to :attr:`global_phase`.
	:param classified: :attr:`phase_gates` followed by :attr:`rotations`, as controlled rotations and partial swaps.
	:param global_phase: Phase dropped from the diagonal; the input equals ``exp(1j * global_phase)`` times the sequence.
	:param residual_check: Fidelity between the input and the synthesized sequence.
	:param system: The two-qudit system, once known.
	"""

	rotations: Tuple[VirtualR, ...]
	phases: Tuple[float, ...]
	phase_gates: Tuple[VirtualR, ...] = ()
	classified: Tuple[Union[CRot, PSwap], ...] = ()
	global_phase: float = 0.0
	residual_check: float = 1.0
	system: Optional[QuditSystem] = None

	@property
	def sequence(self) -> Tuple[VirtualR, ...]:
		"""
		Every virtual rotation, phase gates first.
		"""

		return self.phase_gates + self.rotations

	@property
	def phase_matrix(self) -> ComplexMatrix:
		"""
		The diagonal phase matrix left by the elimination.
		"""

		return np.diag(np.exp(1j * np.asarray(self.phases)))

	def to_circuit(self, source: Optional[str] = None) -> Circuit:
		"""
		Returns the classified sequence as a :class:`~.Circuit`.

		:param source: The unitary file the result was synthesized from.
		"""

		if self.system is None:
			raise ValueError("The result has no system; run 'synthesize' rather than 'givens_qr'")

		provenance = Provenance(
				source=source,
				stage="synthesize",
				metadata={"global_phase": self.global_phase, "residual_check": self.residual_check},
				)
		return Circuit(self.system, self.classified, provenance)


def embed_two_qudit(u: ComplexMatrix, system: QuditSystem, tol: float = 1e-10) -> ComplexMatrix:
	r"""
	View a two-qudit unitary as a single qudit of dimension ``D``.

	The basis state :math:`|i, j\rangle` becomes virtual level ``d * i + j``,
	which is already the row order of the matrix, so the matrix itself is returned unchanged.

	:param u:
	:param system:
	:param tol: Unitarity tolerance.

	:raises ValueError: If the dimensions are unequal or do not match ``u``.
	:raises NonUnitaryError: If ``u`` is not unitary to within ``tol``.
	"""

	u = as_matrix(u)
	system.require_equal_dims("Synthesis")

	if u.shape[0] != system.dim:
		raise ValueError(f"Matrix has dimension {u.shape[0]}, but the system has dimension {system.dim}")

	deviation = unitarity_deviation(u)
	if deviation > tol:
		raise NonUnitaryError(deviation, tol)

	return u.copy()


def _reconstruct(phases: Sequence[float], rotations: Sequence[VirtualR]) -> ComplexMatrix:
	dim = len(phases)
	matrix = np.diag(np.exp(1j * np.asarray(phases)))

	for gate in rotations:
		block = rotation_block(gate.theta, gate.phi)
		matrix = embed_two_level(block, dim, gate.level, gate.level + 1) @ matrix

	return matrix


def givens_qr(u: ComplexMatrix) -> SynthesisResult:
	"""
	Reduce ``u`` to a diagonal with rotations on adjacent levels.

	Columns are processed left to right; within a column the entries are eliminated from the bottom up,
	which keeps every column already cleared untouched.
	For the pivot pair ``(a, b)`` on levels ``(i, i + 1)`` the rotation
	``R(2 * atan2(|b|, |a|), arg(b) - arg(a) - pi / 2)`` zeroes ``b``.

	:param u: A unitary matrix.

	:returns: A result whose :attr:`~.SynthesisResult.rotations` and :attr:`~.SynthesisResult.phases`
		reconstruct ``u`` exactly.

	:raises NonUnitaryError: If ``u`` is not unitary.
	:raises SynthesisError: If a column fails to clear.
	"""

	work = as_matrix(u).copy()
	deviation = unitarity_deviation(work)
	if deviation > COLUMN_TOLERANCE:
		raise NonUnitaryError(deviation, COLUMN_TOLERANCE)

	dim = work.shape[0]
	eliminated: List[Tuple[int, float, float]] = []

	for column in range(dim - 1):
		for row in range(dim - 2, column - 1, -1):
			a, b = work[row, column], work[row + 1, column]
			theta = 2 * math.atan2(abs(b), abs(a))

			if theta < PRUNE_THRESHOLD:
				continue

			phi = float(np.angle(b) - np.angle(a)) - _HALF_PI
			rows = [row, row + 1]
			work[rows, :] = rotation_block(theta, phi) @ work[rows, :]
			eliminated.append((row, theta, phi))

		residual = float(np.max(np.abs(work[column + 1:, column])))
		if residual > COLUMN_TOLERANCE:
			raise SynthesisError(f"Column {column} still has a sub-diagonal entry of magnitude {residual:.3e}")

	off_diagonal = float(np.max(np.abs(work - np.diag(np.diag(work)))))
	if off_diagonal > COLUMN_TOLERANCE:
		raise SynthesisError(f"Elimination left an off-diagonal entry of magnitude {off_diagonal:.3e}")

	logger.debug("Eliminated %d sub-diagonal entries of a %d-level unitary", len(eliminated), dim)

	# u = G_1^dagger ... G_k^dagger Theta, and R(theta, phi)^dagger == R(-theta, phi)
	rotations = tuple(VirtualR(row, -theta, phi) for row, theta, phi in reversed(eliminated))
	phases = tuple(float(x) for x in np.angle(np.diag(work)))

	return SynthesisResult(
			rotations=rotations,
			phases=phases,
			residual_check=fidelity(_reconstruct(phases, rotations), u),
			)


def split_global_phase(phases: Sequence[float]) -> Tuple[float, Tuple[float, ...]]:
	"""
	Split diagonal phases into their mean and the relative phases, which sum to zero.

	:param phases:
	"""

	angles = np.asarray(phases, dtype=float)
	mean = float(np.mean(angles)) if angles.size else 0.0
	return mean, tuple(float(x) for x in angles - mean)


def phase_to_rotations(phases: Sequence[float]) -> List[VirtualR]:
	r"""
	Express ``diag(exp(1j * phases))``, up to a global phase, as adjacent-level rotations.

	The diagonal is a product of :math:`Z(\beta_k)` on levels ``(k, k + 1)``
	with :math:`\beta_k = -2 \sum_{m \le k} a_m`, where :math:`a_m` are the relative phases.
	Each :math:`Z(\beta)` becomes ``R(-pi/2, 0)``, ``R(beta, pi/2)``, ``R(pi/2, 0)`` in application order.

	:param phases: Angles of the diagonal entries.
	"""

	_, relative = split_global_phase(phases)

	gates: List[VirtualR] = []
	beta = 0.0

	for level, a in enumerate(relative[:-1]):
		beta -= 2 * a
		if abs(beta) < PRUNE_THRESHOLD:
			continue

		gates.extend([
				VirtualR(level, -_HALF_PI, 0.0),
				VirtualR(level, beta, _HALF_PI),
				VirtualR(level, _HALF_PI, 0.0),
				])

	return gates


def classify(rotations: Sequence[VirtualR], system: QuditSystem) -> List[Union[CRot, PSwap]]:
	"""
	Label each adjacent-level rotation as a controlled rotation or a partial swap.

	A rotation on virtual levels ``(i, i + 1)`` inside one block of ``d`` levels is a :class:`~.CRot`
	controlled on the block index; one straddling a block boundary couples :math:`|c, d-1\\rangle`
	with :math:`|c+1, 0\\rangle` and is a :class:`~.PSwap`.

	:param rotations:
	:param system:

	:raises ValueError: If a gate is not a :class:`~.VirtualR` or lies outside the system.
	"""

	out: List[Union[CRot, PSwap]] = []

	for gate in rotations:
		if not isinstance(gate, VirtualR):
			raise ValueError(f"Only adjacent-level rotations can be classified, not {gate!r}")
		if gate.level + 1 >= system.dim:
			raise ValueError(f"Rotation on level {gate.level} lies outside dimension {system.dim}")

		control, target = system.levels(gate.level)
		next_control, _ = system.levels(gate.level + 1)

		if control == next_control:
			out.append(CRot(control, (target, target + 1), gate.theta, gate.phi))
		else:
			out.append(PSwap((gate.level, gate.level + 1), gate.theta, gate.phi))

	return out


def synthesize(u: ComplexMatrix, system: QuditSystem) -> SynthesisResult:
	"""
	Run the whole synthesis stage on ``u``.

	:param u: A unitary over ``system``.
	:param system: Two qudits of equal dimension.

	:raises SynthesisError: If the classified sequence does not reconstruct ``u``.
	"""

	matrix = embed_two_qudit(u, system)
	decomposition = givens_qr(matrix)
	global_phase, _ = split_global_phase(decomposition.phases)
	phase_gates = tuple(phase_to_rotations(decomposition.phases))
	classified = tuple(classify(phase_gates + decomposition.rotations, system))

	check = fidelity(evaluate(Circuit(system, classified)), matrix)
	if 1 - check > RECONSTRUCTION_TOLERANCE:
		raise SynthesisError(f"Synthesized sequence reconstructs the input with infidelity {1 - check:.3e}")

	n_crot = sum(isinstance(g, CRot) for g in classified)
	logger.info(
			"Synthesized %d rotations (%d controlled rotations, %d partial swaps), infidelity %.2e",
			len(classified),
			n_crot,
			len(classified) - n_crot,
			1 - check,
			)

	return SynthesisResult(
			rotations=decomposition.rotations,
			phases=decomposition.phases,
			phase_gates=phase_gates,
			classified=classified,
			global_phase=global_phase,
			residual_check=check,
			system=system,
			)
