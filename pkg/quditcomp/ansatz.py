#!/usr/bin/env python3
#
#  ansatz.py
r"""
Layered parametrised circuits over a native entangler.

Each layer applies a generic :math:`SU(d)` unitary to each qudit followed by the entangler,
and a final pair of generic unitaries closes the circuit.
A generic :math:`SU(d)` unitary is the ordered product of two-level exponentials

.. math::

	U = \Big[\prod_{m < n} e^{i Z_{m,n} \lambda_{n,m}} e^{i Y_{m,n} \lambda_{m,n}}\Big]
		\prod_{l=1}^{d-1} e^{i Z_{l-1,d-1} \lambda_{l,l}}

with :math:`Z_{m,n} = |m\rangle\langle m| - |n\rangle\langle n|`
and :math:`Y_{m,n} = -i|m\rangle\langle n| + i|n\rangle\langle m|`.
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
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

# 3rd party
import numpy as np
from typing_extensions import Literal

# this package
from quditcomp.circuit import Circuit, Provenance
from quditcomp.gates import CEX, LS, MS, Gate, LocalR, PhaseZ, QuditSystem, Unitary, gate_matrix
from quditcomp.linalg import ComplexMatrix, as_matrix, fidelity

__all__ = [
		"ThetaMode",
		"NativeGate",
		"native_gate",
		"AnsatzSpec",
		"su_d_pairs",
		"su_d_size",
		"su_d_bounds",
		"local_su_d",
		"su_d_gates",
		"build_ansatz",
		"objective",
		"to_circuit",
		"warm_start",
		]

ThetaMode = Literal["fixed", "free"]

_PRUNE = 1e-12


@dataclass(frozen=True)
class NativeGate:
	"""
	The entangler placed in every layer.

	:param name: ``cex``, ``ms``, ``ls``, or a label for a user-supplied ``matrix``.
	:param angle: The MS or LS angle used when the angle is not optimised.
	:param matrix: The entangler's matrix, for user-supplied gates only.
	"""

	name: str
	angle: float = math.pi
	matrix: Optional[ComplexMatrix] = field(default=None, repr=False, compare=False)

	@property
	def has_angle(self) -> bool:
		"""
		Whether the gate takes an angle which may be optimised.
		"""

		return self.name in {"ms", "ls"}

	@property
	def angle_bounds(self) -> Tuple[float, float]:
		r"""
		The search interval for a free angle: :math:`[0, 4\pi]` for MS and :math:`[0, 2\pi]` for LS.
		"""

		if self.name == "ms":
			return 0.0, 4 * math.pi
		elif self.name == "ls":
			return 0.0, 2 * math.pi
		else:
			raise ValueError(f"The {self.name!r} gate has no angle")

	def gate(self, angle: Optional[float] = None) -> Gate:
		"""
		Returns the gate, with ``angle`` overriding :attr:`angle` for MS and LS.
		"""

		theta = self.angle if angle is None else angle

		if self.name == "cex":
			return CEX(1, (0, 1))
		elif self.name == "ms":
			return MS(theta)
		elif self.name == "ls":
			return LS(theta)
		elif self.matrix is not None:
			return Unitary(self.name, self.matrix)
		else:
			raise ValueError(f"Unknown native gate {self.name!r}")

	@property
	def kind(self) -> str:
		"""
		The :attr:`Gate.kind <.CEX.kind>` of the emitted gate.
		"""

		return self.gate().kind


def native_gate(name: str, angle: float = math.pi, matrix: Optional[ComplexMatrix] = None) -> NativeGate:
	"""
	Construct a :class:`~.NativeGate`.

	:param name: ``cex``, ``ms`` or ``ls`` (case-insensitive), or any label when ``matrix`` is given.
	:param angle:
	:param matrix:

	:raises ValueError: If the name is not recognised and no matrix is given.
	"""

	if matrix is not None:
		return NativeGate(name, angle, as_matrix(matrix))

	name = name.lower()
	if name not in {"cex", "ms", "ls"}:
		raise ValueError(f"'native' must be one of ('cex', 'ms', 'ls'), not {name!r}")

	return NativeGate(name, float(angle))


@lru_cache()
def su_d_pairs(d: int) -> Tuple[Tuple[int, int], ...]:
	"""
	Returns the level pairs ``(m, n)``, ``m < n``, in the order their angles appear in a block.
	"""

	return tuple((m, n) for m in range(d) for n in range(m + 1, d))


def su_d_size(d: int) -> int:
	"""
	Returns the number of parameters of an :math:`SU(d)` block, ``d**2 - 1``.
	"""

	return d * d - 1


def su_d_bounds(d: int) -> List[Tuple[float, float]]:
	r"""
	Returns the bounds of each parameter of an :math:`SU(d)` block.

	Each pair contributes its rotation angle, in :math:`[0, \pi/2]`, then its phase, in :math:`[0, \pi]`;
	the ``d - 1`` diagonal phases follow, in :math:`[0, 2\pi]`.
	"""

	bounds = [(0.0, math.pi / 2), (0.0, math.pi)] * len(su_d_pairs(d))
	bounds.extend([(0.0, 2 * math.pi)] * (d - 1))
	return bounds


def local_su_d(block: Sequence[float], d: int) -> ComplexMatrix:
	"""
	Returns the :math:`SU(d)` matrix parametrised by ``block``.

	The product is accumulated by right-multiplication, so every factor is a column operation.

	:param block: ``d**2 - 1`` angles.
	:param d:

	:raises ValueError: If ``block`` has the wrong length.
	"""

	angles = np.asarray(block, dtype=float)
	if angles.shape != (su_d_size(d), ):
		raise ValueError(f"An SU({d}) block needs {su_d_size(d)} parameters, got {angles.size}")

	u = np.eye(d, dtype=complex)
	k = 0

	for m, n in su_d_pairs(d):
		y, z = angles[k], angles[k + 1]
		k += 2

		u[:, m] *= np.exp(1j * z)
		u[:, n] *= np.exp(-1j * z)

		c, s = math.cos(y), math.sin(y)
		col_m = u[:, m].copy()
		u[:, m] = c * col_m - s * u[:, n]
		u[:, n] = s * col_m + c * u[:, n]

	for level in range(d - 1):
		phase = np.exp(1j * angles[k])
		u[:, level] *= phase
		u[:, d - 1] /= phase
		k += 1

	return u


def su_d_gates(block: Sequence[float], d: int, qudit: int) -> List[Gate]:
	r"""
	Express an :math:`SU(d)` block as two-level gates on ``qudit``, in application order.

	:math:`e^{i Z_{m,n} \lambda}` is ``PhaseZ(-2 * lambda)`` and
	:math:`e^{i Y_{m,n} \lambda}` is ``LocalR(-2 * lambda, pi / 2)``.
	Factors with a vanishing angle are dropped.

	:param block:
	:param d:
	:param qudit:
	"""

	angles = [float(x) for x in block]
	if len(angles) != su_d_size(d):
		raise ValueError(f"An SU({d}) block needs {su_d_size(d)} parameters, got {len(angles)}")

	factors: List[Gate] = []
	k = 0

	for m, n in su_d_pairs(d):
		y, z = angles[k], angles[k + 1]
		k += 2
		if abs(z) > _PRUNE:
			factors.append(PhaseZ(qudit, (m, n), -2 * z))
		if abs(y) > _PRUNE:
			factors.append(LocalR(qudit, (m, n), -2 * y, math.pi / 2))

	for level in range(d - 1):
		if abs(angles[k]) > _PRUNE:
			factors.append(PhaseZ(qudit, (level, d - 1), -2 * angles[k]))
		k += 1

	# the leftmost factor of the product acts last
	return factors[::-1]


@dataclass(frozen=True)
class AnsatzSpec:
	"""
	A layered parametrised circuit.

	Parameters are laid out block by block: both qudits of the first layer,
	then each later layer, then the closing pair; free native angles, one per layer, come last.

	:param system:
	:param layers: Number of entangling layers.
	:param native:
	:param theta_mode: Whether the MS or LS angle is ``fixed`` or a ``free`` parameter.
	"""

	system: QuditSystem
	layers: int
	native: NativeGate
	theta_mode: ThetaMode = "fixed"

	def __post_init__(self):
		if self.layers < 0:
			raise ValueError(f"'layers' must not be negative, not {self.layers!r}")
		if self.theta_mode not in {"fixed", "free"}:
			raise ValueError(f"'theta_mode' must be one of ('fixed', 'free'), not {self.theta_mode!r}")

		# raises for MS and LS on unequal dimensions
		gate_matrix(self.native.gate(), self.system)

	@property
	def free_angles(self) -> bool:
		"""
		Whether each layer carries its own native angle.
		"""

		return self.theta_mode == "free" and self.native.has_angle

	@property
	def block_sizes(self) -> Tuple[int, int]:  # noqa: D102
		return su_d_size(self.system.d1), su_d_size(self.system.d2)

	@property
	def n_local(self) -> int:
		"""
		Number of local parameters.
		"""

		return (self.layers + 1) * sum(self.block_sizes)

	@property
	def n_params(self) -> int:
		"""
		Total number of parameters, ``(2 * layers + 2) * (d**2 - 1)`` for equal dimensions in fixed mode.
		"""

		return self.n_local + (self.layers if self.free_angles else 0)

	@property
	def bounds(self) -> List[Tuple[float, float]]:
		"""
		The search interval of every parameter.
		"""

		pair = su_d_bounds(self.system.d1) + su_d_bounds(self.system.d2)
		bounds = pair * (self.layers + 1)

		if self.free_angles:
			bounds.extend([self.native.angle_bounds] * self.layers)

		return bounds

	def split(self, params: Sequence[float]) -> Tuple[List[Tuple[np.ndarray, np.ndarray]], List[float]]:
		"""
		Split a parameter vector into per-layer block pairs (closing pair last) and native angles.

		:raises ValueError: If the vector has the wrong length.
		"""

		x = np.asarray(params, dtype=float)
		if x.shape != (self.n_params, ):
			raise ValueError(f"Expected {self.n_params} parameters for {self.layers} layers, got {x.size}")

		size1, size2 = self.block_sizes
		pairs = []

		for layer in range(self.layers + 1):
			start = layer * (size1 + size2)
			pairs.append((x[start:start + size1], x[start + size1:start + size1 + size2]))

		if self.free_angles:
			angles = [float(a) for a in x[self.n_local:]]
		else:
			angles = [self.native.angle] * self.layers

		return pairs, angles

	def with_layers(self, layers: int) -> "AnsatzSpec":
		"""
		Returns a copy of this ansatz with a different number of layers.
		"""

		return AnsatzSpec(self.system, layers, self.native, self.theta_mode)


def _local_pair(blocks: Tuple[np.ndarray, np.ndarray], system: QuditSystem) -> ComplexMatrix:
	return np.kron(local_su_d(blocks[0], system.d1), local_su_d(blocks[1], system.d2))


def build_ansatz(spec: AnsatzSpec, params: Sequence[float]) -> ComplexMatrix:
	"""
	Returns the unitary of the ansatz for the given parameters.

	:param spec:
	:param params: A vector of :attr:`AnsatzSpec.n_params <.AnsatzSpec.n_params>` angles.
	"""

	pairs, angles = spec.split(params)
	fixed = None if spec.free_angles else gate_matrix(spec.native.gate(), spec.system)

	matrix = np.eye(spec.system.dim, dtype=complex)

	for layer in range(spec.layers):
		matrix = _local_pair(pairs[layer], spec.system) @ matrix
		entangler = fixed if fixed is not None else gate_matrix(spec.native.gate(angles[layer]), spec.system)
		matrix = entangler @ matrix

	return _local_pair(pairs[-1], spec.system) @ matrix


def objective(spec: AnsatzSpec, params: Sequence[float], target: ComplexMatrix) -> float:
	"""
	Returns the infidelity between the ansatz and ``target``.

	:raises ValueError: If ``target`` does not match the system's dimension.
	"""

	return 1.0 - fidelity(build_ansatz(spec, params), target)


def to_circuit(spec: AnsatzSpec, params: Sequence[float], stage: str = "compile-cex") -> Circuit:
	"""
	Express the ansatz at ``params`` as a :class:`~.Circuit` of two-level local gates and native gates.

	:param spec:
	:param params:
	:param stage: Recorded in the circuit's provenance.
	"""

	pairs, angles = spec.split(params)
	gates: List[Gate] = []

	for layer in range(spec.layers + 1):
		block1, block2 = pairs[layer]
		gates.extend(su_d_gates(block1, spec.system.d1, 1))
		gates.extend(su_d_gates(block2, spec.system.d2, 2))
		if layer < spec.layers:
			gates.append(spec.native.gate(angles[layer]))

	return Circuit(spec.system, gates, Provenance(stage=stage))


def warm_start(spec: AnsatzSpec, params: Sequence[float]) -> Tuple[AnsatzSpec, np.ndarray]:
	"""
	Embed a solution into one more layer without changing its unitary.

	The new layer sits just before the closing pair, with identity local blocks and a native angle of zero.

	:param spec: Must have free native angles.
	:param params:

	:raises ValueError: If the native angle is fixed, as the extra entangler would not be the identity.
	"""

	if not spec.free_angles:
		raise ValueError("Warm starts need a free MS or LS angle")

	x = np.asarray(params, dtype=float)
	if x.shape != (spec.n_params, ):
		raise ValueError(f"Expected {spec.n_params} parameters for {spec.layers} layers, got {x.size}")

	pair_size = sum(spec.block_sizes)
	body = spec.layers * pair_size

	grown = np.concatenate([
			x[:body],
			np.zeros(pair_size),
			x[body:spec.n_local],
			x[spec.n_local:],
			[0.0],
			])

	return spec.with_layers(spec.layers + 1), grown
