#!/usr/bin/env python3
#
#  gates.py
r"""
The gate library: every gate species the compiler emits, and the matrix each one denotes.

Angles are in radians and are normalised into :math:`(-2\pi, 2\pi]` on construction,
except the MS angle, whose period is :math:`8\pi`.
Qudits are numbered ``1`` and ``2``; the first qudit is the more significant index.
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
from dataclasses import dataclass, field, fields
from typing import Any, ClassVar, Dict, Tuple, Type, Union

# 3rd party
import numpy as np

# this package
from quditcomp.linalg import ComplexMatrix, as_matrix, embed_two_level

__all__ = [
		"QuditSystem",
		"normalize_angle",
		"MS_PERIOD",
		"rotation_block",
		"phase_block",
		"LocalR",
		"PhaseZ",
		"Perm",
		"EmbeddedH",
		"CRot",
		"PSwap",
		"CEX",
		"MS",
		"LS",
		"VirtualR",
		"Unitary",
		"Gate",
		"gate_kinds",
		"gate_matrix",
		"gate_to_dict",
		"gate_from_dict",
		]

_FOUR_PI = 4 * math.pi

#: Period of the Mølmer-Sørensen angle, which carries a quarter-angle global phase.
MS_PERIOD = 8 * math.pi


def normalize_angle(angle: float, period: float = _FOUR_PI) -> float:
	r"""
	Map ``angle`` into :math:`(-p/2, p/2]`, where :math:`p` is ``period``.

	The default of :math:`4\pi` is the period of the two-level rotations,
	and a multiple of the period of every phase angle.
	Angles already in range are returned unchanged, so normalisation is idempotent.

	:param angle:
	:param period:

	:raises ValueError: If ``angle`` is not finite.
	"""

	angle = float(angle)

	if not math.isfinite(angle):
		raise ValueError(f"Angles must be finite, not {angle!r}")

	half = period / 2
	if -half < angle <= half:
		return angle

	return float(half - np.mod(half - angle, period))


def rotation_block(theta: float, phi: float) -> ComplexMatrix:
	r"""
	The two-level rotation :math:`R(\theta, \phi)`.

	.. math::

		R(\theta, \phi) = \begin{pmatrix}
			\cos\frac{\theta}{2} & -i e^{-i\phi} \sin\frac{\theta}{2} \\
			-i e^{i\phi} \sin\frac{\theta}{2} & \cos\frac{\theta}{2}
		\end{pmatrix}
	"""

	c, s = math.cos(theta / 2), math.sin(theta / 2)
	return np.array(
			[
					[c, -1j * s * np.exp(-1j * phi)],
					[-1j * s * np.exp(1j * phi), c],
					],
			dtype=complex,
			)


def phase_block(theta: float) -> ComplexMatrix:
	r"""
	The two-level phase gate :math:`Z(\theta) = \mathrm{diag}(e^{-i\theta/2}, e^{i\theta/2})`.
	"""

	return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


_SWAP_BLOCK = np.array([[0, 1], [1, 0]], dtype=complex)
_HADAMARD_BLOCK = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


@dataclass(frozen=True)
class QuditSystem:
	"""
	A pair of qudits with dimensions ``d1`` and ``d2``.

	:param d1: Dimension of the first qudit.
	:param d2: Dimension of the second qudit.
	"""

	d1: int
	d2: int

	def __post_init__(self):
		for name in ("d1", "d2"):
			value = getattr(self, name)
			if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 2:
				raise ValueError(f"'{name}' must be an integer >= 2, not {value!r}")

	@property
	def dim(self) -> int:
		"""
		The dimension ``D = d1 * d2`` of the joint space.
		"""

		return self.d1 * self.d2

	@property
	def dims(self) -> Tuple[int, int]:  # noqa: D102
		return self.d1, self.d2

	def qudit_dim(self, qudit: int) -> int:
		"""
		Returns the dimension of qudit ``1`` or ``2``.
		"""

		if qudit == 1:
			return self.d1
		elif qudit == 2:
			return self.d2
		else:
			raise ValueError(f"'qudit' must be 1 or 2, not {qudit!r}")

	def index(self, i: int, j: int) -> int:
		r"""
		Returns the virtual index of :math:`|i, j\rangle`.
		"""

		return self.d2 * i + j

	def levels(self, index: int) -> Tuple[int, int]:
		"""
		Returns the per-qudit levels ``(i, j)`` of a virtual index.
		"""

		i, j = divmod(index, self.d2)
		return int(i), int(j)

	def require_equal_dims(self, what: str) -> int:
		"""
		Returns the common dimension, or raises :exc:`ValueError` naming ``what`` if ``d1 != d2``.
		"""

		if self.d1 != self.d2:
			raise ValueError(f"{what} requires equal qudit dimensions, got ({self.d1}, {self.d2})")

		return self.d1

	@classmethod
	def square(cls, d: int) -> "QuditSystem":
		"""
		Returns the system of two ``d``-level qudits.
		"""

		return cls(d, d)


def _check_pair(name: str, pair: Tuple[int, int], ordered: bool = False) -> Tuple[int, int]:
	pair = tuple(int(x) for x in pair)  # type: ignore[assignment]

	if len(pair) != 2:
		raise ValueError(f"'{name}' must be a pair of levels, not {pair!r}")
	if min(pair) < 0:
		raise ValueError(f"'{name}' must not contain negative levels, got {pair!r}")
	if pair[0] == pair[1]:
		raise ValueError(f"'{name}' must be two distinct levels, got {pair!r}")
	if ordered and pair[0] > pair[1]:
		raise ValueError(f"'{name}' must be in increasing order, got {pair!r}")

	return pair


class _GateBase:
	kind: ClassVar[str]

	def _set(self, name: str, value: Any) -> None:
		object.__setattr__(self, name, value)

	def _normalize(self, *names: str, period: float = _FOUR_PI) -> None:
		for name in names:
			self._set(name, normalize_angle(getattr(self, name), period))

	def _check_qudit(self) -> None:
		qudit = getattr(self, "qudit")
		if qudit not in (1, 2):
			raise ValueError(f"'qudit' must be 1 or 2, not {qudit!r}")


@dataclass(frozen=True)
class LocalR(_GateBase):
	"""
	Two-level rotation :func:`R(theta, phi) <.rotation_block>` on levels ``m < n`` of one qudit.
	"""

	kind: ClassVar[str] = "LocalR"

	qudit: int
	levels: Tuple[int, int]
	theta: float
	phi: float

	def __post_init__(self):
		self._check_qudit()
		self._set("levels", _check_pair("levels", self.levels, ordered=True))
		self._normalize("theta", "phi")


@dataclass(frozen=True)
class PhaseZ(_GateBase):
	"""
	Two-level phase gate :func:`Z(theta) <.phase_block>` on levels ``m < n`` of one qudit.
	"""

	kind: ClassVar[str] = "PhaseZ"

	qudit: int
	levels: Tuple[int, int]
	theta: float

	def __post_init__(self):
		self._check_qudit()
		self._set("levels", _check_pair("levels", self.levels, ordered=True))
		self._normalize("theta")


@dataclass(frozen=True)
class Perm(_GateBase):
	"""
	Exchange of two levels of one qudit. Real and involutive.
	"""

	kind: ClassVar[str] = "Perm"

	qudit: int
	levels: Tuple[int, int]

	def __post_init__(self):
		self._check_qudit()
		self._set("levels", tuple(sorted(_check_pair("levels", self.levels))))


@dataclass(frozen=True)
class EmbeddedH(_GateBase):
	"""
	Hadamard on a two-level subspace of one qudit, identity elsewhere.
	"""

	kind: ClassVar[str] = "EmbeddedH"

	qudit: int
	levels: Tuple[int, int] = (0, 1)

	def __post_init__(self):
		self._check_qudit()
		self._set("levels", _check_pair("levels", self.levels, ordered=True))


@dataclass(frozen=True)
class CRot(_GateBase):
	"""
	Controlled rotation: :math:`R(\\theta, \\phi)` on ``targets`` of the second qudit,
	active only when the first qudit is in level ``control``.
	"""  # noqa: D400

	kind: ClassVar[str] = "CRot"

	control: int
	targets: Tuple[int, int]
	theta: float
	phi: float

	def __post_init__(self):
		if self.control < 0:
			raise ValueError(f"'control' must not be negative, got {self.control!r}")
		self._set("control", int(self.control))
		self._set("targets", _check_pair("targets", self.targets))
		self._normalize("theta", "phi")


@dataclass(frozen=True)
class PSwap(_GateBase):
	"""
	Partial swap: :math:`R(\\theta, \\phi)` between two virtual indices lying in different control blocks.
	"""

	kind: ClassVar[str] = "PSwap"

	levels: Tuple[int, int]
	theta: float
	phi: float

	def __post_init__(self):
		self._set("levels", _check_pair("levels", self.levels))
		self._normalize("theta", "phi")


@dataclass(frozen=True)
class CEX(_GateBase):
	r"""
	Controlled exchange :math:`|c, t_1\rangle \leftrightarrow |c, t_2\rangle`.
	"""

	kind: ClassVar[str] = "CEX"

	control: int = 1
	targets: Tuple[int, int] = (0, 1)

	def __post_init__(self):
		if self.control < 0:
			raise ValueError(f"'control' must not be negative, got {self.control!r}")
		self._set("control", int(self.control))
		self._set("targets", _check_pair("targets", self.targets))


@dataclass(frozen=True)
class MS(_GateBase):
	"""
	Mølmer-Sørensen gate coupling the ``0-1`` subspaces of both qudits.
	"""

	kind: ClassVar[str] = "MS"

	theta: float = math.pi

	def __post_init__(self):
		self._normalize("theta", period=MS_PERIOD)


@dataclass(frozen=True)
class LS(_GateBase):
	r"""
	Light-shift gate: phase :math:`e^{-i\theta}` on every :math:`|i, i\rangle`.
	"""

	kind: ClassVar[str] = "LS"

	theta: float = math.pi

	def __post_init__(self):
		self._normalize("theta")


@dataclass(frozen=True)
class VirtualR(_GateBase):
	"""
	Rotation on adjacent levels ``(level, level + 1)`` of the joint space viewed as one qudit.
	"""

	kind: ClassVar[str] = "VirtualR"

	level: int
	theta: float
	phi: float

	def __post_init__(self):
		if self.level < 0:
			raise ValueError(f"'level' must not be negative, got {self.level!r}")
		self._set("level", int(self.level))
		self._normalize("theta", "phi")


@dataclass(frozen=True, eq=False)
class Unitary(_GateBase):
	"""
	An arbitrary user-supplied entangler over the whole system.
	"""

	kind: ClassVar[str] = "Unitary"

	label: str
	matrix: ComplexMatrix = field(repr=False)

	def __post_init__(self):
		matrix = as_matrix(self.matrix).copy()
		matrix.setflags(write=False)
		self._set("matrix", matrix)


Gate = Union[LocalR, PhaseZ, Perm, EmbeddedH, CRot, PSwap, CEX, MS, LS, VirtualR, Unitary]

#: Mapping of ``kind`` tags to gate classes.
gate_kinds: Dict[str, Type[Gate]] = {
		cls.kind: cls  # type: ignore[misc]
		for cls in (LocalR, PhaseZ, Perm, EmbeddedH, CRot, PSwap, CEX, MS, LS, VirtualR, Unitary)
		}


class _MatrixBuilder:
	"""
	Builds the ``D x D`` matrix of a gate. Methods are named ``visit_<kind>``.
	"""

	def __init__(self, system: QuditSystem):
		self.system = system

	def build(self, gate: Gate) -> ComplexMatrix:
		try:
			visitor = getattr(self, f"visit_{gate.kind}")
		except AttributeError:
			raise ValueError(f"Unknown gate {gate!r}") from None

		return visitor(gate)

	def _local(self, qudit: int, levels: Tuple[int, int], block: ComplexMatrix) -> ComplexMatrix:
		d = self.system.qudit_dim(qudit)
		local = embed_two_level(block, d, *levels)

		if qudit == 1:
			return np.kron(local, np.eye(self.system.d2))
		else:
			return np.kron(np.eye(self.system.d1), local)

	def _controlled(self, control: int, targets: Tuple[int, int], block: ComplexMatrix) -> ComplexMatrix:
		if control >= self.system.d1:
			raise ValueError(f"Control level {control} out of range for dimension {self.system.d1}")
		for target in targets:
			if target >= self.system.d2:
				raise ValueError(f"Target level {target} out of range for dimension {self.system.d2}")

		m, n = (self.system.index(control, t) for t in targets)
		return embed_two_level(block, self.system.dim, m, n)

	def visit_LocalR(self, gate: LocalR) -> ComplexMatrix:  # noqa: D102
		return self._local(gate.qudit, gate.levels, rotation_block(gate.theta, gate.phi))

	def visit_PhaseZ(self, gate: PhaseZ) -> ComplexMatrix:  # noqa: D102
		return self._local(gate.qudit, gate.levels, phase_block(gate.theta))

	def visit_Perm(self, gate: Perm) -> ComplexMatrix:  # noqa: D102
		return self._local(gate.qudit, gate.levels, _SWAP_BLOCK)

	def visit_EmbeddedH(self, gate: EmbeddedH) -> ComplexMatrix:  # noqa: D102
		return self._local(gate.qudit, gate.levels, _HADAMARD_BLOCK)

	def visit_CRot(self, gate: CRot) -> ComplexMatrix:  # noqa: D102
		return self._controlled(gate.control, gate.targets, rotation_block(gate.theta, gate.phi))

	def visit_CEX(self, gate: CEX) -> ComplexMatrix:  # noqa: D102
		return self._controlled(gate.control, gate.targets, _SWAP_BLOCK)

	def visit_PSwap(self, gate: PSwap) -> ComplexMatrix:  # noqa: D102
		return embed_two_level(rotation_block(gate.theta, gate.phi), self.system.dim, *gate.levels)

	def visit_VirtualR(self, gate: VirtualR) -> ComplexMatrix:  # noqa: D102
		block = rotation_block(gate.theta, gate.phi)
		return embed_two_level(block, self.system.dim, gate.level, gate.level + 1)

	def visit_MS(self, gate: MS) -> ComplexMatrix:
		r"""
		Closed form of :math:`e^{-i\theta/4 (I + X_{01} \otimes X_{01})}`.

		:math:`X \otimes X` squares to the projector onto :math:`\{0, 1\} \otimes \{0, 1\}`,
		so the exponential is a rotation on that four-dimensional subspace times a global phase.
		"""

		d = self.system.require_equal_dims("MS")
		quarter = gate.theta / 4

		subspace = [self.system.index(a, b) for a in (0, 1) for b in (0, 1)]
		flipped = [self.system.index(1 - a, 1 - b) for a in (0, 1) for b in (0, 1)]

		out = np.eye(d * d, dtype=complex)
		out[subspace, subspace] = math.cos(quarter)
		out[flipped, subspace] = -1j * math.sin(quarter)

		return np.exp(-1j * quarter) * out

	def visit_LS(self, gate: LS) -> ComplexMatrix:  # noqa: D102
		d = self.system.require_equal_dims("LS")
		diagonal = np.ones(d * d, dtype=complex)
		diagonal[[self.system.index(i, i) for i in range(d)]] = np.exp(-1j * gate.theta)
		return np.diag(diagonal)

	def visit_Unitary(self, gate: Unitary) -> ComplexMatrix:  # noqa: D102
		if gate.matrix.shape[0] != self.system.dim:
			raise ValueError(
					f"Gate {gate.label!r} has dimension {gate.matrix.shape[0]}, "
					f"but the system has dimension {self.system.dim}"
					)

		return np.array(gate.matrix)


def gate_matrix(gate: Gate, system: QuditSystem) -> ComplexMatrix:
	"""
	Returns the ``D x D`` unitary of ``gate`` acting on ``system``.

	:param gate:
	:param system:

	:raises ValueError: If a level lies outside its qudit,
		or if an MS or LS gate is applied to qudits of unequal dimension.
	"""

	return _MatrixBuilder(system).build(gate)


def gate_to_dict(gate: Gate) -> Dict[str, Any]:
	"""
	Returns the JSON-serialisable form of ``gate``.

	Field names match the dataclass fields, preceded by ``"kind"``.
	"""

	if isinstance(gate, Unitary):
		return {
				"kind": gate.kind,
				"label": gate.label,
				"matrix": [[[float(z.real), float(z.imag)] for z in row] for row in gate.matrix],
				}

	data: Dict[str, Any] = {"kind": gate.kind}

	for f in fields(gate):
		value = getattr(gate, f.name)
		data[f.name] = list(value) if isinstance(value, tuple) else value

	return data


def gate_from_dict(data: Dict[str, Any]) -> Gate:
	"""
	Construct a gate from its :func:`JSON form <.gate_to_dict>`.

	:raises ValueError: If the kind is unknown or the fields do not match.
	"""

	kwargs = dict(data)
	kind = kwargs.pop("kind", None)

	if kind not in gate_kinds:
		raise ValueError(f"Unknown gate kind {kind!r}")

	if kind == Unitary.kind:
		matrix = np.array([[complex(re, im) for re, im in row] for row in kwargs.pop("matrix")])
		return Unitary(label=kwargs.pop("label"), matrix=matrix)

	for key, value in kwargs.items():
		if isinstance(value, list):
			kwargs[key] = tuple(value)

	try:
		return gate_kinds[kind](**kwargs)
	except TypeError as e:
		raise ValueError(f"Invalid fields for {kind} gate: {e}") from None
