#!/usr/bin/env python3
#
#  circuit.py
"""
Circuits over a two-qudit system, their evaluation to a unitary, and reference matrices.
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
import collections
import math
import typing
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

# 3rd party
import numpy as np

# this package
from quditcomp.gates import CEX, LS, MS, Gate, QuditSystem, gate_from_dict, gate_matrix, gate_to_dict
from quditcomp.linalg import ComplexMatrix, NonUnitaryError, unitarity_deviation

__all__ = [
		"Provenance",
		"Circuit",
		"evaluate",
		"count_gates",
		"build_named",
		"named_matrices",
		"EVALUATION_TOLERANCE",
		]

#: Unitarity tolerance checked after evaluating a circuit.
EVALUATION_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Provenance:
	"""
	Where a circuit came from.

	:param source: The unitary file the circuit was compiled from, if any.
	:param stage: The pipeline stage which produced the circuit.
	:param metadata: Free-form JSON-serialisable details, such as optimizer settings.
	"""

	source: Optional[str] = None
	stage: Optional[str] = None
	metadata: Dict[str, Any] = field(default_factory=dict)

	def to_dict(self) -> Dict[str, Any]:  # noqa: D102
		return {"source": self.source, "stage": self.stage, "metadata": dict(self.metadata)}

	@classmethod
	def from_dict(cls, data: Mapping[str, Any]) -> "Provenance":  # noqa: D102
		return cls(
				source=data.get("source"),
				stage=data.get("stage"),
				metadata=dict(data.get("metadata", {})),
				)


@dataclass(frozen=True)
class Circuit:
	"""
	An ordered gate sequence over a two-qudit system.

	The first gate in :attr:`gates` is applied to the state first,
	so the circuit's matrix is the product of the gate matrices from right to left.

	:param system:
	:param gates:
	:param provenance:
	"""

	system: QuditSystem
	gates: Tuple[Gate, ...] = ()
	provenance: Optional[Provenance] = None

	def __post_init__(self):
		object.__setattr__(self, "gates", tuple(self.gates))

	def __len__(self) -> int:
		return len(self.gates)

	def __add__(self, other: "Circuit") -> "Circuit":
		if not isinstance(other, Circuit):
			return NotImplemented

		if other.system != self.system:
			raise ValueError(f"Cannot concatenate circuits over {self.system.dims} and {other.system.dims}")

		return Circuit(self.system, self.gates + other.gates, self.provenance)

	def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
		"""
		Returns a copy of the circuit with its gates replaced.
		"""

		return replace(self, gates=tuple(gates))

	def with_provenance(self, **kwargs: Any) -> "Circuit":
		"""
		Returns a copy of the circuit with the given :class:`~.Provenance` fields updated.
		"""

		provenance = self.provenance or Provenance()
		return replace(self, provenance=replace(provenance, **kwargs))

	def validate(self) -> None:
		"""
		Check every gate against the system.

		:raises ValueError: If any gate is invalid for :attr:`system`.
		"""

		for gate in self.gates:
			gate_matrix(gate, self.system)

	def to_dict(self) -> Dict[str, Any]:
		"""
		Returns the JSON form of the circuit.
		"""

		data: Dict[str, Any] = {
				"dims": [self.system.d1, self.system.d2],
				"gates": [gate_to_dict(gate) for gate in self.gates],
				}

		if self.provenance is not None:
			data["provenance"] = self.provenance.to_dict()

		return data

	@classmethod
	def from_dict(cls, data: Mapping[str, Any]) -> "Circuit":
		"""
		Parse a circuit from its :meth:`JSON form <.Circuit.to_dict>`.
		"""

		system = QuditSystem(*data["dims"])
		gates = tuple(gate_from_dict(g) for g in data["gates"])
		provenance = Provenance.from_dict(data["provenance"]) if data.get("provenance") else None
		return cls(system, gates, provenance)


def evaluate(circuit: Circuit, check: bool = True) -> ComplexMatrix:
	"""
	Returns the unitary implemented by ``circuit``.

	:param circuit:
	:param check: Whether to verify that the result is unitary to :data:`~.EVALUATION_TOLERANCE`.

	:raises NonUnitaryError: If ``check`` is :py:obj:`True` and the product has drifted from unitarity.
	"""

	matrix = np.eye(circuit.system.dim, dtype=complex)

	for gate in circuit.gates:
		matrix = gate_matrix(gate, circuit.system) @ matrix

	if check:
		deviation = unitarity_deviation(matrix)
		if deviation > EVALUATION_TOLERANCE:
			raise NonUnitaryError(deviation, EVALUATION_TOLERANCE)

	return matrix


def count_gates(circuit: Circuit) -> typing.Counter[str]:
	"""
	Count the gates in ``circuit`` by kind.

	Kinds which do not occur count as zero.
	"""

	return collections.Counter(gate.kind for gate in circuit.gates)


def _csum(system: QuditSystem) -> ComplexMatrix:
	out = np.zeros((system.dim, system.dim), dtype=complex)

	for i in range(system.d1):
		for j in range(system.d2):
			out[system.index(i, (i + j) % system.d2), system.index(i, j)] = 1

	return out


def _identity(system: QuditSystem) -> ComplexMatrix:
	return np.eye(system.dim, dtype=complex)


def _cex(system: QuditSystem, control: int = 1, targets: Sequence[int] = (0, 1)) -> ComplexMatrix:
	return gate_matrix(CEX(control, tuple(targets)), system)  # type: ignore[arg-type]


def _ms(system: QuditSystem, theta: float = math.pi) -> ComplexMatrix:
	return gate_matrix(MS(theta), system)


def _ls(system: QuditSystem, theta: float = math.pi) -> ComplexMatrix:
	return gate_matrix(LS(theta), system)


#: Reference matrices available from :func:`~.build_named`.
named_matrices: Dict[str, Callable[..., ComplexMatrix]] = {
		"CSUM": _csum,
		"CEX": _cex,
		"MS": _ms,
		"LS": _ls,
		"IDENTITY": _identity,
		}


def build_named(name: str, system: QuditSystem, **params: Any) -> ComplexMatrix:
	r"""
	Returns a reference matrix by name.

	``CSUM`` maps :math:`|i, j\rangle` to :math:`|i, (i + j) \bmod d_2\rangle`.
	``CEX`` accepts ``control`` and ``targets``; ``MS`` and ``LS`` accept ``theta`` (default :math:`\pi`).

	:param name: Case-insensitive; one of the keys of :data:`~.named_matrices`.
	:param system:
	:param \*\*params: Parameters of the named matrix.

	:raises ValueError: If the name is not recognised.
	"""

	try:
		builder = named_matrices[name.upper()]
	except KeyError:
		raise ValueError(f"Unknown matrix {name!r}; expected one of {sorted(named_matrices)}") from None

	return builder(system, **params)
