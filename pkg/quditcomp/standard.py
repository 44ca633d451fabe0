#!/usr/bin/env python3
#
#  standard.py
"""
Rewriting controlled rotations and partial swaps onto two standard gates, and lowering those to CEX.

Every :class:`~.CRot` is conjugated by level permutations onto ``cRot(1; 0, 1)``
and every :class:`~.PSwap` onto the partial swap coupling :math:`|0, 1\\rangle` with :math:`|1, 0\\rangle`.
Both standard gates have fixed templates of local gates around ``CEX(1; 0, 1)``.
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
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

# this package
from quditcomp.circuit import Circuit, Provenance
from quditcomp.gates import CEX, CRot, EmbeddedH, Gate, LocalR, Perm, PhaseZ, PSwap, QuditSystem

__all__ = [
		"RewritePlan",
		"GateTemplate",
		"CROT_TEMPLATE",
		"PSWAP_TEMPLATE",
		"STANDARD_CEX",
		"standard_crot",
		"standard_pswap",
		"route_levels",
		"standardize",
		"expand_crot",
		"expand_pswap",
		"expand_core",
		"lower_to_cex",
		"standardize_all",
		]

logger = logging.getLogger(__name__)

_HALF_PI = math.pi / 2

#: The entangler every standard gate is lowered onto.
STANDARD_CEX = CEX(1, (0, 1))


def standard_crot(theta: float, phi: float) -> CRot:
	"""
	Returns ``cRot(1; 0, 1)`` with the given angles.
	"""

	return CRot(1, (0, 1), theta, phi)


def standard_pswap(theta: float, phi: float, system: QuditSystem) -> PSwap:
	r"""
	Returns the standard partial swap, coupling :math:`|0, 1\rangle` with :math:`|1, 0\rangle`.
	"""

	return PSwap((system.index(0, 1), system.index(1, 0)), theta, phi)


@dataclass(frozen=True)
class RewritePlan:
	"""
	A gate rewritten as a standard gate conjugated by level permutations.

	:param original: The gate being rewritten.
	:param pre_perms: Permutations applied before :attr:`core`, first qudit first.
	:param core: The standard gate.
	:param post_perms: The uncomputation of :attr:`pre_perms`.
	"""

	original: Union[CRot, PSwap]
	pre_perms: Tuple[Perm, ...]
	core: Union[CRot, PSwap]
	post_perms: Tuple[Perm, ...]

	@property
	def gates(self) -> Tuple[Gate, ...]:
		"""
		The unexpanded sandwich, in application order.
		"""

		return (*self.pre_perms, self.core, *self.post_perms)

	def perms_for(self, qudit: int) -> Tuple[Perm, ...]:
		"""
		Returns the permutations of :attr:`pre_perms` acting on ``qudit``.
		"""

		return tuple(p for p in self.pre_perms if p.qudit == qudit)


def route_levels(mapping: Mapping[int, int], qudit: int) -> List[Perm]:
	"""
	Returns transpositions sending each source level in ``mapping`` to its destination.

	Destinations are filled in increasing order, each by at most one transposition,
	so levels already placed are never moved again.

	:param mapping: Source level to destination level.
	:param qudit: The qudit the permutations act on.
	"""

	position: Dict[int, int] = {}
	occupant: Dict[int, int] = {}
	perms: List[Perm] = []

	for dest, source in sorted((dest, source) for source, dest in mapping.items()):
		current = position.get(source, source)
		if current == dest:
			continue

		displaced = occupant.get(dest, dest)
		perms.append(Perm(qudit, (current, dest)))
		position[source], position[displaced] = dest, current
		occupant[dest], occupant[current] = source, displaced

	return perms


def standardize(gate: Union[CRot, PSwap], system: QuditSystem) -> RewritePlan:
	"""
	Rewrite ``gate`` as a standard gate between permutations of each qudit's levels.

	:param gate:
	:param system:

	:raises ValueError: If ``gate`` is neither a :class:`~.CRot` nor a :class:`~.PSwap`,
		or is a partial swap which leaves one qudit's level unchanged.
	"""

	if isinstance(gate, CRot):
		first = {gate.control: 1}
		second = {gate.targets[0]: 0, gate.targets[1]: 1}
		core: Union[CRot, PSwap] = standard_crot(gate.theta, gate.phi)

	elif isinstance(gate, PSwap):
		a1, a2 = system.levels(gate.levels[0])
		b1, b2 = system.levels(gate.levels[1])

		if a1 == b1 or a2 == b2:
			raise ValueError(f"{gate!r} does not change the level of both qudits")

		first = {a1: 0, b1: 1}
		second = {a2: 1, b2: 0}
		core = standard_pswap(gate.theta, gate.phi, system)

	else:
		raise ValueError(f"Only CRot and PSwap gates can be standardized, not {gate!r}")

	pre = tuple(route_levels(first, 1) + route_levels(second, 2))
	return RewritePlan(original=gate, pre_perms=pre, core=core, post_perms=tuple(reversed(pre)))


@dataclass(frozen=True)
class GateTemplate:
	"""
	A fixed gate structure whose angles are derived from ``(theta, phi)``.

	:param name:
	:param slots: One callable per gate, taking ``(theta, phi)``.
	"""

	name: str
	slots: Tuple[Callable[[float, float], Gate], ...]

	def bind(self, theta: float, phi: float) -> List[Gate]:
		"""
		Returns the gates of the template for the given angles.
		"""

		return [slot(theta, phi) for slot in self.slots]

	@property
	def cex_count(self) -> int:  # noqa: D102
		return sum(slot(0.0, 0.0).kind == CEX.kind for slot in self.slots)


# R(pi/2, phi + pi/2) maps the Z axis onto the rotation axis of R(theta, phi)
_CROT_SLOTS: Tuple[Callable[[float, float], Gate], ...] = (
		lambda theta, phi: LocalR(2, (0, 1), -_HALF_PI, phi + _HALF_PI),
		lambda theta, phi: PhaseZ(2, (0, 1), theta / 2),
		lambda theta, phi: STANDARD_CEX,
		lambda theta, phi: PhaseZ(2, (0, 1), -theta / 2),
		lambda theta, phi: STANDARD_CEX,
		lambda theta, phi: LocalR(2, (0, 1), _HALF_PI, phi + _HALF_PI),
		)

# (H x H) CEX (H x H) exchanges |0, 1> and |1, 1>
_SWAP_SLOTS: Tuple[Callable[[float, float], Gate], ...] = (
		lambda theta, phi: EmbeddedH(1),
		lambda theta, phi: EmbeddedH(2),
		lambda theta, phi: STANDARD_CEX,
		lambda theta, phi: EmbeddedH(1),
		lambda theta, phi: EmbeddedH(2),
		)


def _flip_phi(slot: Callable[[float, float], Gate]) -> Callable[[float, float], Gate]:
	return lambda theta, phi: slot(theta, -phi)


#: Two CEX gates implementing ``cRot(1; 0, 1)``.
CROT_TEMPLATE = GateTemplate("cRot", _CROT_SLOTS)

#: Four CEX gates implementing the standard partial swap.
PSWAP_TEMPLATE = GateTemplate("pSwap", _SWAP_SLOTS + tuple(map(_flip_phi, _CROT_SLOTS)) + _SWAP_SLOTS)


def expand_crot(theta: float, phi: float, system: QuditSystem) -> Circuit:
	"""
	Returns the two-CEX circuit equal to ``cRot(1; 0, 1)(theta, phi)``.

	:param theta:
	:param phi:
	:param system:
	"""

	return Circuit(system, CROT_TEMPLATE.bind(theta, phi))


def expand_pswap(theta: float, phi: float, system: QuditSystem) -> Circuit:
	"""
	Returns the four-CEX circuit equal to the standard partial swap with angles ``(theta, phi)``.

	The partial swap is ``cRot(1; 0, 1)(theta, -phi)`` conjugated by the exchange of :math:`|0, 1\\rangle`
	and :math:`|1, 1\\rangle`, which costs one CEX between two layers of Hadamards.

	:param theta:
	:param phi:
	:param system:
	"""

	return Circuit(system, PSWAP_TEMPLATE.bind(theta, phi))


def expand_core(core: Union[CRot, PSwap], system: QuditSystem) -> Circuit:
	"""
	Expand a standard gate with the matching template.

	:raises ValueError: If ``core`` is not a standard gate.
	"""

	if isinstance(core, CRot) and core == standard_crot(core.theta, core.phi):
		return expand_crot(core.theta, core.phi, system)
	elif isinstance(core, PSwap) and core == standard_pswap(core.theta, core.phi, system):
		return expand_pswap(core.theta, core.phi, system)
	else:
		raise ValueError(f"{core!r} is not a standard gate")


def lower_to_cex(
		plans: Iterable[RewritePlan],
		system: QuditSystem,
		source: Optional[str] = None,
		) -> Circuit:
	"""
	Concatenate the rewrite plans, with each standard gate expanded, into one circuit.

	:param plans: Plans in synthesis order.
	:param system:
	:param source: The unitary file the plans were synthesized from.
	"""

	gates: List[Gate] = []
	plans = list(plans)

	for plan in plans:
		gates.extend(plan.pre_perms)
		gates.extend(expand_core(plan.core, system).gates)
		gates.extend(plan.post_perms)

	logger.info("Lowered %d standard gates to %d gates", len(plans), len(gates))

	return Circuit(system, gates, Provenance(source=source, stage="lower"))


def standardize_all(gates: Sequence[Union[CRot, PSwap]], system: QuditSystem) -> List[RewritePlan]:
	"""
	Returns a :func:`~.standardize` plan for each gate, in order.
	"""

	return [standardize(gate, system) for gate in gates]
