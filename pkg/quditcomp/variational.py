#!/usr/bin/env python3
#
#  variational.py
"""
Variational decomposition of a small target entangler into layers of a native gate.

Each layer count is annealed over the box of ansatz parameters with :func:`scipy.optimize.dual_annealing`,
refining accepted points with bounded L-BFGS, and the number of layers is found by binary search.
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
import time
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

# 3rd party
import numpy as np
from scipy.optimize import dual_annealing, minimize

# this package
from quditcomp.ansatz import AnsatzSpec, NativeGate, ThetaMode, objective, to_circuit, warm_start
from quditcomp.circuit import Circuit, evaluate
from quditcomp.gates import CEX, Gate, QuditSystem
from quditcomp.linalg import ComplexMatrix, as_matrix, infidelity

__all__ = [
		"OptimizerConfig",
		"CompilationResult",
		"NonFiniteObjectiveError",
		"solve_layers",
		"binary_search_layers",
		"substitute_cex",
		"native_count",
		]

logger = logging.getLogger(__name__)


class NonFiniteObjectiveError(FloatingPointError):
	"""
	Raised when the objective evaluates to NaN or infinity.
	"""

	def __init__(self, value: float, params: np.ndarray):
		super().__init__(f"The objective evaluated to {value!r}")
		self.value = value
		self.params = params


class _SolveTimeout(Exception):
	pass


class _TargetReached(Exception):
	pass


@dataclass(frozen=True)
class OptimizerConfig:
	"""
	Settings for the variational search.

	:param target_infidelity: A solve succeeds once the infidelity is at most this value.
	:param time_limit: Seconds allowed per layer count. ``0`` selects 60 s for qubits and 600 s otherwise.
	:param paper_budget: Allow ``d / 4`` hours per layer count instead, when ``time_limit`` is ``0``.
	:param max_layers: The largest number of layers tried. ``0`` selects ``2 * d**2``.
	:param seed: Restart ``r`` of a solve is seeded with ``seed + r``.
	:param restarts: Number of independent annealing runs per layer count.
	:param initial_temperature:
	:param visiting_parameter:
	:param acceptance_parameter:
	:param restart_temperature_ratio: Temperature fraction at which annealing reheats.
	:param anneal_iterations: Global annealing iterations per restart.
	:param refine_iterations: Maximum L-BFGS iterations per local refinement.
	:param gradient_tolerance: Projected gradient tolerance of the local refinement.
	:param finite_difference_step: Step of the central-difference gradient.
	:param theta_mode: Whether the MS or LS angle of each layer is ``fixed`` or ``free``.
	"""

	target_infidelity: float = 1e-3
	time_limit: float = 0.0
	paper_budget: bool = False
	max_layers: int = 0
	seed: int = 0
	restarts: int = 4
	initial_temperature: float = 5230.0
	visiting_parameter: float = 2.62
	acceptance_parameter: float = -5.0
	restart_temperature_ratio: float = 2e-5
	anneal_iterations: int = 1000
	refine_iterations: int = 200
	gradient_tolerance: float = 1e-10
	finite_difference_step: float = 1e-7
	theta_mode: ThetaMode = "fixed"

	def __post_init__(self):
		if not 0 < self.target_infidelity < 1:
			raise ValueError(f"'target_infidelity' must be between 0 and 1, not {self.target_infidelity!r}")
		if self.time_limit < 0:
			raise ValueError(f"'time_limit' must not be negative, not {self.time_limit!r}")
		if self.max_layers < 0:
			raise ValueError(f"'max_layers' must not be negative, not {self.max_layers!r}")

		for name in ("restarts", "anneal_iterations", "refine_iterations"):
			if getattr(self, name) < 1:
				raise ValueError(f"'{name}' must be at least 1, not {getattr(self, name)!r}")

		for name in ("gradient_tolerance", "finite_difference_step"):
			if getattr(self, name) <= 0:
				raise ValueError(f"'{name}' must be positive, not {getattr(self, name)!r}")

		if self.theta_mode not in {"fixed", "free"}:
			raise ValueError(f"'theta_mode' must be one of ('fixed', 'free'), not {self.theta_mode!r}")

	@classmethod
	def from_settings(cls, settings: Mapping[str, Any]) -> "OptimizerConfig":
		"""
		Construct the config from a mapping of settings, ignoring keys it does not use.
		"""

		names = {f.name for f in fields(cls)}
		return cls(**{k: v for k, v in settings.items() if k in names})

	def resolved_time_limit(self, d: int) -> float:
		"""
		Returns the time limit per layer count in seconds for qudits of dimension ``d``.
		"""

		if self.time_limit:
			return float(self.time_limit)
		elif self.paper_budget:
			return d / 4 * 3600
		elif d == 2:
			return 60.0
		else:
			return 600.0

	def resolved_max_layers(self, d: int) -> int:
		"""
		Returns the layer cap for qudits of dimension ``d``.
		"""

		return self.max_layers or 2 * d * d


@dataclass(frozen=True)
class CompilationResult:
	"""
	The outcome of a variational solve or layer search.

	:param circuit: The best circuit found, of two-level local gates and native gates.
	:param layers_used:
	:param achieved_infidelity: Recomputed from :attr:`circuit` against the target.
	:param wall_time: Seconds spent.
	:param optimizer_trace: The best objective of each restart, in order.
	:param converged: Whether :attr:`achieved_infidelity` meets the target.
	:param timed_out: Whether the time limit cut the search short.
	:param params: The parameter vector behind :attr:`circuit`.
	:param spec: The ansatz behind :attr:`circuit`.
	"""

	circuit: Circuit
	layers_used: int
	achieved_infidelity: float
	wall_time: float
	optimizer_trace: Tuple[float, ...] = ()
	converged: bool = False
	timed_out: bool = False
	params: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
	spec: Optional[AnsatzSpec] = field(default=None, repr=False, compare=False)

	@property
	def status(self) -> str:
		"""
		``converged``, ``timeout`` or ``failed``.
		"""

		if self.converged:
			return "converged"
		elif self.timed_out:
			return "timeout"
		else:
			return "failed"

	@property
	def native_count(self) -> int:
		"""
		The number of native gates per copy of the circuit.
		"""

		return native_count(self.circuit)


def native_count(circuit: Circuit) -> int:
	"""
	Count the entangling gates of ``circuit``.
	"""

	return sum(gate.kind in {"CEX", "MS", "LS", "Unitary"} for gate in circuit.gates)


class _Tracker:
	"""
	Wraps the objective, recording the best point seen and enforcing the deadline.
	"""

	def __init__(self, spec: AnsatzSpec, target: ComplexMatrix, deadline: float, step: float):
		self.spec = spec
		self.target = target
		self.deadline = deadline
		self.step = step
		self.best_x: Optional[np.ndarray] = None
		self.best_f = math.inf
		self.stop_at: Optional[float] = None
		self.evaluations = 0

	def value(self, x: np.ndarray) -> float:
		if time.monotonic() > self.deadline:
			raise _SolveTimeout

		f = objective(self.spec, x, self.target)
		self.evaluations += 1

		if not math.isfinite(f):
			raise NonFiniteObjectiveError(f, np.array(x))

		return f

	def __call__(self, x: np.ndarray) -> float:
		f = self.value(x)

		if f < self.best_f:
			self.best_f, self.best_x = f, np.array(x, dtype=float)
			if self.stop_at is not None and f <= self.stop_at:
				raise _TargetReached

		return f

	def gradient(self, x: np.ndarray) -> np.ndarray:
		"""
		Central-difference gradient.
		"""

		x = np.asarray(x, dtype=float)
		grad = np.empty_like(x)

		for k in range(x.size):
			shift = np.zeros_like(x)
			shift[k] = self.step
			grad[k] = (self.value(x + shift) - self.value(x - shift)) / (2 * self.step)

		return grad


#: The default L-BFGS-B ``ftol``.
_LBFGSB_FTOL = 2.220446049250313e-09


def _refine_options(config: OptimizerConfig) -> Dict[str, Any]:
	# local searches resolve the objective well below the target
	ftol = min(_LBFGSB_FTOL, config.target_infidelity * 1e-3)
	return {"maxiter": config.refine_iterations, "gtol": config.gradient_tolerance, "ftol": ftol}


def _anneal(
		tracker: _Tracker,
		bounds: List[Tuple[float, float]],
		config: OptimizerConfig,
		seed: int,
		x0: Optional[np.ndarray],
		) -> None:
	minimizer_kwargs = {
			"method": "L-BFGS-B",
			"jac": tracker.gradient,
			"bounds": bounds,
			"options": _refine_options(config),
			}

	dual_annealing(
			tracker,
			bounds,
			maxiter=config.anneal_iterations,
			minimizer_kwargs=minimizer_kwargs,
			initial_temp=config.initial_temperature,
			restart_temp_ratio=config.restart_temperature_ratio,
			visit=config.visiting_parameter,
			accept=config.acceptance_parameter,
			seed=seed,
			x0=x0,
			)


def _polish(tracker: _Tracker, bounds: List[Tuple[float, float]], config: OptimizerConfig) -> None:
	assert tracker.best_x is not None
	tracker.stop_at = None
	minimize(
			tracker,
			tracker.best_x,
			method="L-BFGS-B",
			jac=tracker.gradient,
			bounds=bounds,
			options=_refine_options(config),
			)


def solve_layers(
		target: ComplexMatrix,
		system: QuditSystem,
		native: NativeGate,
		layers: int,
		config: OptimizerConfig,
		x0: Optional[Sequence[float]] = None,
		) -> CompilationResult:
	"""
	Fit an ansatz with ``layers`` entangling layers to ``target``.

	Restarts run in turn with seeds ``config.seed + r`` and stop at the first to reach the target,
	whose best point is then polished by a final L-BFGS run.
	All restarts share one time limit; running out of time is reported through
	:attr:`CompilationResult.timed_out <.CompilationResult.timed_out>` rather than raised.

	:param target: The matrix to decompose.
	:param system:
	:param native:
	:param layers: Must be at least 1.
	:param config:
	:param x0: Starting point of the first restart.

	:raises ValueError: If ``layers`` is less than 1, or ``target`` does not match ``system``.
	:raises NonFiniteObjectiveError: If the objective is ever NaN or infinite.
	"""

	if layers < 1:
		raise ValueError(f"'layers' must be at least 1, not {layers!r}")

	target = as_matrix(target)
	if target.shape != (system.dim, system.dim):
		raise ValueError(f"Target of shape {target.shape} does not match system {system.dims}")

	spec = AnsatzSpec(system, layers, native, config.theta_mode)
	bounds = spec.bounds
	lower, upper = np.array(bounds).T

	start = time.monotonic()
	d = max(system.dims)
	deadline = start + config.resolved_time_limit(d)

	first_x0 = None
	if x0 is not None:
		first_x0 = np.asarray(x0, dtype=float)
		if first_x0.shape != (spec.n_params, ):
			raise ValueError(f"Expected {spec.n_params} starting parameters for {layers} layers, got {first_x0.size}")
		first_x0 = np.clip(first_x0, lower, upper)

	best: Optional[_Tracker] = None
	trace: List[float] = []
	timed_out = False

	for restart in range(config.restarts):
		tracker = _Tracker(spec, target, deadline, config.finite_difference_step)
		tracker.stop_at = config.target_infidelity
		reached = False

		try:
			_anneal(tracker, bounds, config, config.seed + restart, first_x0 if restart == 0 else None)
		except _TargetReached:
			reached = True
		except _SolveTimeout:
			timed_out = True

		trace.append(tracker.best_f)
		logger.debug(
				"Layers %d restart %d: best infidelity %.3e after %d evaluations",
				layers,
				restart,
				tracker.best_f,
				tracker.evaluations,
				)

		if tracker.best_x is not None and (best is None or tracker.best_f < best.best_f):
			best = tracker

		if reached:
			try:
				_polish(tracker, bounds, config)
			except _SolveTimeout:
				timed_out = True
			trace[-1] = tracker.best_f
			break

		if timed_out:
			break

	if best is None or best.best_x is None:
		# the deadline passed before a single evaluation
		best = _Tracker(spec, target, math.inf, config.finite_difference_step)
		best(np.clip(np.zeros(spec.n_params), lower, upper))
		timed_out = True

	assert best.best_x is not None
	circuit = to_circuit(spec, best.best_x)
	achieved = infidelity(evaluate(circuit), target)
	converged = achieved <= config.target_infidelity

	result = CompilationResult(
			circuit=circuit,
			layers_used=layers,
			achieved_infidelity=achieved,
			wall_time=time.monotonic() - start,
			optimizer_trace=tuple(trace),
			converged=converged,
			timed_out=timed_out and not converged,
			params=best.best_x,
			spec=spec,
			)

	logger.info("Layers %d: %s with infidelity %.3e in %.1fs", layers, result.status, achieved, result.wall_time)
	return result


def _grow(result: CompilationResult, layers: int) -> Optional[np.ndarray]:
	if result.spec is None or result.params is None or not result.spec.free_angles:
		return None

	spec, params = result.spec, result.params
	while spec.layers < layers:
		spec, params = warm_start(spec, params)

	return params


def binary_search_layers(
		target: ComplexMatrix,
		system: QuditSystem,
		native: NativeGate,
		config: OptimizerConfig,
		) -> CompilationResult:
	"""
	Find the fewest layers for which :func:`~.solve_layers` reaches the target infidelity.

	Layers are searched in ``[1, max_layers]``: a success at ``L`` continues in ``[lo, L - 1]``,
	a failure or timeout in ``[L + 1, hi]``.
	With free native angles, each solve starts from the best solution with fewer layers,
	grown with identity layers.

	If no layer count succeeds, the result with the lowest infidelity is returned with ``converged=False``.

	:param target:
	:param system:
	:param native:
	:param config:
	"""

	lo, hi = 1, config.resolved_max_layers(max(system.dims))
	start = time.monotonic()
	success: Optional[CompilationResult] = None
	closest: Optional[CompilationResult] = None
	solved: Dict[int, CompilationResult] = {}

	while lo <= hi:
		layers = (lo + hi) // 2

		seed_from = [r for n, r in solved.items() if n < layers]
		x0 = None
		if seed_from:
			x0 = _grow(min(seed_from, key=lambda r: r.achieved_infidelity), layers)

		result = solve_layers(target, system, native, layers, config, x0=x0)
		solved[layers] = result

		if closest is None or result.achieved_infidelity < closest.achieved_infidelity:
			closest = result

		if result.converged:
			success = result
			hi = layers - 1
		else:
			lo = layers + 1

	chosen = success or closest
	assert chosen is not None

	if success is None:
		logger.warning(
				"No layer count up to %d reached infidelity %g; best was %.3e",
				config.resolved_max_layers(max(system.dims)),
				config.target_infidelity,
				chosen.achieved_infidelity,
				)

	trace = tuple(f for n in sorted(solved) for f in solved[n].optimizer_trace)
	return replace(chosen, wall_time=time.monotonic() - start, optimizer_trace=trace)


def substitute_cex(lowered: Circuit, cex_solution: CompilationResult) -> Circuit:
	"""
	Replace every ``CEX(1; 0, 1)`` of ``lowered`` with the gates of ``cex_solution``.

	:param lowered: A circuit from :func:`~.lower_to_cex`.
	:param cex_solution: A decomposition of ``CEX(1; 0, 1)`` over the same system.

	:raises ValueError: If the systems differ, or ``lowered`` contains a CEX other than the standard one.
	"""

	solution = cex_solution.circuit

	if solution.system != lowered.system:
		raise ValueError(
				f"The CEX solution is for system {solution.system.dims}, "
				f"but the circuit is over {lowered.system.dims}"
				)

	standard = CEX(1, (0, 1))
	gates: List[Gate] = []

	for gate in lowered.gates:
		if isinstance(gate, CEX):
			if gate != standard:
				raise ValueError(f"Only {standard!r} can be substituted, not {gate!r}")
			gates.extend(solution.gates)
		else:
			gates.append(gate)

	return lowered.with_gates(gates)
