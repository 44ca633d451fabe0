#!/usr/bin/env python3
#
#  pipeline.py
"""
The compilation pipeline: synthesis, lowering to CEX, the CEX solution and its substitution.

Also verification of a circuit against a unitary, and tabulation of reports.
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
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

# 3rd party
from domdf_python_tools.paths import PathPlus
from domdf_python_tools.stringlist import StringList
from domdf_python_tools.typing import PathLike
from typing_extensions import Literal

# this package
from quditcomp.ansatz import NativeGate, ThetaMode, native_gate
from quditcomp.cache import SolutionCache
from quditcomp.circuit import Circuit, Provenance, count_gates, evaluate
from quditcomp.files import FileFormatError, dump_circuit, dump_report, load_circuit, load_report, load_unitary
from quditcomp.gates import QuditSystem, gate_matrix
from quditcomp.linalg import ComplexMatrix, NonUnitaryError, fidelity, infidelity, nearest_unitary, unitarity_deviation
from quditcomp.standard import STANDARD_CEX, lower_to_cex, standardize_all
from quditcomp.synthesis import SynthesisError, synthesize
from quditcomp.variational import CompilationResult, OptimizerConfig, binary_search_layers, substitute_cex

__all__ = [
		"Stage",
		"PipelineConfig",
		"CompilationReport",
		"VerifyReport",
		"load_target",
		"compile_cex",
		"run_full",
		"run_verify",
		"run_report",
		"render_table",
		"TABLE_COLUMNS",
		"LOWERING_TOLERANCE",
		]

logger = logging.getLogger(__name__)

Stage = Literal["synthesize", "lower", "compile-cex", "full"]

#: Inputs closer than this to unitary are used as they are.
_EXACT_TOLERANCE = 1e-10

#: Largest infidelity allowed between the input and the circuit lowered to CEX gates.
LOWERING_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PipelineConfig:
	"""
	Everything needed to compile one unitary file.

	:param input_path: The unitary file.
	:param output_path: Where the circuit of :attr:`stage` is written.
	:param stage: The last stage whose circuit is written.
	:param report_path: Where the report is written, if anywhere.
	:param dims: Expected qudit dimensions, checked against the input.
	:param native: ``cex``, ``ms`` or ``ls``.
	:param native_angle: The MS or LS angle in fixed mode.
	:param optimizer:
	:param cache_dir: Directory of pre-computed CEX solutions. :py:obj:`None` disables the cache.
	:param unitarity_tolerance: Inputs within this of unitary are repaired rather than rejected.
	:param label: The name of the input in the report. Defaults to the input file's stem.
	"""

	input_path: PathLike
	output_path: PathLike
	stage: Stage = "full"
	report_path: Optional[PathLike] = None
	dims: Optional[Tuple[int, int]] = None
	native: str = "cex"
	native_angle: float = math.pi
	optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
	cache_dir: Optional[PathLike] = None
	unitarity_tolerance: float = 1e-8
	label: Optional[str] = None

	def __post_init__(self):
		if self.stage not in {"synthesize", "lower", "compile-cex", "full"}:
			raise ValueError(
					f"'stage' must be one of ('synthesize', 'lower', 'compile-cex', 'full'), not {self.stage!r}"
					)

	@classmethod
	def from_settings(cls, settings: Mapping[str, Any], **kwargs: Any) -> "PipelineConfig":
		"""
		Construct the config from parsed settings.

		:param settings: As returned by :class:`~.SettingsParser`.
		:param kwargs: The remaining fields, such as ``input_path`` and ``output_path``.
		"""

		return cls(
				native=settings["native"],
				native_angle=settings["native_angle"],
				optimizer=OptimizerConfig.from_settings(settings),
				cache_dir=settings["cache_dir"],
				unitarity_tolerance=settings["unitarity_tolerance"],
				**kwargs,
				)

	@property
	def native_gate(self) -> NativeGate:  # noqa: D102
		return native_gate(self.native, self.native_angle)

	@property
	def theta_mode(self) -> ThetaMode:  # noqa: D102
		return self.optimizer.theta_mode


@dataclass
class CompilationReport:
	"""
	Gate counts and fidelities of one compilation.

	The ``*_tot`` counts are totals over the final circuit.
	"""

	system: str
	dims: Tuple[int, int]
	cRot: int = 0
	pSwap: int = 0
	CEX_tot: int = 0
	MS_tot: int = 0
	LS_tot: int = 0
	infidelity: float = 0.0
	stage_infidelities: Dict[str, float] = field(default_factory=dict)
	wall_times: Dict[str, float] = field(default_factory=dict)
	converged: bool = True
	native: str = "cex"
	layers_used: Optional[int] = None

	@property
	def dim(self) -> int:  # noqa: D102
		return self.dims[0] * self.dims[1]

	def to_dict(self) -> Dict[str, Any]:  # noqa: D102
		data = asdict(self)
		data["dims"] = list(self.dims)
		return data

	@classmethod
	def from_dict(cls, data: Mapping[str, Any]) -> "CompilationReport":  # noqa: D102
		kwargs = {k: v for k, v in data.items() if k in cls.__dataclass_fields__}
		kwargs["dims"] = tuple(kwargs["dims"])
		return cls(**kwargs)


def load_target(path: PathLike, unitarity_tolerance: float = 1e-8) -> Tuple[QuditSystem, ComplexMatrix]:
	"""
	Load a unitary file, repairing small deviations from unitarity.

	Matrices within ``unitarity_tolerance`` of unitary are replaced by the nearest unitary.

	:param path:
	:param unitarity_tolerance:

	:raises NonUnitaryError: If the matrix is further from unitary.
	"""

	system, matrix = load_unitary(path)
	deviation = unitarity_deviation(matrix)

	if deviation > unitarity_tolerance:
		raise NonUnitaryError(deviation, unitarity_tolerance)
	elif deviation > _EXACT_TOLERANCE:
		logger.warning("Input deviates from unitarity by %.2e; using the nearest unitary", deviation)
		matrix = nearest_unitary(matrix)

	return system, matrix


def compile_cex(system: QuditSystem, config: PipelineConfig) -> CompilationResult:
	"""
	Returns a decomposition of ``CEX(1; 0, 1)`` into the native gate.

	Solutions are read from and written to the cache when :attr:`PipelineConfig.cache_dir` is set.
	Only converged solutions are written.

	:param system:
	:param config:
	"""

	native = config.native_gate

	if native.name == "cex":
		return CompilationResult(
				circuit=Circuit(system, [STANDARD_CEX], Provenance(stage="compile-cex")),
				layers_used=1,
				achieved_infidelity=0.0,
				wall_time=0.0,
				converged=True,
				)

	cache = SolutionCache(config.cache_dir) if config.cache_dir is not None else None

	if cache is not None:
		cached = cache.load(system, native, config.theta_mode)
		if cached is not None:
			return cached

	target = gate_matrix(STANDARD_CEX, system)
	result = binary_search_layers(target, system, native, config.optimizer)

	if cache is not None and result.converged:
		cache.store(result, native, config.theta_mode, config.optimizer.seed)

	return result


class _Timer:

	def __init__(self):
		self.times: Dict[str, float] = {}

	def start(self) -> None:
		self._start = time.perf_counter()

	def stop(self, stage: str) -> None:
		self.times[stage] = time.perf_counter() - self._start


def run_full(config: PipelineConfig) -> Tuple[CompilationReport, Circuit]:
	"""
	Compile a unitary file, writing the circuit of the requested stage and, optionally, a report.

	The report always reflects every stage run. ``synthesize`` and ``lower`` stop after lowering,
	while ``compile-cex`` and ``full`` also find and substitute the CEX solution.
	If the CEX solution did not converge, the circuit is still written and the report says so.

	:param config:

	:raises FileNotFoundError: If the input does not exist.
	:raises FileFormatError: If the input is malformed.
	:raises NonUnitaryError: If the input is not unitary.
	:raises ValueError: If the input does not match :attr:`PipelineConfig.dims`.
	:raises SynthesisError: If the synthesized or lowered circuit does not reconstruct the input.
	"""

	timer = _Timer()
	source = PathPlus(config.input_path).as_posix()

	system, target = load_target(config.input_path, config.unitarity_tolerance)
	if config.dims is not None and tuple(config.dims) != system.dims:
		raise ValueError(f"Expected dimensions {tuple(config.dims)}, but {source} has {system.dims}")

	logger.info("Compiling %s over dimensions %s to %s", source, system.dims, config.native)

	timer.start()
	synthesized = synthesize(target, system)
	timer.stop("synthesize")

	timer.start()
	plans = standardize_all(synthesized.classified, system)
	lowered = lower_to_cex(plans, system, source=source)
	timer.stop("lower")

	counts = count_gates(lowered)
	report = CompilationReport(
			system=config.label or PathPlus(config.input_path).stem,
			dims=system.dims,
			cRot=sum(plan.core.kind == "CRot" for plan in plans),
			pSwap=sum(plan.core.kind == "PSwap" for plan in plans),
			CEX_tot=counts["CEX"],
			native=config.native,
			)

	report.stage_infidelities["synthesize"] = 1 - synthesized.residual_check
	report.stage_infidelities["lower"] = infidelity(evaluate(lowered), target)

	if report.stage_infidelities["lower"] > LOWERING_TOLERANCE:
		raise SynthesisError(
				f"Lowered circuit reconstructs the input with infidelity {report.stage_infidelities['lower']:.3e}"
				)

	stages: Dict[str, Circuit] = {
			"synthesize": synthesized.to_circuit(source),
			"lower": lowered,
			}

	if config.stage in {"compile-cex", "full"}:
		timer.start()
		if counts["CEX"] or config.stage == "compile-cex":
			solution: Optional[CompilationResult] = compile_cex(system, config)
		else:
			logger.info("No CEX gates to decompose")
			solution = None

		final = lowered if solution is None else substitute_cex(lowered, solution)
		final = final.with_provenance(
				stage="full",
				metadata={
						"native": config.native,
						"layers_used": None if solution is None else solution.layers_used,
						"seed": config.optimizer.seed,
						},
				)
		timer.stop("compile-cex")

		final_counts = count_gates(final)
		report.MS_tot = final_counts["MS"]
		report.LS_tot = final_counts["LS"]

		if solution is not None:
			report.layers_used = solution.layers_used
			report.converged = solution.converged or not counts["CEX"]
			report.stage_infidelities["compile-cex"] = solution.achieved_infidelity
			stages["compile-cex"] = solution.circuit
		else:
			report.stage_infidelities["compile-cex"] = 0.0

		report.stage_infidelities["full"] = infidelity(evaluate(final), target)
		stages["full"] = final

	report.infidelity = report.stage_infidelities[config.stage]
	report.wall_times = timer.times

	circuit = stages[config.stage]
	dump_circuit(config.output_path, circuit)
	logger.info("Wrote %s circuit with %d gates to %s", config.stage, len(circuit), config.output_path)

	if config.report_path is not None:
		dump_report(config.report_path, report.to_dict())

	if not report.converged:
		logger.warning("The CEX decomposition did not reach the target infidelity; the circuit is partial")

	return report, circuit


@dataclass(frozen=True)
class VerifyReport:
	"""
	The result of checking a circuit against a unitary.
	"""

	fidelity: float
	infidelity: float
	counts: Dict[str, int]
	threshold: float

	@property
	def passed(self) -> bool:  # noqa: D102
		return self.infidelity <= self.threshold

	def to_dict(self) -> Dict[str, Any]:  # noqa: D102
		return {
				"fidelity": self.fidelity,
				"infidelity": self.infidelity,
				"counts": dict(sorted(self.counts.items())),
				"threshold": self.threshold,
				"passed": self.passed,
				}


def run_verify(circuit_path: PathLike, unitary_path: PathLike, threshold: float = 1e-3) -> VerifyReport:
	"""
	Compare the circuit in ``circuit_path`` with the unitary in ``unitary_path``.

	:param circuit_path:
	:param unitary_path:
	:param threshold: The largest infidelity which passes.

	:raises ValueError: If the dimensions differ.
	"""

	circuit = load_circuit(circuit_path)
	system, target = load_unitary(unitary_path)

	if circuit.system != system:
		raise ValueError(f"The circuit is over dimensions {circuit.system.dims}, but the unitary is over {system.dims}")

	f = fidelity(evaluate(circuit), target)
	return VerifyReport(fidelity=f, infidelity=1 - f, counts=dict(count_gates(circuit)), threshold=threshold)


#: The columns of :func:`~.render_table`, and the report field each shows.
TABLE_COLUMNS: List[Tuple[str, str]] = [
		("System", "system"),
		("Dim.", "dim"),
		("cRot", "cRot"),
		("pSwap", "pSwap"),
		("CEX_tot", "CEX_tot"),
		("MS_tot", "MS_tot"),
		("LS_tot", "LS_tot"),
		("(1-F)", "infidelity"),
		]


def _cell(report: CompilationReport, attr: str) -> str:
	value = getattr(report, attr)
	if attr == "infidelity":
		return f"{value:.2e}"
	return str(value)


def render_table(reports: List[CompilationReport]) -> str:
	"""
	Render reports as a fixed-width text table, one row per report.

	:param reports: Rows, in order.
	"""

	rows = [[header for header, _ in TABLE_COLUMNS]]
	rows.extend([_cell(report, attr) for _, attr in TABLE_COLUMNS] for report in reports)

	widths = [max(len(row[i]) for row in rows) for i in range(len(TABLE_COLUMNS))]

	buf = StringList()
	for idx, row in enumerate(rows):
		buf.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
		if idx == 0:
			buf.append("  ".join('-' * width for width in widths))

	return str(buf)


def run_report(results_dir: PathLike) -> Tuple[List[CompilationReport], str]:
	"""
	Tabulate every report in ``results_dir``, sorted by dimension and then name.

	Files which are not valid reports are skipped with a warning.

	:param results_dir:

	:returns: The reports, and the rendered table.

	:raises FileNotFoundError: If the directory does not exist.
	"""

	results_dir = PathPlus(results_dir)
	if not results_dir.is_dir():
		raise FileNotFoundError(str(results_dir))

	reports = []

	for path in sorted(results_dir.glob("*.json")):
		try:
			reports.append(CompilationReport.from_dict(load_report(path)))
		except FileFormatError as e:
			logger.warning("Skipping %s", e)

	reports.sort(key=lambda r: (r.dim, r.system))
	return reports, render_table(reports)
