# 3rd party
import pytest
from domdf_python_tools.paths import PathPlus

# this package
from quditcomp.ansatz import native_gate
from quditcomp.circuit import build_named, count_gates, evaluate
from quditcomp.files import dump_unitary
from quditcomp.gates import QuditSystem
from quditcomp.linalg import fidelity, random_unitary
from quditcomp.pipeline import PipelineConfig, run_full, run_verify
from quditcomp.variational import OptimizerConfig, solve_layers

pytestmark = pytest.mark.slow


@pytest.mark.parametrize(
		"native, theta_mode",
		[
				pytest.param("ms", "fixed", id="ms"),
				pytest.param("ls", "free", id="ls-free"),
				]
		)
def test_cnot_to_native(tmp_pathplus: PathPlus, qubits: QuditSystem, native: str, theta_mode):
	dump_unitary(tmp_pathplus / "cnot.json", build_named("CSUM", qubits), qubits)

	config = PipelineConfig(
			input_path=tmp_pathplus / "cnot.json",
			output_path=tmp_pathplus / "out.json",
			native=native,
			optimizer=OptimizerConfig(anneal_iterations=200, theta_mode=theta_mode, time_limit=120),
			cache_dir=tmp_pathplus / "cache",
			)
	report, circuit = run_full(config)

	assert report.converged
	assert report.infidelity <= 1e-2
	assert count_gates(circuit)["CEX"] == 0
	assert getattr(report, f"{native.upper()}_tot") == report.CEX_tot * report.layers_used
	assert run_verify(tmp_pathplus / "out.json", tmp_pathplus / "cnot.json", threshold=1e-2).passed

	# the second run reads the stored CEX solution
	assert list((tmp_pathplus / "cache").iterdir())
	again, _ = run_full(config)
	assert again.layers_used == report.layers_used


@pytest.mark.parametrize("d", [2, 3, 4])
def test_random_unitary_exact(tmp_pathplus: PathPlus, d: int):
	system = QuditSystem(d, d)
	dump_unitary(tmp_pathplus / "u.json", random_unitary(d * d, seed=d), system)

	report, _ = run_full(PipelineConfig(input_path=tmp_pathplus / "u.json", output_path=tmp_pathplus / "out.json"))

	assert report.cRot + report.pSwap <= d * d * (d * d - 1) // 2 + 3 * (d * d - 1)
	assert report.infidelity < 1e-9
	assert run_verify(tmp_pathplus / "out.json", tmp_pathplus / "u.json").passed


@pytest.mark.timeout(1200)
def test_cex_over_ls_qutrits(qutrits: QuditSystem):
	target = build_named("CEX", qutrits)
	results = []

	# any of four seeds may find it
	for seed in range(4):
		config = OptimizerConfig(target_infidelity=1e-4, seed=seed, time_limit=240)
		results.append(solve_layers(target, qutrits, native_gate("ls"), 2, config))
		if results[-1].converged:
			break

	result = results[-1]
	assert result.converged, [r.achieved_infidelity for r in results]
	assert result.achieved_infidelity < 1e-4
	assert result.native_count == 2
	assert count_gates(result.circuit)["LS"] == 2
	assert fidelity(evaluate(result.circuit), target) > 1 - 1e-4


@pytest.mark.timeout(900)
def test_cex_over_ms_qutrits(qutrits: QuditSystem):
	target = build_named("CEX", qutrits)
	config = OptimizerConfig(target_infidelity=1e-2, time_limit=600)

	result = solve_layers(target, qutrits, native_gate("ms"), 8, config)

	assert result.converged
	assert result.achieved_infidelity < 1e-2
	assert count_gates(result.circuit)["MS"] <= 8


def test_cex_over_cex_ququarts():
	system = QuditSystem(4, 4)
	target = build_named("CEX", system)
	config = OptimizerConfig(target_infidelity=1e-10, time_limit=60)

	result = solve_layers(target, system, native_gate("cex"), 1, config)

	assert not result.timed_out
	assert result.converged
	assert result.achieved_infidelity < 1e-10
	assert result.native_count == 1
