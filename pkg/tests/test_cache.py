# stdlib
import math

# 3rd party
import pytest
from domdf_python_tools.paths import PathPlus

# this package
from quditcomp.ansatz import native_gate
from quditcomp.cache import SolutionCache, cache_key
from quditcomp.circuit import Circuit
from quditcomp.files import dump_circuit
from quditcomp.gates import LS, MS, LocalR, QuditSystem
from quditcomp.variational import CompilationResult


def _solution(system: QuditSystem, *gates) -> CompilationResult:
	return CompilationResult(
			Circuit(system, gates or [LocalR(1, (0, 1), 0.2, 0.1), MS(math.pi), LocalR(2, (0, 1), 0.3, 0.4)]),
			layers_used=1,
			achieved_infidelity=2e-4,
			wall_time=3.5,
			converged=True,
			)


@pytest.mark.parametrize(
		"dims, native, theta_mode, expects",
		[
				((3, 3), "ms", "fixed", "cex_d3_ms_fixed.json"),
				((2, 3), "ls", "free", "cex_d2x3_ls_free.json"),
				((2, 2), "cex", "fixed", "cex_d2_cex_fixed.json"),
				]
		)
def test_cache_key(dims, native: str, theta_mode, expects: str):
	assert cache_key(QuditSystem(*dims), native, theta_mode) == expects


def test_store_and_load(tmp_pathplus: PathPlus, qutrits: QuditSystem):
	cache = SolutionCache(tmp_pathplus / "cache")
	ms = native_gate("ms")
	result = _solution(qutrits)

	path = cache.store(result, ms, "fixed", seed=7)
	assert path == tmp_pathplus / "cache" / "cex_d3_ms_fixed.json"
	assert path.is_file()

	loaded = cache.load(qutrits, ms, "fixed")
	assert loaded is not None
	assert loaded.circuit.gates == result.circuit.gates
	assert loaded.layers_used == 1
	assert loaded.achieved_infidelity == 2e-4
	assert loaded.converged
	assert loaded.wall_time == 0

	assert loaded.circuit.provenance is not None
	assert loaded.circuit.provenance.stage == "compile-cex"
	assert loaded.circuit.provenance.metadata["seed"] == 7
	assert loaded.circuit.provenance.metadata["d"] == 3


def test_missing(tmp_pathplus: PathPlus, qutrits: QuditSystem):
	assert SolutionCache(tmp_pathplus).load(qutrits, native_gate("ms"), "fixed") is None


def test_angle_mismatch(tmp_pathplus: PathPlus, qutrits: QuditSystem):
	cache = SolutionCache(tmp_pathplus)
	cache.store(_solution(qutrits), native_gate("ms"), "fixed", seed=0)

	assert cache.load(qutrits, native_gate("ms", angle=math.pi / 2), "fixed") is None
	assert cache.load(qutrits, native_gate("ms"), "fixed") is not None


def test_free_mode_ignores_angle(tmp_pathplus: PathPlus, qutrits: QuditSystem):
	cache = SolutionCache(tmp_pathplus)
	cache.store(_solution(qutrits, LS(1.0), LS(2.0)), native_gate("ls"), "free", seed=0)

	loaded = cache.load(qutrits, native_gate("ls", angle=0.5), "free")
	assert loaded is not None
	assert loaded.circuit.gates == (LS(1.0), LS(2.0))

	# keys differ by theta_mode
	assert cache.load(qutrits, native_gate("ls"), "fixed") is None


def test_unreadable(tmp_pathplus: PathPlus, qutrits: QuditSystem, caplog):
	cache = SolutionCache(tmp_pathplus)
	cache.path_for(qutrits, native_gate("ms"), "fixed").write_text("{not json")

	with caplog.at_level("WARNING", logger="quditcomp"):
		assert cache.load(qutrits, native_gate("ms"), "fixed") is None
		assert cache.entries() == []

	assert "Ignoring unreadable cached solution" in caplog.text
	assert "Skipping unreadable cached solution" in caplog.text


def test_wrong_system(tmp_pathplus: PathPlus, qutrits: QuditSystem, qubits: QuditSystem, caplog):
	cache = SolutionCache(tmp_pathplus)
	dump_circuit(cache.path_for(qutrits, native_gate("cex"), "fixed"), Circuit(qubits))

	with caplog.at_level("WARNING", logger="quditcomp"):
		assert cache.load(qutrits, native_gate("cex"), "fixed") is None

	assert "for dimensions (2, 2)" in caplog.text


def test_entries_and_clear(tmp_pathplus: PathPlus, qutrits: QuditSystem, qubits: QuditSystem):
	cache = SolutionCache(tmp_pathplus / "cache")
	assert cache.entries() == []
	assert cache.clear() == 0

	cache.store(_solution(qutrits), native_gate("ms"), "fixed", seed=1)
	cache.store(_solution(qubits, LS(math.pi)), native_gate("ls"), "free", seed=2)
	(tmp_pathplus / "cache" / "notes.txt").write_text("keep me")

	entries = cache.entries()
	assert [e["file"] for e in entries] == ["cex_d2_ls_free.json", "cex_d3_ms_fixed.json"]
	assert entries[0]["gates"] == 1
	assert entries[0]["native"] == "ls"
	assert entries[1]["seed"] == 1

	assert cache.clear() == 2
	assert cache.entries() == []
	assert (tmp_pathplus / "cache" / "notes.txt").is_file()


def test_repr(tmp_pathplus: PathPlus):
	assert repr(SolutionCache(tmp_pathplus)) == f"<SolutionCache {tmp_pathplus.as_posix()!r}>"
