# stdlib
import json
import logging
import math

# 3rd party
import numpy as np
import pytest
from domdf_python_tools.paths import PathPlus

# this package
from quditcomp import standard
from quditcomp.ansatz import native_gate
from quditcomp.cache import SolutionCache
from quditcomp.circuit import Circuit
from quditcomp.cli import (
		EXIT_NON_UNITARY,
		EXIT_NOT_CONVERGED,
		EXIT_OK,
		EXIT_SYNTHESIS,
		EXIT_THRESHOLD,
		EXIT_USAGE,
		build_parser,
		configure_logging,
		main
		)
from quditcomp.files import dump_circuit, dump_unitary, load_circuit
from quditcomp.gates import LS, QuditSystem
from quditcomp.variational import CompilationResult

pytestmark = pytest.mark.usefixtures("restore_logging")


def _store_fake(cache_dir: PathPlus, system: QuditSystem, converged: bool) -> None:
	fake = CompilationResult(
			Circuit(system, [LS(math.pi)]),
			layers_used=1,
			achieved_infidelity=0.2,
			wall_time=0,
			converged=converged,
			)
	SolutionCache(cache_dir).store(fake, native_gate("ls"), "fixed", seed=0)


class TestCompile:

	def test_success(self, csum3_file: PathPlus, capsys):
		out = csum3_file.parent / "out.json"
		report = csum3_file.parent / "report.json"

		assert main(["compile", str(csum3_file), "-o", str(out), "--report", str(report)]) == EXIT_OK

		printed = json.loads(capsys.readouterr().out)
		assert printed["system"] == "csum3"
		assert printed["CEX_tot"] == 2 * printed["cRot"] + 4 * printed["pSwap"]
		assert out.is_file()
		assert report.is_file()

	def test_stage_and_label(self, csum3_file: PathPlus, capsys):
		out = csum3_file.parent / "out.json"
		args = ["compile", str(csum3_file), "-o", str(out), "--stage", "lower", "--label", "CSUM_3"]

		assert main(args) == EXIT_OK
		assert json.loads(capsys.readouterr().out)["system"] == "CSUM_3"

		provenance = load_circuit(out).provenance
		assert provenance is not None
		assert provenance.stage == "lower"

	def test_not_converged(self, csum3_file: PathPlus, qutrits: QuditSystem, capsys):
		cache_dir = csum3_file.parent / "cache"
		_store_fake(cache_dir, qutrits, converged=False)
		out = csum3_file.parent / "out.json"

		args = ["compile", str(csum3_file), "-o", str(out), "--native", "LS", "--cache-dir", str(cache_dir)]
		assert main(args) == EXIT_NOT_CONVERGED

		assert json.loads(capsys.readouterr().out)["converged"] is False
		assert out.is_file()

	def test_not_unitary(self, tmp_pathplus: PathPlus, qutrits: QuditSystem, capsys):
		dump_unitary(tmp_pathplus / "u.json", 2 * np.eye(9), qutrits)

		assert main(["compile", str(tmp_pathplus / "u.json"), "-o", str(tmp_pathplus / "out.json")]) == EXIT_NON_UNITARY
		assert "not unitary" in capsys.readouterr().err.lower()

	def test_nan_entry(self, tmp_pathplus: PathPlus, qutrits: QuditSystem, capsys):
		matrix = np.eye(9, dtype=complex)
		matrix[0, 0] = math.nan
		dump_unitary(tmp_pathplus / "u.json", matrix, qutrits)

		assert main(["compile", str(tmp_pathplus / "u.json"), "-o", str(tmp_pathplus / "out.json")]) == EXIT_NON_UNITARY
		assert "not unitary" in capsys.readouterr().err.lower()

	def test_bad_lowering(self, csum3_file: PathPlus, monkeypatch, capsys):
		# drops the opening rotation
		broken = standard.GateTemplate("cRot", standard.CROT_TEMPLATE.slots[1:])
		monkeypatch.setattr(standard, "CROT_TEMPLATE", broken)
		monkeypatch.setattr(standard, "PSWAP_TEMPLATE", broken)

		assert main(["compile", str(csum3_file), "-o", str(csum3_file.parent / "out.json")]) == EXIT_SYNTHESIS
		assert "Lowered circuit reconstructs the input" in capsys.readouterr().err
		assert not (csum3_file.parent / "out.json").exists()

	def test_missing(self, tmp_pathplus: PathPlus):
		args = ["compile", str(tmp_pathplus / "u.json"), "-o", str(tmp_pathplus / "out.json")]
		assert main(args) == EXIT_USAGE

	def test_dims(self, csum3_file: PathPlus, capsys):
		args = ["compile", str(csum3_file), "-o", str(csum3_file.parent / "out.json"), "--dims", '2', '2']

		assert main(args) == EXIT_USAGE
		assert "Expected dimensions (2, 2)" in capsys.readouterr().err

	def test_bad_setting(self, csum3_file: PathPlus, capsys):
		args = ["compile", str(csum3_file), "-o", str(csum3_file.parent / "out.json"), "--restarts", '0']

		assert main(args) == EXIT_USAGE
		assert "'restarts' must be at least 1" in capsys.readouterr().err

	@pytest.mark.parametrize(
			"args",
			[
					pytest.param(["--native", "foo"], id="native"),
					pytest.param(["--dims", '1', '3'], id="dims"),
					pytest.param(["--restarts", "many"], id="restarts"),
					pytest.param(["--stage", "optimise"], id="stage"),
					]
			)
	def test_argparse_errors(self, csum3_file: PathPlus, args):
		with pytest.raises(SystemExit) as e:
			main(["compile", str(csum3_file), "-o", "out.json", *args])

		assert e.value.code == 2


class TestVerify:

	def test_fails(self, csum3_file: PathPlus, qutrits: QuditSystem, capsys):
		dump_circuit(csum3_file.parent / "empty.json", Circuit(qutrits))

		assert main(["verify", str(csum3_file.parent / "empty.json"), str(csum3_file)]) == EXIT_THRESHOLD
		assert "fidelity    0.333333333333" in capsys.readouterr().out

	def test_threshold(self, csum3_file: PathPlus, qutrits: QuditSystem):
		dump_circuit(csum3_file.parent / "empty.json", Circuit(qutrits))
		args = ["verify", str(csum3_file.parent / "empty.json"), str(csum3_file), "--verify-threshold", "0.9"]

		assert main(args) == EXIT_OK

	def test_compiled(self, csum3_file: PathPlus, capsys):
		out = csum3_file.parent / "out.json"
		main(["compile", str(csum3_file), "-o", str(out)])
		capsys.readouterr()

		assert main(["verify", str(out), str(csum3_file), "--json"]) == EXIT_OK

		printed = json.loads(capsys.readouterr().out)
		assert printed["passed"] is True
		assert printed["infidelity"] < 1e-9
		assert printed["counts"]["CEX"] > 0

	def test_invalid_circuit(self, csum3_file: PathPlus):
		(csum3_file.parent / "c.json").write_text("[]")
		assert main(["verify", str(csum3_file.parent / "c.json"), str(csum3_file)]) == EXIT_USAGE


def test_report(csum3_file: PathPlus, capsys):
	results = csum3_file.parent / "results"
	results.maybe_make()

	args = ["compile", str(csum3_file), "-o", str(csum3_file.parent / "out.json")]
	main([*args, "--report", str(results / "csum3.json")])
	capsys.readouterr()

	assert main(["report", str(results)]) == EXIT_OK
	lines = capsys.readouterr().out.splitlines()
	assert lines[0].startswith("System")
	assert lines[2].split()[:2] == ["csum3", '9']

	assert main(["report", str(results), "--json"]) == EXIT_OK
	assert json.loads(capsys.readouterr().out)[0]["system"] == "csum3"

	assert main(["report", str(csum3_file.parent / "missing")]) == EXIT_USAGE


def test_cache(tmp_pathplus: PathPlus, qutrits: QuditSystem, capsys):
	cache_dir = tmp_pathplus / "cache"
	_store_fake(cache_dir, qutrits, converged=True)

	assert main(["cache", "list", "--cache-dir", str(cache_dir)]) == EXIT_OK
	out = capsys.readouterr().out
	assert "cex_d3_ls_fixed.json" in out
	assert "native=ls" in out

	assert main(["cache", "clear", "--cache-dir", str(cache_dir)]) == EXIT_OK
	assert "Removed 1 cached solutions" in capsys.readouterr().out

	assert main(["cache", "list", "--cache-dir", str(cache_dir)]) == EXIT_OK
	assert capsys.readouterr().out == ''


class TestConfig:

	def test_defaults(self, capsys):
		assert main(["config"]) == EXIT_OK
		out = capsys.readouterr().out
		assert "native: cex\n" in out
		assert "restarts: 4\n" in out

	def test_overrides(self, tmp_pathplus: PathPlus, capsys):
		(tmp_pathplus / "settings.yml").write_lines(["native: ms", "restarts: 8"])

		assert main(["--config", str(tmp_pathplus / "settings.yml"), "config", "--restarts", '7']) == EXIT_OK
		out = capsys.readouterr().out
		assert "native: ms\n" in out
		assert "restarts: 7\n" in out

	def test_paper_budget_flag(self, capsys):
		assert main(["config", "--paper-budget"]) == EXIT_OK
		assert "paper_budget: true\n" in capsys.readouterr().out

	def test_schema(self, capsys):
		assert main(["config", "--schema"]) == EXIT_OK
		schema = json.loads(capsys.readouterr().out)
		assert schema["additionalProperties"] is False
		assert "target_infidelity" in schema["properties"]

	def test_invalid_file(self, tmp_pathplus: PathPlus, capsys):
		(tmp_pathplus / "settings.yml").write_text("colour: blue")

		assert main(["--config", str(tmp_pathplus / "settings.yml"), "config"]) == EXIT_USAGE
		assert "Additional properties are not allowed" in capsys.readouterr().err


def test_help_lists_settings(capsys):
	with pytest.raises(SystemExit):
		build_parser().parse_args(["compile", "--help"])

	out = capsys.readouterr().out
	assert "--target-infidelity" in out
	assert "annealing settings" in out


@pytest.mark.parametrize(
		"verbosity, quiet, expects",
		[
				(0, False, logging.WARNING),
				(1, False, logging.INFO),
				(3, False, logging.DEBUG),
				(2, True, logging.ERROR),
				]
		)
def test_configure_logging(verbosity: int, quiet: bool, expects: int):
	configure_logging(verbosity, quiet)
	configure_logging(verbosity, quiet)

	package = logging.getLogger("quditcomp")
	assert package.level == expects
	assert len(package.handlers) == 1
