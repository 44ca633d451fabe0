# stdlib
import math
import os
from typing import Any, Mapping, MutableMapping

# 3rd party
import pytest
from domdf_python_tools.paths import PathPlus
from ruamel.yaml import YAML

# this package
from quditcomp.files import FileFormatError
from quditcomp.parser import Parser
from quditcomp.settings import (
		SettingsParser,
		all_settings,
		dump_settings,
		native,
		restarts,
		target_infidelity,
		theta_mode
		)


class DemoParser(Parser):

	settings = [native, restarts, theta_mode]

	def visit_restarts(self, raw_settings: Mapping[str, Any]) -> int:
		return restarts.get(raw_settings) * 2

	def custom_parsing(
			self,
			raw_settings: Mapping[str, Any],
			parsed_settings: MutableMapping[str, Any],
			) -> MutableMapping[str, Any]:
		if parsed_settings["native"] == "cex" and parsed_settings["theta_mode"] == "free":
			raise ValueError("'theta_mode' has no effect with the CEX gate")
		return parsed_settings


def test_defaults():
	settings = SettingsParser().run()

	assert list(settings) == [s.__name__ for s in all_settings]
	assert settings["native"] == "cex"
	assert settings["restarts"] == 4
	assert settings["native_angle"] == math.pi
	assert settings["paper_budget"] is False


def test_file(tmp_pathplus: PathPlus):
	(tmp_pathplus / "settings.yml").write_lines([
			"native: ms",
			"restarts: 8",
			"target_infidelity: 1.0e-4",
			"theta_mode: free",
			"paper_budget: true",
			])

	settings = SettingsParser().run(tmp_pathplus / "settings.yml")

	assert settings["native"] == "ms"
	assert settings["restarts"] == 8
	assert settings["target_infidelity"] == 1e-4
	assert settings["theta_mode"] == "free"
	assert settings["paper_budget"] is True
	assert settings["seed"] == 0


def test_overrides(tmp_pathplus: PathPlus):
	(tmp_pathplus / "settings.yml").write_lines(["native: ms", "restarts: 8"])

	settings = SettingsParser().run(
			tmp_pathplus / "settings.yml",
			{"restarts": 2, "native": None, "seed": 5},
			)

	assert settings["restarts"] == 2
	assert settings["native"] == "ms"
	assert settings["seed"] == 5


def test_bad_override():
	with pytest.raises(ValueError, match="'restarts' must be at least 1"):
		SettingsParser().run(overrides={"restarts": 0})


def test_empty_file(tmp_pathplus: PathPlus):
	(tmp_pathplus / "settings.yml").write_text('')
	assert SettingsParser().load(tmp_pathplus / "settings.yml") == {}


def test_missing_file(tmp_pathplus: PathPlus):
	with pytest.raises(FileNotFoundError):
		SettingsParser().run(tmp_pathplus / "missing.yml")


def test_invalid_yaml(tmp_pathplus: PathPlus):
	(tmp_pathplus / "settings.yml").write_text("native: [ms\n")

	with pytest.raises(FileFormatError, match="invalid YAML"):
		SettingsParser().load(tmp_pathplus / "settings.yml")


@pytest.mark.parametrize(
		"content, match",
		[
				pytest.param("colour: blue", "Additional properties are not allowed", id="unknown-key"),
				pytest.param("restarts: many", "'many' is not of type 'integer'", id="type"),
				pytest.param("restarts: 0", "0 is less than the minimum of 1", id="minimum"),
				pytest.param("native: cnot", "'cnot' is not one of", id="enum"),
				pytest.param("- native", "is not of type 'object'", id="not-a-mapping"),
				]
		)
def test_schema_violation(tmp_pathplus: PathPlus, content: str, match: str):
	(tmp_pathplus / "settings.yml").write_text(content)

	with pytest.raises(FileFormatError, match=match) as e:
		SettingsParser().load(tmp_pathplus / "settings.yml")

	assert e.value.filename == str(tmp_pathplus / "settings.yml")


def test_allow_unknown_keys(tmp_pathplus: PathPlus):
	(tmp_pathplus / "settings.yml").write_lines(["colour: blue", "restarts: 3"])

	parser = SettingsParser(allow_unknown_keys=True)
	assert parser.schema["additionalProperties"] is True
	assert parser.run(tmp_pathplus / "settings.yml")["restarts"] == 3


def test_cache_dir_expanded():
	settings = SettingsParser().run(overrides={"cache_dir": "~/solutions"})
	assert settings["cache_dir"] == os.path.expanduser("~/solutions")
	assert not settings["cache_dir"].startswith('~')


def test_schema():
	schema = SettingsParser().schema

	assert schema["type"] == "object"
	assert schema["additionalProperties"] is False
	assert schema["required"] == []
	assert set(schema["properties"]) == {s.__name__ for s in all_settings}
	assert schema["properties"]["restarts"] == {
			"type": "integer",
			"minimum": 1,
			"maximum": 1000,
			"description": "Independent annealing runs per layer count, each seeded with seed plus its index.",
			}
	assert schema["properties"]["target_infidelity"] == target_infidelity.schema_entry["properties"]["target_infidelity"]


def test_dump_settings(tmp_pathplus: PathPlus):
	settings = SettingsParser().run(overrides={"native": "ls", "restarts": 9})
	(tmp_pathplus / "settings.yml").write_text(dump_settings(settings))

	assert YAML(typ="safe", pure=True).load((tmp_pathplus / "settings.yml").read_text())["native"] == "ls"
	assert SettingsParser().run(tmp_pathplus / "settings.yml") == settings


def test_visit_method():
	settings = DemoParser().run(overrides={"restarts": 3})

	assert settings == {"native": "cex", "restarts": 6, "theta_mode": "fixed"}


def test_custom_parsing():
	assert DemoParser().run(overrides={"native": "ms", "theta_mode": "free"})["theta_mode"] == "free"

	with pytest.raises(ValueError, match="'theta_mode' has no effect"):
		DemoParser().run(overrides={"theta_mode": "free"})
