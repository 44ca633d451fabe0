# stdlib
import logging
from typing import Iterator, List

# 3rd party
import pytest
from domdf_python_tools.paths import PathPlus

# this package
from quditcomp.circuit import build_named
from quditcomp.files import dump_unitary
from quditcomp.gates import QuditSystem
from quditcomp.settings import CACHE_ENVVAR

pytest_plugins = ("coincidence", )


def pytest_addoption(parser):
	parser.addoption("--run-slow", action="store_true", default=False, help="Run the variational searches.")


def pytest_collection_modifyitems(config, items: List[pytest.Item]):
	if config.getoption("--run-slow"):
		return

	skip_slow = pytest.mark.skip(reason="needs --run-slow")
	for item in items:
		if "slow" in item.keywords:
			item.add_marker(skip_slow)


@pytest.fixture()
def qubits() -> QuditSystem:
	return QuditSystem(2, 2)


@pytest.fixture()
def qutrits() -> QuditSystem:
	return QuditSystem(3, 3)


@pytest.fixture()
def csum3_file(tmp_pathplus: PathPlus, qutrits: QuditSystem) -> PathPlus:
	path = tmp_pathplus / "csum3.json"
	dump_unitary(path, build_named("CSUM", qutrits), qutrits)
	return path


@pytest.fixture(autouse=True)
def no_cache_envvar(monkeypatch):
	monkeypatch.delenv(CACHE_ENVVAR, raising=False)


@pytest.fixture()
def restore_logging() -> Iterator[None]:
	yield

	package = logging.getLogger("quditcomp")
	for handler in list(package.handlers):
		package.removeHandler(handler)
	package.setLevel(logging.NOTSET)
