from importlib import resources
from pathlib import Path

import pytest

from wsnet import load_manifest

DATA = Path(str(resources.files("wsnet") / "data"))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def micro():
    return load_manifest(DATA / "micro.json")


@pytest.fixture(scope="session")
def minicorpus():
    return load_manifest(DATA / "minicorpus.json")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
