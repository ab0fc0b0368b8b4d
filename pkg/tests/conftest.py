import os
from pathlib import Path

import numpy as np
import pytest

DATA = Path(__file__).parent / "data"

# Path to the real two-mode actor-movie network in Pajek format; dataset tests skip without it.
DATASET_ENV = "RSL_ACTOR_MOVIE_NET"

_ACCEPTANCE_LINES = []


def dataset_path():
    path = os.environ.get(DATASET_ENV)
    if path and Path(path).exists():
        return Path(path)
    return None


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
