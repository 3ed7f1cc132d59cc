import numpy as np
import pytest
from hypothesis import settings

from clifford_malliavin.grid import TimeGrid

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def g4():
    return TimeGrid(4, 1.0)


@pytest.fixture
def g6():
    return TimeGrid(6, 1.0)


# acceptance criteria report here; the lines are echoed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
