import numpy as np
import pytest

from finitekp import ModelParams, units

ACCEPTANCE_LINES = []


@pytest.fixture
def ref_chain():
    """Chain with V = 0.5 eV, gamma = 0.1, L = 500 nm; call with N."""
    v = units.ev_to_model(0.5)
    return lambda n: ModelParams(v, 0.1, 500.0, n)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
