import math

import numpy as np
import pytest

from squidtransfer import build_spectrum

PEAK_TAU = 1.5 * math.pi


@pytest.fixture(scope="session")
def peak_spectrum():
    return build_spectrum(0.86)


def random_density(rng, rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def bell_minus():
    """(|--> - |++>) / sqrt(2) in the |-->, |-+>, |+->, |++> basis."""
    v = np.array([1, 0, 0, -1]) / math.sqrt(2)
    return np.outer(v, v.conj()).astype(complex)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(RESULTS, key=lambda c: c.criterion):
        terminalreporter.write_line(c.line())
