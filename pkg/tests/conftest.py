import mpmath
import numpy as np
import pytest
from scipy.special import erfcx


def ml_half(z):
    """Independent oracle: E_{1/2}(z) = exp(z^2) erfc(-z)."""
    return float(erfcx(-np.asarray(z, dtype=float)))


def ml_mp(alpha, z, beta=1, dps=60):
    """High-precision series oracle evaluated in mpmath."""
    with mpmath.workdps(dps):
        a, b, zz = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(z)
        return float(mpmath.nsum(lambda k: zz**k * mpmath.rgamma(a * k + b), [0, mpmath.inf]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
