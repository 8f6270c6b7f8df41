import sys
import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_pd(rng, n, cond_floor=0.1):
    """Random Hermitian positive definite matrix."""
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return A @ A.conj().T / n + cond_floor * np.eye(n)


def random_pd_toeplitz_column(rng, n):
    """First column of a random Hermitian PD Toeplitz matrix (lags of a sum of cisoids plus noise)."""
    k = np.arange(n)
    p = rng.uniform(0.1, 1.0, 4)
    f = rng.uniform(-0.5, 0.5, 4)
    rho = rng.uniform(0.5, 0.999, 4)
    r = sum(pi * ri ** (k**2) * np.exp(2j * np.pi * fi * k) for pi, fi, ri in zip(p, f, rho))
    r = r.astype(complex)
    r[0] += rng.uniform(0.01, 0.5)
    return r


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[cid])
