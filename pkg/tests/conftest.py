import numpy as np
import pytest
from hypothesis import strategies as st

from tsallis_ops.generate import GenSpec, random_orthogonal, random_spd


def spd(n: int, cond: float = 100.0, seed: int = 0, index: int = 0) -> np.ndarray:
    return random_spd(GenSpec(n, cond, seed=seed, index=index))


@st.composite
def spd_matrices(draw, min_dim=2, max_dim=8, max_cond=1e3):
    n = draw(st.integers(min_dim, max_dim))
    seed = draw(st.integers(0, 2**31 - 1))
    rng = np.random.default_rng(seed)
    lam = np.exp(rng.uniform(0.0, np.log(max_cond), n))
    Q = random_orthogonal(n, rng)
    return (Q * lam) @ Q.T


@st.composite
def spd_pairs(draw, min_dim=2, max_dim=6, max_cond=1e3):
    A = draw(spd_matrices(min_dim, max_dim, max_cond))
    n = A.shape[0]
    seed = draw(st.integers(0, 2**31 - 1))
    rng = np.random.default_rng(seed)
    lam = np.exp(rng.uniform(-np.log(max_cond) / 2, np.log(max_cond) / 2, n))
    Q = random_orthogonal(n, rng)
    return A, (Q * lam) @ Q.T


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


# one PASS/FAIL line per acceptance criterion, printed after the run
_CRITERIA: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n = mark.args[0]
    if rep.failed:
        _CRITERIA[n] = "FAIL"
    elif rep.when == "call":
        _CRITERIA.setdefault(n, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {n}: {_CRITERIA[n]}")
