import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tsallis_ops import scalar
from tsallis_ops.linalg import DomainError

mp.mp.dps = 50


def mp_xi(t, m, M):
    t, m, M = mp.mpf(t), mp.mpf(m), mp.mpf(M)
    u = (t - m) / (M - m)
    return 1 + 2**u * (t - m) * (M - t) * M ** (u - 1) / (M + m) ** (1 + u)


def mp_psi(t, m, M):
    t, m, M = mp.mpf(t), mp.mpf(m), mp.mpf(M)
    u = (t - m) / (M - m)
    return 1 + (t - m) * (M - t) * M ** (u - 1) / (2 * m ** (1 + u))


def mp_K(m, M, p):
    m, M, p = mp.mpf(m), mp.mpf(M), mp.mpf(p)
    num = m * M**p - M * m**p
    return num / ((p - 1) * (M - m)) * ((p - 1) * (M**p - m**p) / (p * num)) ** p


# pinned from mp_K(1, 2, 0.5) at 50 digits
K_1_2_HALF = 0.98517143100941604


def test_ln_v_examples():
    assert scalar.ln_v(1.0, 0.5) == 0.0
    assert scalar.ln_v(4.0, 0.5) == pytest.approx(2.0, rel=1e-15)
    assert scalar.ln_v(2.0, -1.0) == pytest.approx(0.5, rel=1e-15)
    assert scalar.ln_v(np.e, 0.0) == pytest.approx(1.0, rel=1e-15)


def test_ln_v_broadcasts_over_v():
    out = scalar.ln_v(np.array([4.0, 4.0, 4.0]), np.array([0.5, 0.0, -1.0]))
    np.testing.assert_allclose(out, [2.0, np.log(4.0), 0.75], rtol=1e-15)


def test_ln_v_small_v_is_continuous():
    x = np.geomspace(0.1, 10, 7)
    np.testing.assert_allclose(scalar.ln_v(x, 1e-9), np.log(x), rtol=1e-8)
    np.testing.assert_allclose(scalar.ln_v(x, 2e-8), np.log(x), rtol=1e-7)


def test_exp_v_examples():
    assert scalar.exp_v(2.0, 0.5) == pytest.approx(4.0, rel=1e-15)
    assert scalar.exp_v(0.0, -0.7) == 1.0
    assert scalar.exp_v(1.0, 0.0) == pytest.approx(np.e, rel=1e-15)


def test_exp_v_domain():
    with pytest.raises(DomainError, match="1 \\+ v\\*x"):
        scalar.exp_v(2.0, -0.5)
    with pytest.raises(DomainError):
        scalar.ln_v(0.0, 0.5)


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-3, 1e3), st.sampled_from([-1.0, -0.7, -0.3, 0.3, 0.5, 0.7, 1.0]))
def test_exp_v_inverts_ln_v(y, v):
    lv = scalar.ln_v(y, v)
    if 1 + v * lv > 0:
        assert scalar.exp_v(lv, v) == pytest.approx(y, rel=1e-12)


@pytest.mark.parametrize("t", [1.0, 1.25, 1.5, 1.9, 2.0])
def test_xi_psi_match_high_precision(t):
    assert scalar.xi(t, 1.0, 2.0) == pytest.approx(float(mp_xi(t, 1, 2)), rel=1e-14)
    assert scalar.psi(t, 1.0, 2.0) == pytest.approx(float(mp_psi(t, 1, 2)), rel=1e-14)


def test_xi_psi_midpoint_values():
    assert scalar.xi(1.5, 1.0, 2.0) == pytest.approx(1.048113, abs=1e-6)
    assert scalar.psi(1.5, 1.0, 2.0) == pytest.approx(1.088388, abs=1e-6)


def test_xi_psi_endpoints_are_one():
    for t in (1.0, 2.0):
        assert scalar.xi(t, 1.0, 2.0) == 1.0
        assert scalar.psi(t, 1.0, 2.0) == 1.0


def test_xi_is_m_v_at_window_ratio():
    m, M = 0.7, 3.1
    for t in np.linspace(m, M, 9):
        u = (t - m) / (M - m)
        assert scalar.xi(t, m, M) == pytest.approx(scalar.m_v(m / M, u), rel=1e-14)
        assert scalar.psi(t, m, M) == pytest.approx(scalar.M_v(m / M, u), rel=1e-14)


def test_reflected_xi_psi_bracket_the_young_gap():
    # with reflect=True, t = (1-u)M + u m is the arithmetic mean whose gap ln xi/ln psi must bracket
    m, M = 0.4, 5.0
    t = np.linspace(m, M, 101)
    gap = np.log(t) - np.log(m) * (M - t) / (M - m) - np.log(M) * (t - m) / (M - m)
    assert np.all(np.log(scalar.xi(t, m, M, reflect=True)) <= gap + 1e-14)
    assert np.all(gap <= np.log(scalar.psi(t, m, M, reflect=True)) + 1e-14)


def test_unreflected_xi_psi_miss_the_gap():
    m, M = 1.0, 2.0
    t = np.linspace(m, M, 101)
    gap = np.log(t) - np.log(m) * (M - t) / (M - m) - np.log(M) * (t - m) / (M - m)
    assert np.any(np.log(scalar.xi(t, m, M)) > gap + 1e-6)
    assert np.any(np.log(scalar.psi(t, m, M)) < gap - 1e-6)


def test_xi_psi_errors():
    with pytest.raises(DomainError):
        scalar.xi(3.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        scalar.psi(1.5, 2.0, 1.0)


def test_m_v_M_v_examples():
    assert scalar.m_v(0.5, 0.5) == pytest.approx(1.048113, abs=1e-6)
    assert scalar.M_v(0.5, 0.5) == pytest.approx(1.088388, abs=1e-6)
    assert scalar.m_v(1.0, 0.3) == scalar.M_v(1.0, 0.3) == 1.0


def test_kantorovich_examples():
    assert scalar.kantorovich(1.0) == 1.0
    assert scalar.kantorovich(4.0) == pytest.approx(1.5625)
    assert scalar.kantorovich(0.25) == pytest.approx(1.5625)


def test_generalized_kantorovich_high_precision():
    assert float(mp_K(1, 2, 0.5)) == pytest.approx(K_1_2_HALF, rel=1e-15)
    assert scalar.generalized_kantorovich(1.0, 2.0, 0.5) == pytest.approx(K_1_2_HALF, rel=1e-13)
    for p in (-1.0, -0.3, 0.7, 2.0, 10.0 / 3.0):
        assert scalar.generalized_kantorovich(1.3, 4.0, p) == pytest.approx(float(mp_K(1.3, 4.0, p)), rel=1e-12)


def test_generalized_kantorovich_tends_to_one_at_p_one():
    errs = [abs(scalar.generalized_kantorovich(1.0, 2.0, 1 - 10.0**-k) - 1) for k in range(4, 8)]
    assert errs[-1] < 1e-6
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert scalar.generalized_kantorovich(1.0, 2.0, 1.0) == 1.0


def test_generalized_kantorovich_bounds_power_mean_ratio():
    # K(m,M,p) bounds (sum w x^p) / (sum w x)^p for p > 1 (Mond-Pecaric); checked on random weights
    rng = np.random.default_rng(3)
    m, M, p = 1.2, 3.5, 1 / 0.3
    K = scalar.generalized_kantorovich(m, M, p)
    for _ in range(500):
        x = rng.uniform(m, M, 4)
        w = rng.dirichlet(np.ones(4))
        assert (w @ x**p) <= K * (w @ x) ** p * (1 + 1e-12)


def test_generalized_kantorovich_errors():
    with pytest.raises(DomainError):
        scalar.generalized_kantorovich(2.0, 1.0, 0.5)
    with pytest.raises(DomainError):
        scalar.generalized_kantorovich(1.0, 2.0, 0.0)


def test_g_remark_examples():
    assert scalar.g_remark(0.5, 0.0625) == pytest.approx(0.234375, rel=1e-15)
    x, val = scalar.g_remark_minimum(0.5)
    assert x == pytest.approx(0.0625)
    assert val == pytest.approx(0.234375)
    assert scalar.g_remark(1.0, 0.3) == pytest.approx(2 * 0.09)


def test_g_remark_minimum_domain():
    with pytest.raises(DomainError):
        scalar.g_remark_minimum(0.0)


def test_hermite_f_and_tangent_gap():
    assert scalar.hermite_f(1.0, -0.5) == 0.0
    assert scalar.hermite_f(2.0, -0.5) == pytest.approx(-0.75 * 2**-0.5, rel=1e-14)
    assert scalar.tangent_gap(1.0, 2.0, 0.5) == pytest.approx(3 - 2 * np.sqrt(2), rel=1e-13)
    assert scalar.tangent_gap(1.3, 1.3, 0.2) == pytest.approx(0.0, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 100), st.floats(0.01, 100), st.sampled_from([-1.0, -0.5, 0.3, 0.5, 1.0]))
def test_tangent_gap_nonnegative(s, t, v):
    assert scalar.tangent_gap(s, t, v) >= -1e-12 * max(1.0, abs(scalar.ln_v(t, v)), s ** (v - 1) * t)


def test_compare_fv_reference_values():
    assert scalar.compare_fv(0.1, 1.0, 0.5).f == pytest.approx(1.01096, abs=1e-4)
    assert scalar.compare_fv(0.1, 0.1, 0.5).f == pytest.approx(-0.81, abs=1e-2)


def test_compare_fv_equal_at_one():
    r = scalar.compare_fv(1.0, 1.0, 0.4)
    assert r.g == r.h == r.f == 0.0


def test_classical_entropies_trivial_cases():
    z = np.zeros(4)
    e = scalar.classical_entropies(z, z, 0.3)
    assert e.shannon == 0.0 and e.tsallis == 0.0
    s = np.array([0.2, 1.0, 3.0])
    e = scalar.classical_entropies(s, s, 0.3)
    assert e.relative == 0.0
    assert e.tsallis_relative == pytest.approx(0.0, abs=1e-15)


def test_classical_entropies_limit():
    s = np.random.default_rng(5).uniform(0, 3, 5)
    t = np.random.default_rng(6).uniform(0, 3, 5)
    e = scalar.classical_entropies(s, t, 1e-6)
    assert abs(e.tsallis - e.shannon) <= 1e-5
    assert abs(e.tsallis_relative - e.relative) <= 1e-5


def test_classical_entropies_errors():
    with pytest.raises(ValueError):
        scalar.classical_entropies([0.1, 0.2], [0.1], 0.5)
    with pytest.raises(DomainError):
        scalar.classical_entropies([-0.1], [0.1], 0.5)
