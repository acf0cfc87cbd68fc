import numpy as np
import pytest

from tsallis_ops import scalar, scalar_checks as sc


@pytest.mark.parametrize("check", [
    sc.young_chain, sc.negative_v_sandwich, sc.negative_v_monotone, sc.refined_young,
    sc.kantorovich_young, sc.g_remark_nonnegative, sc.reversed_young, sc.expv_inverts_lnv,
])
def test_grid_check_holds(check):
    result = check()
    assert result.points >= 2000
    assert result.holds, result


def test_grids_reach_ten_thousand_points():
    for r in sc.scalar_grid_suite():
        if r.name != "exp_v(ln_v(y)) = y":
            assert r.points >= 10_000, r.name


def test_expv_lemma_negative_branch_holds():
    assert sc.expv_lemma(-1).holds


def test_expv_bounds_follow_convexity_of_integrand():
    assert sc.expv_hermite_by_convexity(0.01, 0.5).holds
    assert sc.expv_hermite_by_convexity(0.5, 1.0).holds
    with pytest.raises(ValueError):
        sc.expv_hermite_by_convexity(0.3, 0.7)


def test_expv_positive_branch_fails_below_one_half():
    r = sc.expv_lemma(+1)
    assert not r.holds
    assert r.worst["v"] < 0.5
    # explicit point: v = 0.3, t = 5 has midpoint < exp_v - 1 < trapezoid
    v, t = 0.3, 5.0
    ev = scalar.exp_v(t, v)
    mid = t * scalar.exp_v(t, v / 2) ** ((1 - v) / 2)
    trap = 0.5 * t * (1 + ev ** (1 - v))
    assert mid < ev - 1 < trap


def test_M_v_turns_negative_for_v_between_minus_one_and_zero():
    assert scalar.M_v(0.01, -0.5) < 0
    x = np.linspace(1e-3, 1, 1000)
    assert np.all(scalar.M_v(x, -1.0) > 0)
    r = sc.negative_v_bounds()
    assert not r.holds and -1 < r.worst["v"] < 0


def test_reverse_chain_for_negative_v_fails():
    assert not sc.lnv_below_expv(-1).holds
    assert sc.lnv_below_expv(+1).holds


@pytest.mark.parametrize("v", [0.05, 0.2, 0.5, 0.8, 0.99])
def test_g_minimum_matches_closed_form(v):
    loc, val, gap = sc.g_remark_minimum_error(v, points=200_000)
    assert loc <= 1e-10 and val <= 1e-10
    assert gap >= -1e-14


def test_furuichi_vs_tangent_has_both_signs():
    (ev,) = sc.search_nonordering("FURUICHI_36_VS_TANGENT")
    assert ev.found and ev.positive["difference"] > 0 > ev.negative["difference"]


def test_furuichi_vs_tangent_at_half():
    (ev,) = sc.search_nonordering("FURUICHI_36_VS_TANGENT", {"s": [0.1], "t": [0.1, 1.0], "v": [0.5]})
    assert ev.found
    assert ev.positive["t"] == 1.0 and ev.negative["t"] == pytest.approx(0.1)


def test_dragomir_comparison_records():
    grid = {"x": np.linspace(0.001, 0.999, 300), "v": np.linspace(0.001, 0.999, 300)}
    lower, upper, uppers = sc.search_nonordering("DRAGOMIR_VS_XI_PSI", grid)
    assert lower.found
    assert uppers.found
    # K^r <= M_v on 0 < x <= 1: no positive witness exists there
    assert not upper.found and upper.positive is None


def test_k_r_and_M_v_change_order_beyond_one():
    grid = {"x": np.geomspace(1.001, 1e3, 300), "v": np.linspace(0.3, 0.999, 50)}
    _, upper, _ = sc.search_nonordering("DRAGOMIR_VS_XI_PSI", grid)
    assert upper.positive is not None


def test_degenerate_grid_reports_not_found():
    records = sc.search_nonordering("DRAGOMIR_VS_XI_PSI", {"x": [0.5], "v": [0.5]})
    assert not any(r.found for r in records)


def test_unknown_comparison():
    with pytest.raises(ValueError):
        sc.search_nonordering("NOPE")
