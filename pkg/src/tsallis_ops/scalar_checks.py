"""Deterministic grid checks of the scalar inequalities and sign-change searches.

Every check returns a :class:`GridCheck`; none of them raise on violation,
so callers decide whether a check is asserted or merely reported.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import scalar

GRID_TOL = 1e-12


@dataclass
class GridCheck:
    name: str
    points: int
    min_margin: float
    holds: bool
    worst: dict = field(default_factory=dict)


def _chain(name: str, terms: list[np.ndarray], coords: dict[str, np.ndarray], tol: float = GRID_TOL) -> GridCheck:
    """Check ``terms[0] <= terms[1] <= ...`` pointwise with relative slack ``tol``."""
    margins = []
    for lo, hi in zip(terms, terms[1:]):
        scale = np.maximum(1.0, np.maximum(np.abs(lo), np.abs(hi)))
        margins.append((hi - lo) / scale)
    margin = np.min(np.stack(margins), axis=0)
    k = int(np.argmin(margin))
    worst = {key: float(val.flat[k]) for key, val in coords.items()}
    return GridCheck(name, int(margin.size), float(margin.flat[k]), bool(margin.min() >= -tol), worst)


def _mesh(*axes: np.ndarray) -> list[np.ndarray]:
    return [a.ravel() for a in np.meshgrid(*axes, indexing="ij")]


def refined_young(n: int = 22) -> GridCheck:
    """``m_v(b/a) a^{1-v} b^v <= (1-v)a + vb <= M_v(b/a) a^{1-v} b^v`` for ``0 < b <= a``, ``v`` in ``[0,1]``."""
    a, r, v = _mesh(np.geomspace(0.01, 100.0, n), np.linspace(0.01, 1.0, n), np.linspace(0.0, 1.0, n))
    b = a * r
    x = b / a
    geo = a ** (1 - v) * b**v
    terms = [scalar.m_v(x, v) * geo, (1 - v) * a + v * b, scalar.M_v(x, v) * geo]
    return _chain("refined Young with m_v/M_v", terms, {"a": a, "b": b, "v": v})


def young_chain(n: int = 100) -> GridCheck:
    """Five-term chain between ``1 - 1/x`` and ``x - 1`` for ``0 < x <= 1``, ``0 < v <= 1``; plus ``x - 1 <= 0``."""
    x, v = _mesh(np.linspace(1e-3, 1.0, n), np.linspace(0.01, 1.0, n))
    coef = (1 - v) / v + x
    terms = [1 - 1 / x,
             coef / scalar.M_v(x, v) - 1 / v,
             scalar.ln_v(x, v),
             coef / scalar.m_v(x, v) - 1 / v,
             x - 1,
             np.zeros_like(x)]
    check = _chain("five-term chain", terms, {"x": x, "v": v}, tol=GRID_TOL / 0.01)
    return check


def negative_v_sandwich(n: int = 100) -> GridCheck:
    """``M_v(x) <= ((1-v) + vx)/x^v <= m_v(x)`` for ``0 < x <= 1``, ``v`` in ``[-1, 0]``."""
    x, v = _mesh(np.linspace(1e-3, 1.0, n), np.linspace(-1.0, 0.0, n))
    terms = [scalar.M_v(x, v), ((1 - v) + v * x) / x**v, scalar.m_v(x, v)]
    return _chain("M_v <= ((1-v)+vx)/x^v <= m_v, v in [-1,0]", terms, {"x": x, "v": v})


def negative_v_monotone(n: int = 100) -> GridCheck:
    """``m_v`` and ``M_v`` nondecreasing in ``x`` on ``(0, 1]`` for ``v`` in ``[-1, 0]``."""
    xs = np.linspace(1e-3, 1.0, n)
    vs = np.linspace(-1.0, 0.0, n)
    X, V = np.meshgrid(xs, vs, indexing="ij")
    margins = []
    for f in (scalar.m_v, scalar.M_v):
        vals = f(X, V)
        d = np.diff(vals, axis=0) / np.maximum(1.0, np.abs(vals[1:]))
        margins.append(d)
    margin = np.minimum(*margins)
    k = np.unravel_index(np.argmin(margin), margin.shape)
    return GridCheck("m_v, M_v increasing in x, v in [-1,0]", X.size, float(margin[k]),
                     bool(margin.min() >= -GRID_TOL), {"x": float(xs[k[0]]), "v": float(vs[k[1]])})


def negative_v_bounds(n: int = 100) -> GridCheck:
    """``0 < M_v(x) <= m_v(x) <= 1`` for ``0 < x <= 1``, ``v`` in ``[-1, 0]``."""
    x, v = _mesh(np.linspace(1e-3, 1.0, n), np.linspace(-1.0, 0.0, n))
    Mv = scalar.M_v(x, v)
    check = _chain("0 < M_v <= m_v <= 1, v in [-1,0]",
                   [np.zeros_like(x), Mv, scalar.m_v(x, v), np.ones_like(x)], {"x": x, "v": v})
    # strict positivity of M_v
    if np.any(Mv <= 0):
        check.holds = False
    return check


def reversed_young(n: int = 100) -> GridCheck:
    """``(1-v) + vx <= x^v`` for ``x > 0``, ``v`` in ``[-1, 0)``."""
    x, v = _mesh(np.geomspace(1e-3, 1e3, n), np.linspace(-1.0, -0.01, n))
    return _chain("(1-v)+vx <= x^v, v in [-1,0)", [(1 - v) + v * x, x**v], {"x": x, "v": v})


def kantorovich_young(n: int = 100) -> GridCheck:
    """``K^r(x) x^v <= (1-v) + vx <= K^R(x) x^v`` with ``r = min(v, 1-v)``, ``R = max(v, 1-v)``."""
    x, v = _mesh(np.geomspace(1e-3, 1e3, n), np.linspace(0.0, 1.0, n))
    r, R = np.minimum(v, 1 - v), np.maximum(v, 1 - v)
    K = scalar.kantorovich(x)
    return _chain("K^r x^v <= (1-v)+vx <= K^R x^v", [K**r * x**v, (1 - v) + v * x, K**R * x**v],
                  {"x": x, "v": v})


def _expv_hermite(t, v, midpoint_low: bool, label: str) -> GridCheck:
    ev = np.exp(np.log1p(v * t) / v)
    mid = t * np.exp(np.log1p(v * t / 2) / (v / 2)) ** ((1 - v) / 2)
    trap = 0.5 * t * (1 + ev ** (1 - v))
    terms = [mid, ev - 1, trap] if midpoint_low else [trap, ev - 1, mid]
    return _chain(label, terms, {"t": t, "v": v})


def expv_lemma(sign: int, n: int = 100, t_max: float = 50.0) -> GridCheck:
    """Trapezoid/midpoint bounds on ``exp_v(t) - 1`` as stated for the sign of ``v``.

    ``sign < 0``: ``t exp_{v/2}(t)^{(1-v)/2} <= exp_v(t) - 1 <= (t/2)(1 + exp_v(t)^{1-v})``, ``-1 <= v < 0``.
    ``sign > 0``: the reverse chain, ``0 < v <= 1``.
    """
    if sign < 0:
        t, v = _mesh(np.linspace(1e-3, 1.0, n), np.linspace(-1.0, -0.01, n))
        t = t * 0.999 / np.abs(v)  # stay inside 1 + v t > 0
        return _expv_hermite(t, v, True, "exp_v lemma, -1 <= v < 0")
    t, v = _mesh(np.linspace(1e-3, t_max, n), np.linspace(0.01, 1.0, n))
    return _expv_hermite(t, v, False, "exp_v lemma, 0 < v <= 1")


def expv_hermite_by_convexity(v_lo: float, v_hi: float, n: int = 100, t_max: float = 50.0) -> GridCheck:
    """The same two bounds, oriented by the convexity of ``(1 + v s)**((1-v)/v)``.

    That integrand is convex for ``v <= 1/2`` (midpoint below, trapezoid above)
    and concave for ``1/2 <= v <= 1`` (orientation reversed). ``[v_lo, v_hi]``
    must lie within ``(0, 1/2]`` or within ``[1/2, 1]``.
    """
    if not (0 < v_lo <= v_hi <= 0.5 or 0.5 <= v_lo <= v_hi <= 1):
        raise ValueError("v range must sit on one side of 1/2 within (0, 1]")
    t, v = _mesh(np.linspace(1e-3, t_max, n), np.linspace(v_lo, v_hi, n))
    convex = v_hi <= 0.5
    return _expv_hermite(t, v, convex, f"exp_v Hermite-Hadamard, v in [{v_lo:g},{v_hi:g}]")


def g_remark_nonnegative(n: int = 100) -> GridCheck:
    x, v = _mesh(np.linspace(1e-3, 1.0, n), np.linspace(0.01, 1.0, n))
    return _chain("g(v,x) >= 0", [np.zeros_like(x), scalar.g_remark(v, x)], {"x": x, "v": v})


def g_remark_minimum_error(v: float, points: int = 1_000_000) -> tuple[float, float]:
    """Locate the minimum of ``g(v, .)`` on ``(0, 1]`` numerically and compare with the closed form.

    The minimum value is read off a log-spaced grid. The location is found
    by bracketing the sign change of ``g'`` on the same grid and refining with
    Brent's method, since ``g`` is too flat near its minimizer for an argmin
    to resolve the location to 1e-10.
    Returns ``(|x_num - x*|, |g(x_num) - g*|, min_grid g - g*)``.
    """
    from scipy.optimize import brentq

    if not 0 < v < 1:
        raise ValueError("interior minimum exists only for 0 < v < 1")
    xs = np.geomspace(1e-300, 1.0, points)
    g = scalar.g_remark(v, xs)
    k = int(np.argmin(g))

    def slope(x):
        return 2 * (v + 1) * x**v - (1 - v) * (1 + v)

    j = int(np.searchsorted(slope(xs) > 0, True))
    x_num = brentq(slope, xs[j - 1], xs[j], xtol=1e-300, rtol=1e-15)
    x_star, g_star = scalar.g_remark_minimum(v)
    value_err = abs(float(scalar.g_remark(v, x_num)) - g_star)
    grid_gap = float(g[k]) - g_star  # a grid can only sit above the true minimum
    return abs(x_num - x_star), value_err, grid_gap


def expv_inverts_lnv(n: int = 2000) -> GridCheck:
    """``exp_v(ln_v(y)) == y`` for ``y`` on a log grid in ``[1e-3, 1e3]``."""
    ys, vs = _mesh(np.geomspace(1e-3, 1e3, n // 20), np.concatenate([np.linspace(-1, -0.05, 10),
                                                                       np.linspace(0.05, 1, 10)]))
    errs = []
    for y, v in zip(ys, vs):
        lv = scalar.ln_v(y, v)
        if 1 + v * lv <= 0:
            continue
        errs.append(abs(scalar.exp_v(lv, v) - y) / y)
    err = float(max(errs))
    return GridCheck("exp_v(ln_v(y)) = y", len(errs), -err, bool(err <= 1e-12))


def lnv_below_expv(sign: int, n: int = 100) -> GridCheck:
    """``ln_v(t) <= exp_v(t)`` for ``0 < v <= 1``; for ``v < 0`` the claimed reverse ``exp_v(t) <= ln_v(t)``."""
    if sign > 0:
        t, v = _mesh(np.geomspace(1e-3, 50.0, n), np.linspace(0.01, 1.0, n))
        return _chain("ln_v <= exp_v, 0 < v <= 1", [scalar.ln_v(t, v), np.exp(np.log1p(v * t) / v)],
                      {"t": t, "v": v})
    vs = np.linspace(-1.0, -0.01, n)
    vs = vs[np.abs(vs + 0.5) > 1e-9]
    t, v = _mesh(np.linspace(1e-3, 0.999, n), vs)
    t = t / np.abs(v)
    return _chain("exp_v <= ln_v, -1 <= v < 0", [np.exp(np.log1p(v * t) / v), scalar.ln_v(t, v)],
                  {"t": t, "v": v})


def scalar_grid_suite() -> list[GridCheck]:
    """The asserted scalar grid checks, in a fixed order."""
    return [
        young_chain(),
        negative_v_sandwich(),
        negative_v_monotone(),
        negative_v_bounds(),
        refined_young(),
        kantorovich_young(),
        expv_lemma(-1),
        expv_lemma(+1),
        g_remark_nonnegative(),
        reversed_young(),
        expv_inverts_lnv(),
        lnv_below_expv(+1),
    ]


# --------------------------------------------------------------------------
# sign-change searches

@dataclass
class NonOrderingEvidence:
    comparison: str
    found: bool
    positive: dict | None
    negative: dict | None
    points: int


def _witness(diff: np.ndarray, coords: dict[str, np.ndarray], label: str) -> NonOrderingEvidence:
    pos = np.flatnonzero(diff > 0)
    neg = np.flatnonzero(diff < 0)

    def at(idx):
        if idx.size == 0:
            return None
        k = int(idx[np.argmax(np.abs(diff[idx]))])
        return {**{c: float(a[k]) for c, a in coords.items()}, "difference": float(diff[k])}

    p, q = at(pos), at(neg)
    return NonOrderingEvidence(label, p is not None and q is not None, p, q, int(diff.size))


def search_nonordering(comparison: str, grid: dict | None = None) -> list[NonOrderingEvidence]:
    """Look for both signs of a difference that has no fixed order.

    ``FURUICHI_36_VS_TANGENT``: ``f_v(s,t) = g_v(s,t) - h_v(s,t)`` over ``s, t, v``.
    ``DRAGOMIR_VS_XI_PSI``: ``K^r(x) - m_v(x)`` and ``K^r(x) - M_v(x)`` over ``(x, v)`` in ``(0,1)^2``,
    followed by ``K^R(x) - M_v(x)`` (the two upper factors) on the same grid.
    On ``0 < x <= 1`` one has ``K^r <= M_v`` identically, so the second
    record comes back "not found" unless the grid reaches ``x > 1``.
    ``grid`` overrides the axes (arrays keyed by coordinate name).
    """
    grid = grid or {}
    if comparison == "FURUICHI_36_VS_TANGENT":
        s, t, v = _mesh(np.asarray(grid.get("s", np.geomspace(0.05, 20, 60))),
                        np.asarray(grid.get("t", np.geomspace(0.05, 20, 60))),
                        np.asarray(grid.get("v", [-1, -0.5, 0.25, 0.5, 0.75, 1.0])))
        f = scalar.compare_fv(s, t, v).f
        return [_witness(np.asarray(f), {"s": s, "t": t, "v": v}, "g_v - h_v")]
    if comparison == "DRAGOMIR_VS_XI_PSI":
        x, v = _mesh(np.asarray(grid.get("x", np.linspace(0.001, 0.999, 1000))),
                     np.asarray(grid.get("v", np.linspace(0.001, 0.999, 1000))))
        Kr = scalar.kantorovich(x) ** np.minimum(v, 1 - v)
        coords = {"x": x, "v": v}
        KR = scalar.kantorovich(x) ** np.maximum(v, 1 - v)
        Mv = scalar.M_v(x, v)
        return [_witness(Kr - scalar.m_v(x, v), coords, "K^r - m_v"),
                _witness(Kr - Mv, coords, "K^r - M_v"),
                _witness(KR - Mv, coords, "K^R - M_v")]
    raise ValueError(f"unknown comparison {comparison!r}")
