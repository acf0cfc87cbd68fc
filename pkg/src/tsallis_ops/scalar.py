"""Scalar functions: deformed logarithm/exponential and the bound functions built on them.

Every function is vectorized over numpy arrays. Deformation parameters
with ``|v| < V_ZERO`` are treated as the ``v -> 0`` limit.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .linalg import DomainError

V_ZERO = 1e-8
KANTOROVICH_GUARD = 1e-8


def _arr(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _out(x: np.ndarray):
    return float(x) if np.ndim(x) == 0 else x


def check_v(v: float, allow_zero: bool = False) -> float:
    v = float(v)
    if not -1.0 <= v <= 1.0 or (v == 0.0 and not allow_zero):
        raise DomainError(f"deformation parameter v={v} outside [-1,0) U (0,1]")
    return v


def ln_v(x, v):
    """Deformed logarithm ``(x**v - 1) / v``; natural log when ``v == 0``. Broadcasts over ``v``."""
    x = _arr(x)
    if np.any(~(x > 0)):
        raise DomainError(f"ln_v requires x > 0, got min {np.min(x)!r}")
    lx = np.log(x)
    v = _arr(v)
    if np.all(np.abs(v) < V_ZERO):
        return _out(lx + 0.0 * v)
    small = np.abs(v) < V_ZERO
    safe = np.where(small, 1.0, v)
    return _out(np.where(small, lx, np.expm1(safe * lx) / safe))


def exp_v(x, v: float):
    """Deformed exponential ``(1 + v x)**(1/v)``, the inverse of :func:`ln_v`.

    Requires ``1 + v x > 0``; for ``v < 0`` this bounds ``x < 1/|v|``.
    """
    x = _arr(x)
    if abs(v) < V_ZERO:
        return _out(np.exp(x))
    base = 1.0 + v * x
    if np.any(~(base > 0)):
        bad = x[~(base > 0)].flat[0] if x.ndim else float(x)
        raise DomainError(f"exp_v with v={v} needs 1 + v*x > 0; x={bad!r} violates it")
    return _out(np.exp(np.log1p(v * x) / v))


def _check_window(m: float, M: float) -> None:
    if not 0 < m < M:
        raise DomainError(f"spectral window needs 0 < m < M, got m={m}, M={M}")


def _check_in_window(t: np.ndarray, m: float, M: float) -> None:
    if np.any((t < m) | (t > M)):
        raise DomainError(f"t must lie in [{m}, {M}]")


def xi(t, m: float, M: float, reflect: bool = False):
    """Lower refined-Young factor on ``[m, M]``.

    With ``reflect=False`` this is the closed form
    ``1 + 2**u (t-m)(M-t) M**(u-1) / (M+m)**(1+u)`` with ``u = (t-m)/(M-m)``.
    That form equals ``m_u(m/M)``. The weight for which ``t`` is the
    arithmetic mean of ``M`` and ``m`` is ``1-u``; ``reflect=True`` evaluates
    at ``m + M - t``, which switches to that weight.
    """
    _check_window(m, M)
    t = _arr(t)
    _check_in_window(t, m, M)
    if reflect:
        t = m + M - t
    u = (t - m) / (M - m)
    val = 1.0 + 2.0**u * (t - m) * (M - t) * M ** (u - 1.0) / (M + m) ** (1.0 + u)
    return _out(val)


def psi(t, m: float, M: float, reflect: bool = False):
    """Upper refined-Young factor on ``[m, M]``; see :func:`xi` for ``reflect``."""
    _check_window(m, M)
    t = _arr(t)
    _check_in_window(t, m, M)
    if reflect:
        t = m + M - t
    u = (t - m) / (M - m)
    val = 1.0 + (t - m) * (M - t) * M ** (u - 1.0) / (2.0 * m ** (1.0 + u))
    return _out(val)


def m_v(x, v: float):
    x = _arr(x)
    if np.any(~(x > 0)):
        raise DomainError("m_v requires x > 0")
    return _out(1.0 + 2.0**v * v * (1.0 - v) * (x - 1.0) ** 2 / (x + 1.0) ** (v + 1.0))


def M_v(x, v: float):
    x = _arr(x)
    if np.any(~(x > 0)):
        raise DomainError("M_v requires x > 0")
    return _out(1.0 + v * (1.0 - v) * (x - 1.0) ** 2 / (2.0 * x ** (v + 1.0)))


def kantorovich(x):
    x = _arr(x)
    if np.any(~(x > 0)):
        raise DomainError("kantorovich requires x > 0")
    return _out((x + 1.0) ** 2 / (4.0 * x))


def generalized_kantorovich(m: float, M: float, p: float) -> float:
    """Generalized Kantorovich constant ``K(m, M, p)`` for the power ``t**p``.

    Returns 1 inside a guard band around ``p = 1``, where the closed form is 0/0.
    """
    _check_window(m, M)
    if p == 0:
        raise DomainError("generalized_kantorovich undefined at p = 0")
    if abs(p - 1.0) < KANTOROVICH_GUARD:
        return 1.0
    num = m * M**p - M * m**p
    head = num / ((p - 1.0) * (M - m))
    inner = (p - 1.0) * (M**p - m**p) / (p * num)
    return float(head * inner**p)


def g_remark(v: float, x):
    """``2 x**(v+1) - (1-v)((1+v) x - v)``, nonnegative for ``0 < v, x <= 1``."""
    x = _arr(x)
    return _out(2.0 * x ** (v + 1.0) - (1.0 - v) * ((1.0 + v) * x - v))


def g_remark_minimum(v: float) -> tuple[float, float]:
    """Closed-form minimizer and minimum of :func:`g_remark` over ``x > 0``."""
    if not 0 < v <= 1:
        raise DomainError("g_remark_minimum requires 0 < v <= 1")
    x_star = ((1.0 - v) / 2.0) ** (1.0 / v)
    return x_star, v * (1.0 - v) * (1.0 - x_star)


def hermite_f(t, v: float):
    """``v (1-v) (t-1) / t**(v+1)``; convex in ``t`` for ``v`` in ``[-1, 0]``."""
    t = _arr(t)
    if np.any(~(t > 0)):
        raise DomainError("hermite_f requires t > 0")
    return _out(v * (1.0 - v) * (t - 1.0) / t ** (v + 1.0))


def tangent_gap(s, t, v: float):
    """Gap between the tangent of ``ln_v`` at ``s`` and ``ln_v`` at ``t`` (>= 0)."""
    s = _arr(s)
    t = _arr(t)
    return _out(_arr(ln_v(s, v)) + s ** (v - 1.0) * (t - s) - _arr(ln_v(t, v)))


class FvComparison(NamedTuple):
    g: float
    h: float
    f: float


def compare_fv(s, t, v: float) -> FvComparison:
    """``g_v(s,t) = ln_v s + s**(v-1) t - s**v``, ``h_v(s,t) = s t - 1 - (ln_v s) t**v``, ``f = g - h``."""
    s = _arr(s)
    t = _arr(t)
    lns = _arr(ln_v(s, v))
    g = lns + s ** (v - 1.0) * t - s**v
    h = s * t - 1.0 - lns * t**v
    return FvComparison(_out(g), _out(h), _out(g - h))


class ExpEntropies(NamedTuple):
    shannon: float
    tsallis: float
    relative: float
    tsallis_relative: float


def classical_entropies(s, t, v: float) -> ExpEntropies:
    """Shannon/Tsallis entropies and their relative versions in exponential coordinates.

    ``s`` and ``t`` parametrize distributions by ``1/p_j = exp_v(s_j)`` (or
    ``p_j = e^{-s_j}`` in the Shannon case).
    """
    s = _arr(s)
    t = _arr(t)
    if s.shape != t.shape:
        raise ValueError(f"shape mismatch: {s.shape} vs {t.shape}")
    if np.any(s < 0) or np.any(t < 0):
        raise DomainError("entries of s and t must be >= 0")
    es = np.exp(-s)
    ps = _arr(exp_v(-s, -v))
    pt = _arr(exp_v(-t, -v))
    shannon = float(np.sum(s * es))
    tsallis = float(np.sum(s * ps))
    relative = float(np.sum((t - s) * es))
    tsallis_relative = float(np.sum(((pt / ps) ** v * t - s) * ps))
    return ExpEntropies(shannon, tsallis, relative, tsallis_relative)
