"""Deterministic random instances: SPD matrices, certified pairs, ratio-type triples.

Randomness is counter-based: every draw comes from a Philox stream keyed by
``(seed, tag, index)``, so an instance can be regenerated in isolation.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import from_spectrum, sqrt_and_inv_sqrt, symmetrize

CONSTRAINTS = ("none", "certified-window", "exp-domain", "ratio-K")


class InfeasibleSpecError(ValueError):
    pass


def key_rng(seed: int, tag: str, index: int = 0) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=int(seed) & (2**64 - 1),
                                 spawn_key=(zlib.crc32(tag.encode()), int(index)))
    return np.random.Generator(np.random.Philox(seq))


def random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


@dataclass(frozen=True)
class GenSpec:
    dim: int
    cond_max: float = 1e4
    window: tuple[float, float] | None = None
    seed: int = 0
    constraint: str = "none"
    v: float | None = None
    tag: str = "spd"
    index: int = 0

    def __post_init__(self):
        if self.dim < 2:
            raise InfeasibleSpecError(f"dim must be >= 2, got {self.dim}")
        if self.cond_max < 1:
            raise InfeasibleSpecError(f"cond_max must be >= 1, got {self.cond_max}")
        if self.constraint not in CONSTRAINTS:
            raise InfeasibleSpecError(f"unknown constraint {self.constraint!r}")
        if self.window is not None:
            m, M = self.window
            if not 0 < m < M:
                raise InfeasibleSpecError(f"window needs 0 < m < M, got {self.window}")

    def rng(self, purpose: str) -> np.random.Generator:
        return key_rng(self.seed, f"{self.tag}:{purpose}", self.index)


def random_spd(spec: GenSpec) -> np.ndarray:
    """``Q diag(lam) Q^T`` with ``lam`` log-uniform on ``[1, cond_max]``."""
    n = spec.dim
    if spec.cond_max == 1:
        return np.eye(n)
    rng = spec.rng("spd")
    lam = np.exp(rng.uniform(0.0, np.log(spec.cond_max), size=n))
    return from_spectrum(lam, random_orthogonal(n, rng))


def window_spectrum(n: int, m: float, M: float, rng: np.random.Generator) -> np.ndarray:
    """Log-uniform points of ``[m, M]``; the lowest is pinned to ``m`` and the
    highest to ``M``, each with probability ``1/n``."""
    w = np.sort(np.exp(rng.uniform(np.log(m), np.log(M), size=n)))
    if rng.random() < 1.0 / n:
        w[0] = m
    if rng.random() < 1.0 / n:
        w[-1] = M
    return np.clip(w, m, M)


def random_certified_pair(spec: GenSpec):
    """A pair with ``B = A^{1/2} W A^{1/2}``, ``Sp(W)`` inside the window; certificate re-checked."""
    from .entropies import OperatorPair

    if spec.window is None:
        raise InfeasibleSpecError("random_certified_pair needs a window")
    m, M = spec.window
    if spec.constraint == "exp-domain" and spec.v is not None and spec.v < 0 and not M < 1 / abs(spec.v):
        raise InfeasibleSpecError(f"window top {M} violates exp_v domain bound 1/|v| = {1 / abs(spec.v)}")
    A = random_spd(spec)
    rng = spec.rng("window")
    W = from_spectrum(window_spectrum(spec.dim, m, M, rng), random_orthogonal(spec.dim, rng))
    root, _ = sqrt_and_inv_sqrt(A)
    B = symmetrize(root @ W @ root)
    return OperatorPair(A, B, window=(m, M))


def ratio_k_x_window(v: float, m: float, M: float) -> tuple[float, float]:
    """Window for ``X = A^{-1/2} B A^{-1/2}`` such that ``Sp(I + vX)`` lies in ``[m, M]``."""
    if v > 0:
        if not m > 1:
            raise InfeasibleSpecError(f"ratio instances with v > 0 need m > 1, got m={m}")
        return (m - 1.0) / v, (M - 1.0) / v
    if v < 0:
        if not M < 1:
            raise InfeasibleSpecError(f"ratio instances with v < 0 need M < 1, got M={M}")
        return (1.0 - M) / -v, (1.0 - m) / -v
    raise InfeasibleSpecError("ratio instances need v != 0")


class RatioKInstance(NamedTuple):
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray


def random_ratio_k_instance(spec: GenSpec) -> RatioKInstance:
    """``(A, B, C)`` with ``Sp(I + v A^{-1/2} B A^{-1/2})`` in ``[m, M]`` and ``B <= C``.

    For ``v < 0`` the perturbation keeps ``A^{-1/2} C A^{-1/2}`` below ``1/|v|``.
    """
    from .entropies import OperatorPair

    if spec.window is None or spec.v is None:
        raise InfeasibleSpecError("ratio instances need v and a window")
    v = spec.v
    xw = ratio_k_x_window(v, *spec.window)
    pair = random_certified_pair(GenSpec(spec.dim, spec.cond_max, xw, spec.seed,
                                         "certified-window", v, spec.tag, spec.index))
    rng = spec.rng("perturb")
    n = spec.dim
    if rng.random() < 0.1:
        return RatioKInstance(pair.A, pair.B, pair.B.copy())
    rank = int(rng.integers(1, n + 1))
    G = rng.standard_normal((n, rank))
    Q = G @ G.T
    Q /= np.linalg.eigvalsh(Q)[-1]
    if v < 0:
        room = 1.0 / -v - pair.frame.x_eigenvalues[-1]
        Q *= 0.9 * room * rng.random()
    else:
        Q *= xw[1] * rng.random()
    C = symmetrize(pair.B + pair.frame.root @ Q @ pair.frame.root)
    if v < 0:
        C_pair = OperatorPair(pair.A, C)
        if not C_pair.frame.x_eigenvalues[-1] < 1.0 / -v:
            raise InfeasibleSpecError("perturbed C left the exp_v domain")
    return RatioKInstance(pair.A, pair.B, C)
