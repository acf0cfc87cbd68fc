"""Concrete unital positive linear maps, stored as data so they serialize."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .generate import key_rng, random_orthogonal
from .linalg import symmetrize

KINDS = ("identity", "pinching", "unitary_mixture", "compression")
ISOMETRY_TOL = 1e-12


class MapSpecError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PositiveMap:
    """A unital positive linear map ``B(R^n) -> B(R^k)``.

    ``identity``: ``X``. ``pinching``: keeps the diagonal blocks of sizes
    ``blocks``. ``unitary_mixture``: ``sum_i w_i U_i^T X U_i``.
    ``compression``: ``V^T X V`` for an isometry ``V`` of shape ``(n, k)``.
    """

    kind: str
    dim: int
    blocks: tuple[int, ...] = ()
    weights: tuple[float, ...] = ()
    unitaries: tuple[np.ndarray, ...] = ()
    isometry: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MapSpecError(f"unknown map kind {self.kind!r}")
        n = self.dim
        if self.kind == "pinching":
            if not self.blocks or any(b < 1 for b in self.blocks) or sum(self.blocks) != n:
                raise MapSpecError(f"pinching blocks {self.blocks} must be positive and sum to {n}")
        elif self.kind == "unitary_mixture":
            w = np.asarray(self.weights, dtype=float)
            if len(w) == 0 or len(w) != len(self.unitaries):
                raise MapSpecError("unitary mixture needs one weight per orthogonal matrix")
            if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
                raise MapSpecError(f"weights {self.weights} are not a convex combination")
            for U in self.unitaries:
                U = np.asarray(U)
                if U.shape != (n, n) or np.linalg.norm(U.T @ U - np.eye(n)) > 1e-10:
                    raise MapSpecError("mixture matrices must be orthogonal n x n")
        elif self.kind == "compression":
            V = np.asarray(self.isometry, dtype=float)
            if V.ndim != 2 or V.shape[0] != n or not 1 <= V.shape[1] <= n:
                raise MapSpecError(f"isometry must have shape ({n}, k) with 1 <= k <= {n}")
            if np.linalg.norm(V.T @ V - np.eye(V.shape[1])) > ISOMETRY_TOL * 10:
                raise MapSpecError("compression matrix is not an isometry (V^T V != I)")
            object.__setattr__(self, "isometry", V)

    @property
    def out_dim(self) -> int:
        if self.kind == "compression":
            return self.isometry.shape[1]
        return self.dim

    def __call__(self, X: np.ndarray) -> np.ndarray:
        return apply_map(self, X)


def _block_mask(blocks: Sequence[int]) -> np.ndarray:
    n = sum(blocks)
    mask = np.zeros((n, n))
    start = 0
    for b in blocks:
        mask[start:start + b, start:start + b] = 1.0
        start += b
    return mask


def apply_map(phi: PositiveMap, X: np.ndarray) -> np.ndarray:
    """Evaluate ``phi`` on a symmetric matrix or a stack of them."""
    X = np.asarray(X, dtype=float)
    if X.shape[-2:] != (phi.dim, phi.dim):
        raise ValueError(f"map expects {phi.dim}x{phi.dim} input, got {X.shape[-2:]}")
    if phi.kind == "identity":
        return X.copy()
    if phi.kind == "pinching":
        return X * _block_mask(phi.blocks)
    if phi.kind == "unitary_mixture":
        out = np.zeros_like(X)
        for w, U in zip(phi.weights, phi.unitaries):
            out = out + w * (U.T @ X @ U)
        return symmetrize(out)
    V = phi.isometry
    return symmetrize(V.T @ X @ V)


def random_map(dim: int, kind: str, seed: int, index: int = 0) -> PositiveMap:
    """A random map of the given kind, deterministic in ``(seed, kind, index)``."""
    if dim < 2:
        raise MapSpecError("random maps need dim >= 2")
    rng = key_rng(seed, f"map:{kind}", index)
    if kind == "identity":
        return PositiveMap("identity", dim)
    if kind == "pinching":
        # random composition of dim into at least two parts
        cuts = np.sort(rng.choice(np.arange(1, dim), size=rng.integers(1, dim), replace=False))
        blocks = tuple(int(b) for b in np.diff(np.concatenate(([0], cuts, [dim]))))
        return PositiveMap("pinching", dim, blocks=blocks)
    if kind == "unitary_mixture":
        r = int(rng.integers(2, 5))
        w = rng.dirichlet(np.ones(r))
        w = w / w.sum()
        # exact normalization: absorb rounding into the largest weight
        w[np.argmax(w)] += 1.0 - w.sum()
        Us = tuple(random_orthogonal(dim, rng) for _ in range(r))
        return PositiveMap("unitary_mixture", dim, weights=tuple(float(x) for x in w), unitaries=Us)
    if kind == "compression":
        k = int(rng.integers(1, dim + 1))
        V, _ = np.linalg.qr(rng.standard_normal((dim, k)))
        return PositiveMap("compression", dim, isometry=V)
    raise MapSpecError(f"unknown map kind {kind!r}")
