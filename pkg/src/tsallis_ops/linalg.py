"""Dense symmetric linear algebra: spectral calculus, congruences, Loewner order.

All routines accept a single ``(n, n)`` array or a stack ``(..., n, n)``;
stacks are what the quadrature code feeds in.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

DEFAULT_TOL = 1e-9
SYMMETRY_TOL = 1e-12


class NotPositiveDefiniteError(ValueError):
    pass


class AsymmetricMatrixError(ValueError):
    pass


class DomainError(ValueError):
    """A scalar function was asked for a value outside its domain."""


class EigenSolverError(RuntimeError):
    def __init__(self, message: str, condition: float):
        super().__init__(f"{message} (condition estimate {condition:.3e})")
        self.condition = condition


class SpectralDecomp(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _t(X: np.ndarray) -> np.ndarray:
    return np.swapaxes(X, -1, -2)


def symmetrize(X: np.ndarray) -> np.ndarray:
    return 0.5 * (X + _t(X))


def check_symmetric(X: np.ndarray, tol: float = SYMMETRY_TOL) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim < 2 or X.shape[-1] != X.shape[-2]:
        raise AsymmetricMatrixError(f"expected a square matrix, got shape {X.shape}")
    scale = max(1.0, float(np.max(np.abs(X)))) if X.size else 1.0
    err = float(np.max(np.abs(X - _t(X)))) if X.size else 0.0
    if err > tol * scale:
        raise AsymmetricMatrixError(f"matrix is not symmetric (max |X - X^T| = {err:.3e})")
    return X


def as_spd(A: np.ndarray) -> np.ndarray:
    """Validate ``A`` as symmetric positive definite and return it as float."""
    A = symmetrize(check_symmetric(A))
    lam = np.linalg.eigvalsh(A)
    if np.any(lam[..., 0] <= 0):
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite (smallest eigenvalue {np.min(lam[..., 0]):.3e})"
        )
    return A


def spectral_decompose(A: np.ndarray, require_pd: bool = True) -> SpectralDecomp:
    A = symmetrize(np.asarray(A, dtype=float))
    try:
        lam, Q = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigensolver did not converge: {exc}", _condition(A)) from exc
    if require_pd and np.any(lam[..., 0] <= 0):
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite (smallest eigenvalue {np.min(lam[..., 0]):.3e})"
        )
    return SpectralDecomp(lam, Q)


def _condition(A: np.ndarray) -> float:
    try:
        return float(np.max(np.linalg.cond(A)))
    except np.linalg.LinAlgError:
        return float("inf")


def from_spectrum(values: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Rebuild ``Q diag(values) Q^T`` (batched)."""
    return symmetrize((Q * values[..., None, :]) @ _t(Q))


def apply_scalar_function(
    A: np.ndarray | SpectralDecomp,
    f: Callable[[np.ndarray], np.ndarray],
) -> np.ndarray:
    """Functional calculus ``f(A)`` for symmetric ``A`` (or a precomputed decomposition).

    ``f`` is called once on the array of eigenvalues and must be vectorized.
    A non-finite value at any eigenvalue raises :class:`DomainError`.
    """
    dec = A if isinstance(A, SpectralDecomp) else spectral_decompose(A, require_pd=False)
    lam, Q = dec
    with np.errstate(all="ignore"):
        fl = np.asarray(f(lam), dtype=float)
    bad = ~np.isfinite(fl)
    if np.any(bad):
        raise DomainError(f"function undefined at eigenvalue {lam[bad].flat[0]!r}")
    return from_spectrum(fl, Q)


def matrix_power(A: np.ndarray | SpectralDecomp, p: float) -> np.ndarray:
    dec = A if isinstance(A, SpectralDecomp) else spectral_decompose(A)
    if p == 0:
        return np.broadcast_to(np.eye(dec.eigenvalues.shape[-1]), dec.eigenvectors.shape).copy()
    return apply_scalar_function(dec, lambda lam: lam**p)


def sqrt_and_inv_sqrt(A: np.ndarray | SpectralDecomp) -> tuple[np.ndarray, np.ndarray]:
    dec = A if isinstance(A, SpectralDecomp) else spectral_decompose(A)
    root = np.sqrt(dec.eigenvalues)
    return from_spectrum(root, dec.eigenvectors), from_spectrum(1.0 / root, dec.eigenvectors)


def congruence(S: np.ndarray, X: np.ndarray) -> np.ndarray:
    """``S X S`` for symmetric ``S``; symmetrized."""
    return symmetrize(S @ X @ S)


def congruence_sandwich(A: np.ndarray, X: np.ndarray) -> np.ndarray:
    """``A^{1/2} X A^{1/2}``."""
    root, _ = sqrt_and_inv_sqrt(A)
    return congruence(root, np.asarray(X, dtype=float))


def spectral_norm(X: np.ndarray) -> float:
    X = np.asarray(X, dtype=float)
    if X.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvalsh(symmetrize(X)))))


@dataclass(frozen=True)
class LoewnerVerdict:
    margin: float
    scale: float
    tol: float
    holds: bool

    @property
    def relative_margin(self) -> float:
        return self.margin / self.scale

    def to_dict(self) -> dict:
        return {"margin": self.margin, "scale": self.scale, "tol": self.tol, "holds": self.holds}


def loewner_leq(L: np.ndarray, R: np.ndarray, tol: float = DEFAULT_TOL) -> LoewnerVerdict:
    """Decide ``L <= R`` in the Loewner order.

    The margin is the smallest eigenvalue of ``R - L``; the inequality is
    accepted when ``margin >= -tol * max(1, ||L||_2, ||R||_2)``.
    """
    L = np.asarray(L, dtype=float)
    R = np.asarray(R, dtype=float)
    if L.shape != R.shape or L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError(f"dimension mismatch: {L.shape} vs {R.shape}")
    margin = float(np.linalg.eigvalsh(symmetrize(R - L))[0])
    scale = max(1.0, spectral_norm(L), spectral_norm(R))
    return LoewnerVerdict(margin, scale, tol, margin >= -tol * scale)
