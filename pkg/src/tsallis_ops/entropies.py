"""Operator means and relative operator entropies of positive definite pairs."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from . import scalar
from .linalg import (
    DomainError,
    SpectralDecomp,
    apply_scalar_function,
    as_spd,
    congruence,
    spectral_decompose,
    sqrt_and_inv_sqrt,
    symmetrize,
)

CERTIFICATE_TOL = 1e-10


class CertificateError(ValueError):
    """A pair does not satisfy its claimed window ``mA <= B <= MA``."""


@dataclass(frozen=True)
class OperatorPair:
    """Positive definite ``(A, B)`` with an optional window ``mA <= B <= MA``.

    The window is re-certified on construction against the spectrum of
    ``A^{-1/2} B A^{-1/2}``.
    """

    A: np.ndarray
    B: np.ndarray
    window: tuple[float, float] | None = None
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        B = np.asarray(self.B, dtype=float)
        if self.validate:
            A, B = as_spd(A), as_spd(B)
        if A.shape != B.shape:
            raise ValueError(f"A and B differ in shape: {A.shape} vs {B.shape}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if self.window is not None:
            m, M = map(float, self.window)
            if not 0 < m < M:
                raise CertificateError(f"window needs 0 < m < M, got ({m}, {M})")
            object.__setattr__(self, "window", (m, M))
            lam = self.frame.x_eigenvalues
            slack = CERTIFICATE_TOL * max(1.0, M)
            if lam[0] < m - slack or lam[-1] > M + slack:
                raise CertificateError(
                    f"spectrum of A^-1/2 B A^-1/2 is [{lam[0]:.12g}, {lam[-1]:.12g}], "
                    f"outside the claimed window [{m}, {M}]"
                )

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @cached_property
    def frame(self) -> "Perspective":
        return Perspective(self.A, self.B)


class Perspective:
    """Cached congruence frame of a pair: ``A^{1/2}``, ``A^{-1/2}`` and ``X = A^{-1/2} B A^{-1/2}``.

    ``perspective(f)`` returns ``A^{1/2} f(X) A^{1/2}`` from one eigen-decomposition of ``X``.
    Works on stacks of pairs as well.
    """

    def __init__(self, A: np.ndarray, B: np.ndarray):
        self.A = np.asarray(A, dtype=float)
        self.B = np.asarray(B, dtype=float)
        self.root, self.inv_root = sqrt_and_inv_sqrt(spectral_decompose(self.A))
        self.X = congruence(self.inv_root, self.B)
        self.x_decomp: SpectralDecomp = spectral_decompose(self.X)

    @property
    def x_eigenvalues(self) -> np.ndarray:
        return self.x_decomp.eigenvalues

    def sandwich(self, Y: np.ndarray) -> np.ndarray:
        return congruence(self.root, Y)

    def perspective(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        return self.sandwich(apply_scalar_function(self.x_decomp, f))

    def power(self, p: float) -> np.ndarray:
        if p == 0:
            return self.A.copy()
        return self.perspective(lambda lam: lam**p)


def _frame(p) -> Perspective:
    if isinstance(p, OperatorPair):
        return p.frame
    if isinstance(p, Perspective):
        return p
    A, B = p
    return Perspective(A, B)


def natural_mean(p, v: float) -> np.ndarray:
    """``A^{1/2} (A^{-1/2} B A^{-1/2})^v A^{1/2}`` for any real ``v``.

    For ``v`` in ``[0, 1]`` this is the weighted geometric mean.
    """
    return _frame(p).power(float(v))


def geometric_mean(A: np.ndarray, B: np.ndarray, v: float) -> np.ndarray:
    """Weighted geometric mean of (possibly stacked) positive definite matrices."""
    return Perspective(A, B).power(float(v))


def relative_entropy(p) -> np.ndarray:
    return _frame(p).perspective(np.log)


def tsallis_entropy(p, v: float) -> np.ndarray:
    v = scalar.check_v(v, allow_zero=True)
    return _frame(p).perspective(lambda lam: scalar.ln_v(lam, v))


def tsallis_entropy_from_means(p, v: float) -> np.ndarray:
    """``(A natural_v B - A) / v``; slower and used only as a cross-check."""
    v = scalar.check_v(v)
    fr = _frame(p)
    return symmetrize((fr.power(v) - fr.A) / v)


def check_exp_domain(p, v: float) -> None:
    if v < 0:
        top = float(np.max(_frame(p).x_eigenvalues))
        bound = 1.0 / abs(v)
        if not top < bound:
            raise DomainError(
                f"exp_v with v={v} needs lambda_max(A^-1/2 B A^-1/2) < 1/|v| = {bound:.6g}; "
                f"got {top:.6g}"
            )


def exp_entropy(p, v: float) -> np.ndarray:
    v = scalar.check_v(v)
    check_exp_domain(p, v)
    return _frame(p).perspective(lambda lam: scalar.exp_v(lam, v))


def exp_entropy_limit(p) -> np.ndarray:
    return _frame(p).perspective(np.exp)


__all__ = [
    "CertificateError",
    "OperatorPair",
    "Perspective",
    "natural_mean",
    "geometric_mean",
    "relative_entropy",
    "tsallis_entropy",
    "tsallis_entropy_from_means",
    "exp_entropy",
    "exp_entropy_limit",
    "check_exp_domain",
]
