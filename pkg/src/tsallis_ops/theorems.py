"""Operator inequalities as named, parameterized Loewner-chain predicates.

Each suite turns an :class:`InequalityCase` into an ordered list of labeled
symmetric matrices ``T_0 <= T_1 <= ... <= T_k``; :func:`check_case` checks
every consecutive link with :func:`loewner_leq`.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import scalar
from .entropies import (
    CertificateError,
    OperatorPair,
    Perspective,
    check_exp_domain,
    geometric_mean,
)
from .generate import GenSpec, key_rng, random_certified_pair, random_ratio_k_instance, ratio_k_x_window
from .linalg import DEFAULT_TOL, DomainError, LoewnerVerdict, loewner_leq, spectral_norm, symmetrize
from .maps import PositiveMap, apply_map, random_map

MAP_KINDS = ("pinching", "unitary_mixture", "compression")
DEFAULT_V_GRID = (-1.0, -0.7, -0.3, 0.3, 0.5, 0.7, 1.0)
DEFAULT_QUAD_NODES = 32
QUAD_AGREEMENT = 1e-10


class PreconditionError(ValueError):
    """The case does not meet the hypotheses of its inequality (not a violation)."""


class QuadratureError(RuntimeError):
    pass


@dataclass
class InequalityCase:
    id: str
    pair: OperatorPair
    v: float | None = None
    s: float | None = None
    t: float | None = None
    mu: float | None = None
    phi: PositiveMap | None = None
    C: np.ndarray | None = None
    quad_nodes: int = DEFAULT_QUAD_NODES
    tol: float = DEFAULT_TOL
    seed: int | None = None
    index: int | None = None

    @property
    def dim(self) -> int:
        return self.pair.dim


@dataclass
class Verdict:
    id: str
    labels: list[str]
    links: list[LoewnerVerdict]
    overall_holds: bool
    metadata: dict = field(default_factory=dict)

    @property
    def min_relative_margin(self) -> float:
        return min(lv.relative_margin for lv in self.links)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "labels": self.labels,
            "links": [lv.to_dict() for lv in self.links],
            "overall_holds": self.overall_holds,
            "metadata": self.metadata,
        }


# --------------------------------------------------------------------------
# shared term builders

def _frame(case: InequalityCase) -> Perspective:
    return case.pair.frame


def _window(case: InequalityCase) -> tuple[float, float]:
    return case.pair.window


def _phi(case: InequalityCase, X: np.ndarray) -> np.ndarray:
    return apply_map(case.phi, X)


def _mapped_pair(case: InequalityCase) -> Perspective:
    return Perspective(_phi(case, case.pair.A), _phi(case, case.pair.B))


def _lnv(v: float | None):
    if v is None:
        return np.log
    return lambda lam: scalar.ln_v(lam, v)


def chord(case: InequalityCase, v: float | None) -> np.ndarray:
    """Chord of ``ln_v`` over the window, lifted: ``ln_v(m)(MA-B)/(M-m) + ln_v(M)(B-mA)/(M-m)``."""
    A, B = case.pair.A, case.pair.B
    m, M = _window(case)
    f = _lnv(v)
    return symmetrize(f(m) / (M - m) * (M * A - B) + f(M) / (M - m) * (B - m * A))


def chord_gap_direct(case: InequalityCase) -> np.ndarray:
    """``A^{1/2} [ln X - chord(X)] A^{1/2}`` by functional calculus; cross-check path."""
    m, M = _window(case)
    return _frame(case).perspective(
        lambda lam: np.log(lam) - np.log(m) * (M - lam) / (M - m) - np.log(M) * (lam - m) / (M - m)
    )


def integral_middle_term(pair: OperatorPair, v: float, phi: PositiveMap, nodes: int = DEFAULT_QUAD_NODES) -> np.ndarray:
    """Gauss-Legendre value of ``(int_0^1 Phi(C #_mu A) #_v Phi(C #_mu B) dmu - Phi(A)) / v``, ``C = A #_v B``."""
    if not 0 < v <= 1:
        raise PreconditionError(f"integral middle term needs v in (0, 1], got {v}")
    if nodes < 2:
        raise PreconditionError("quadrature needs at least 2 nodes")
    x, w = np.polynomial.legendre.leggauss(nodes)
    mu = 0.5 * (x + 1.0)
    w = 0.5 * w
    C = pair.frame.power(v)

    def path(target: np.ndarray) -> np.ndarray:
        fr = Perspective(C, target)
        lam, Q = fr.x_decomp
        powers = lam[None, :] ** mu[:, None]
        inner = symmetrize((Q * powers[:, None, :]) @ Q.T)
        return fr.sandwich(inner)

    left = apply_map(phi, path(pair.A))
    right = apply_map(phi, path(pair.B))
    integrand = geometric_mean(left, right, v)
    integral = symmetrize(np.tensordot(w, integrand, axes=1))
    return symmetrize((integral - apply_map(phi, pair.A)) / v)


# --------------------------------------------------------------------------
# term lists, one per suite

Terms = list[tuple[str, np.ndarray]]


def _known_bounds(case: InequalityCase, v: float | None) -> Terms:
    fr = _frame(case)
    A, B = case.pair.A, case.pair.B
    mid = fr.perspective(_lnv(v))
    return [("A - A B^-1 A", symmetrize(A - fr.power(-1.0))),
            ("S(A|B)" if v is None else "T_v(A|B)", mid),
            ("B - A", symmetrize(B - A))]


def terms_known_bounds_s(case):
    return _known_bounds(case, None)


def terms_known_bounds_t(case):
    return _known_bounds(case, case.v)


def terms_chord_t(case):
    return [("chord of ln_v", chord(case, case.v)), ("T_v(A|B)", _frame(case).perspective(_lnv(case.v)))]


def terms_chord_s(case):
    return [("chord of ln", chord(case, None)), ("S(A|B)", _frame(case).perspective(np.log))]


def _refined_young(case: InequalityCase, reflect: bool) -> Terms:
    fr = _frame(case)
    m, M = _window(case)
    n = case.dim
    middle = symmetrize(fr.perspective(np.log) - chord(case, None))
    lower = fr.perspective(lambda lam: np.log(scalar.xi(np.clip(lam, m, M), m, M, reflect=reflect)))
    upper = fr.perspective(lambda lam: np.log(scalar.psi(np.clip(lam, m, M), m, M, reflect=reflect)))
    return [("0", np.zeros((n, n))), ("A^1/2 ln xi(X) A^1/2", lower),
            ("S(A|B) - chord", middle), ("A^1/2 ln psi(X) A^1/2", upper)]


def terms_xi_psi(case):
    return _refined_young(case, reflect=True)


def terms_xi_psi_unreflected(case):
    return _refined_young(case, reflect=False)


def terms_dragomir(case):
    fr = _frame(case)
    A = case.pair.A
    m, M = _window(case)
    n = case.dim
    lnK = np.log(scalar.kantorovich(M / m))
    centre = 0.5 * (M + m)
    dev = fr.perspective(lambda lam: np.abs(lam - centre))
    middle = symmetrize(fr.perspective(np.log) - chord(case, None))
    return [("0", np.zeros((n, n))),
            ("ln K (A/2 - |.|/(M-m))", symmetrize(lnK * (0.5 * A - dev / (M - m)))),
            ("S(A|B) - chord", middle),
            ("ln K (A/2 + |.|/(M-m))", symmetrize(lnK * (0.5 * A + dev / (M - m))))]


def terms_tangent(case):
    fr = _frame(case)
    A, B = case.pair.A, case.pair.B
    v, s, t = case.v, case.s, case.t
    lower = scalar.ln_v(t, v) * A + fr.power(v) - t * fr.power(v - 1.0)
    upper = scalar.ln_v(s, v) * A + s ** (v - 1.0) * (B - s * A)
    return [("(ln_v t)A + A nat_v B - t A nat_(v-1) B", symmetrize(lower)),
            ("T_v(A|B)", fr.perspective(_lnv(v))),
            ("(ln_v s)A + s^(v-1)(B - sA)", symmetrize(upper))]


def terms_alpha_bounds(case):
    fr = _frame(case)
    A, B = case.pair.A, case.pair.B
    v, s = case.v, case.s  # s = 1/alpha
    gm = fr.power(v)
    lns = scalar.ln_v(s, v)
    lower = gm - s * fr.power(v - 1.0) + lns * A
    upper = s * B - A - lns * gm
    return [("A #_v B - (1/a) A nat_(v-1) B + ln_v(1/a) A", symmetrize(lower)),
            ("T_v(A|B)", fr.perspective(_lnv(v))),
            ("(1/a) B - A - ln_v(1/a) A #_v B", symmetrize(upper))]


def terms_mono(case):
    return [("Phi(T_v(A|B))", _phi(case, _frame(case).perspective(_lnv(case.v)))),
            ("T_v(Phi(A)|Phi(B))", _mapped_pair(case).perspective(_lnv(case.v)))]


def terms_mono_refined(case):
    middle = integral_middle_term(case.pair, case.v, case.phi, case.quad_nodes)
    return [("Phi(T_v(A|B))", _phi(case, _frame(case).perspective(_lnv(case.v)))),
            ("quadrature middle term", middle),
            ("T_v(Phi(A)|Phi(B))", _mapped_pair(case).perspective(_lnv(case.v)))]


def terms_ando(case):
    fr = _frame(case)
    v, mu = case.v, case.mu
    C = fr.power(v)
    left = _phi(case, Perspective(C, case.pair.A).power(mu))
    right = _phi(case, Perspective(C, case.pair.B).power(mu))
    return [("Phi(A #_v B)", _phi(case, C)),
            ("Phi(C #_mu A) #_v Phi(C #_mu B)", geometric_mean(left, right, v)),
            ("Phi(A) #_v Phi(B)", _mapped_pair(case).power(v))]


def terms_complementary(case):
    fr = _frame(case)
    A, B = case.pair.A, case.pair.B
    v, s, t = case.v, case.s, case.t
    rhs = (_phi(case, fr.perspective(_lnv(v)))
           + (scalar.ln_v(s, v) - scalar.ln_v(t, v)) * _phi(case, A)
           + _phi(case, t * fr.power(v - 1.0) - fr.power(v))
           + s ** (v - 1.0) * _phi(case, B - s * A))
    return [("T_v(Phi(A)|Phi(B))", _mapped_pair(case).perspective(_lnv(v))),
            ("complementary bound", symmetrize(rhs))]


def _complementary_limit(case, minus: bool) -> Terms:
    fr = _frame(case)
    A, B = case.pair.A, case.pair.B
    s, t = case.s, case.t
    base = _phi(case, fr.perspective(np.log)) + (np.log(s / t) - 2.0) * _phi(case, A)
    if minus:
        rhs = base + _phi(case, t * fr.power(-1.0) - B / s)
    else:
        rhs = base + t * _phi(case, fr.power(-1.0)) + _phi(case, B) / s
    return [("S(Phi(A)|Phi(B))", _mapped_pair(case).perspective(np.log)),
            ("limit complementary bound", symmetrize(rhs))]


def terms_complementary_limit(case):
    return _complementary_limit(case, minus=False)


def terms_complementary_limit_minus(case):
    return _complementary_limit(case, minus=True)


def terms_expv_operator(case):
    fr = _frame(case)
    A = case.pair.A
    v = case.v
    check_exp_domain(case.pair, v)
    trapezoid = symmetrize(A + 0.5 * fr.perspective(lambda lam: lam + lam * scalar.exp_v(lam, v) ** (1.0 - v)))
    midpoint = symmetrize(A + fr.perspective(lambda lam: lam * scalar.exp_v(lam, v / 2.0) ** ((1.0 - v) / 2.0)))
    ev = fr.perspective(lambda lam: scalar.exp_v(lam, v))
    if v > 0:
        return [("trapezoid bound", trapezoid), ("E_v(A|B)", ev), ("midpoint bound", midpoint)]
    return [("midpoint bound", midpoint), ("E_v(A|B)", ev), ("trapezoid bound", trapezoid)]


def _four(case) -> dict[str, np.ndarray]:
    fr = _frame(case)
    check_exp_domain(case.pair, case.v)
    return {"S(A|B)": fr.perspective(np.log),
            "T_v(A|B)": fr.perspective(_lnv(case.v)),
            "E_v(A|B)": fr.perspective(lambda lam: scalar.exp_v(lam, case.v)),
            "E(A|B)": fr.perspective(np.exp)}


def terms_four_chain_pos(case):
    d = _four(case)
    return [(k, d[k]) for k in ("S(A|B)", "T_v(A|B)", "E_v(A|B)", "E(A|B)")]


def terms_four_chain_neg(case):
    d = _four(case)
    return [(k, d[k]) for k in ("E(A|B)", "E_v(A|B)", "T_v(A|B)", "S(A|B)")]


def ratio_k_window(case: InequalityCase) -> tuple[float, float]:
    """Spectral window of ``I + vX`` implied by the pair's certified window for ``X``."""
    mx, Mx = _window(case)
    v = case.v
    lo, hi = 1.0 + v * mx, 1.0 + v * Mx
    return (lo, hi) if v > 0 else (hi, lo)


def _ratio(case, exponent_v: bool) -> Terms:
    v = case.v
    m, M = ratio_k_window(case)
    K = scalar.generalized_kantorovich(m, M, v if exponent_v else 1.0 / v)
    pc = OperatorPair(case.pair.A, case.C, validate=False)
    check_exp_domain(case.pair, v)
    check_exp_domain(pc, v)
    lhs = case.pair.frame.perspective(lambda lam: scalar.exp_v(lam, v))
    rhs = pc.frame.perspective(lambda lam: scalar.exp_v(lam, v))
    return [("E_v(A|B)", lhs), ("K(m,M) E_v(A|C)", K * rhs)]


def terms_ratio_k(case):
    return _ratio(case, exponent_v=False)


def terms_ratio_k_exponent_v(case):
    return _ratio(case, exponent_v=True)


# --------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class Suite:
    id: str
    statement: str
    terms: Callable[[InequalityCase], Terms]
    needs: frozenset
    asserted: str  # v-domain asserted: "none" (no v), "all", "positive", "negative", or "" (findings only)
    finding: str = ""
    extra_finding_v: tuple[float, ...] = ()
    instances: str = "general"  # window policy: general | exp | ratio

    def v_domain(self, v: float | None) -> str | None:
        """Return "asserted", "finding" or None for a grid value."""
        for role, dom in (("asserted", self.asserted), ("finding", self.finding)):
            if _in_domain(v, dom):
                return role
        if v is not None and v in self.extra_finding_v:
            return "finding"
        return None


def _in_domain(v, dom: str) -> bool:
    if dom == "none":
        return v is None
    if v is None or not dom:
        return False
    return {"all": -1 <= v <= 1 and v != 0, "positive": 0 < v <= 1, "negative": -1 <= v < 0}[dom]


_W, _V, _ST, _PHI = frozenset({"window"}), frozenset({"v"}), frozenset({"s", "t"}), frozenset({"phi"})

SUITES: dict[str, Suite] = {s.id: s for s in [
    Suite("KNOWN_BOUNDS_S", "A - A B^-1 A <= S(A|B) <= B - A", terms_known_bounds_s, frozenset(), "none"),
    Suite("KNOWN_BOUNDS_T", "A - A B^-1 A <= T_v(A|B) <= B - A", terms_known_bounds_t, _V, "all"),
    Suite("CHORD_T", "ln_v chord over [m,M] lifted to (A,B) <= T_v(A|B) when mA <= B <= MA",
          terms_chord_t, _W | _V, "all"),
    Suite("CHORD_S", "ln chord over [m,M] lifted to (A,B) <= S(A|B) when mA <= B <= MA",
          terms_chord_s, _W, "none"),
    Suite("XI_PSI_SANDWICH", "0 <= A^1/2 ln xi(X) A^1/2 <= S(A|B) - chord <= A^1/2 ln psi(X) A^1/2 "
          "(xi, psi at the weight making t the arithmetic mean)", terms_xi_psi, _W, "none"),
    Suite("XI_PSI_UNREFLECTED", "same sandwich with xi, psi at the unreflected weight u = (t-m)/(M-m)",
          terms_xi_psi_unreflected, _W, "", finding="none"),
    Suite("DRAGOMIR_SANDWICH", "ln K(M/m)(A/2 -/+ A^1/2|X - (M+m)/2|A^1/2/(M-m)) bracket S(A|B) - chord",
          terms_dragomir, _W, "none"),
    Suite("TANGENT_BOUNDS", "(ln_v t)A + A nat_v B - t A nat_(v-1) B <= T_v(A|B) <= (ln_v s)A + s^(v-1)(B - sA)",
          terms_tangent, _V | _ST, "all"),
    Suite("FURUICHI_36", "A #_v B - (1/a)A nat_(v-1) B + ln_v(1/a)A <= T_v(A|B) <= (1/a)B - A - ln_v(1/a)A #_v B",
          terms_alpha_bounds, _V | frozenset({"s"}), "positive"),
    Suite("MONO_13", "Phi(T_v(A|B)) <= T_v(Phi(A)|Phi(B))", terms_mono, _V | _PHI, "positive", finding="negative"),
    Suite("MONO_REFINED", "Phi(T_v(A|B)) <= (int_0^1 Phi(C#_mu A) #_v Phi(C#_mu B) dmu - Phi(A))/v "
          "<= T_v(Phi(A)|Phi(B)), C = A #_v B", terms_mono_refined, _V | _PHI, "positive"),
    Suite("ANDO_SANDWICH", "Phi(A #_v B) <= Phi(C #_mu A) #_v Phi(C #_mu B) <= Phi(A) #_v Phi(B), C = A #_v B",
          terms_ando, _V | _PHI | frozenset({"mu"}), "positive"),
    Suite("COMPLEMENTARY", "T_v(Phi(A)|Phi(B)) <= Phi(T_v(A|B)) + (ln_v s - ln_v t)Phi(A) "
          "+ Phi(t A nat_(v-1) B - A #_v B) + s^(v-1) Phi(B - sA)",
          terms_complementary, _V | _ST | _PHI, "positive"),
    Suite("COMPLEMENTARY_LIMIT", "S(Phi(A)|Phi(B)) <= Phi(S(A|B)) + (ln(s/t) - 2)Phi(A) + t Phi(A B^-1 A) "
          "+ s^-1 Phi(B)", terms_complementary_limit, _ST | _PHI, "none"),
    Suite("COMPLEMENTARY_LIMIT_MINUS", "S(Phi(A)|Phi(B)) <= Phi(S(A|B)) + (ln(s/t) - 2)Phi(A) "
          "+ Phi(t A B^-1 A - s^-1 B)", terms_complementary_limit_minus, _ST | _PHI, "", finding="none"),
    Suite("EXPV_OPERATOR", "trapezoid and midpoint bounds bracket E_v(A|B) (order by sign of v)",
          terms_expv_operator, _V, "all", instances="exp"),
    Suite("FOUR_CHAIN_POS", "S(A|B) <= T_v(A|B) <= E_v(A|B) <= E(A|B), 0 < v <= 1",
          terms_four_chain_pos, _V, "positive", instances="exp"),
    Suite("FOUR_CHAIN_NEG", "E(A|B) <= E_v(A|B) <= T_v(A|B) <= S(A|B), -1 <= v < 0",
          terms_four_chain_neg, _V, "", finding="negative", extra_finding_v=(-0.5,), instances="exp"),
    Suite("RATIO_K", "E_v(A|B) <= K(m,M,1/v) E_v(A|C) for B <= C, Sp(I + vX) in [m,M]",
          terms_ratio_k, _V | frozenset({"C"}), "positive", finding="negative", instances="ratio"),
    Suite("RATIO_K_EXPONENT_V", "E_v(A|B) <= K(m,M,v) E_v(A|C), constant taken at exponent v instead of 1/v",
          terms_ratio_k_exponent_v, _V | frozenset({"C"}), "", finding="all", instances="ratio"),
]}

ASSERTED_SUITES = tuple(k for k, s in SUITES.items() if s.asserted)


def get_suite(suite_id: str) -> Suite:
    try:
        return SUITES[suite_id]
    except KeyError:
        raise PreconditionError(f"unknown inequality id {suite_id!r}") from None


# --------------------------------------------------------------------------
# evaluation

_OPTIONAL = ("v", "s", "t", "mu", "phi", "C")


def validate_case(case: InequalityCase) -> Suite:
    suite = get_suite(case.id)
    present = {name for name in _OPTIONAL if getattr(case, name) is not None}
    if case.pair.window is not None:
        present.add("window")
    required = set(suite.needs)
    missing = required - present
    extra = present - required - {"window"}
    if missing:
        raise PreconditionError(f"{case.id} needs {sorted(missing)}")
    if extra:
        raise PreconditionError(f"{case.id} does not take {sorted(extra)}")
    if case.v is not None:
        v = case.v
        if not -1 <= v <= 1 or v == 0:
            raise PreconditionError(f"v={v} outside [-1,0) U (0,1]")
    for name in ("s", "t"):
        val = getattr(case, name)
        if val is not None and not val > 0:
            raise PreconditionError(f"{name} must be positive, got {val}")
    if case.mu is not None and not 0 <= case.mu <= 1:
        raise PreconditionError(f"mu must lie in [0,1], got {case.mu}")
    if case.phi is not None and case.phi.dim != case.dim:
        raise PreconditionError(f"map acts on dim {case.phi.dim}, pair has dim {case.dim}")
    if suite.id in ("MONO_REFINED", "ANDO_SANDWICH") and not 0 < case.v <= 1:
        raise PreconditionError(f"{suite.id} needs v in (0, 1]")
    if case.C is not None:
        C = np.asarray(case.C, dtype=float)
        if C.shape != case.pair.A.shape:
            raise PreconditionError("C must match the pair's dimension")
        order = loewner_leq(case.pair.B, C, 1e-12)
        if not order.holds:
            raise PreconditionError(f"hypothesis B <= C fails (margin {order.margin:.3e})")
        m, M = ratio_k_window(case)
        if not 0 < m < M:
            raise PreconditionError(f"Sp(I + vX) window ({m}, {M}) is not positive")
    return suite


def evaluate_terms(case: InequalityCase) -> Terms:
    suite = validate_case(case)
    try:
        return suite.terms(case)
    except (DomainError, CertificateError) as exc:
        raise PreconditionError(str(exc)) from exc


def _mono_quadrature_check(case: InequalityCase, middle: np.ndarray) -> float:
    doubled = integral_middle_term(case.pair, case.v, case.phi, 2 * case.quad_nodes)
    delta = spectral_norm(doubled - middle)
    scale = max(1.0, spectral_norm(middle))
    if delta > QUAD_AGREEMENT * scale:
        raise QuadratureError(
            f"quadrature with {case.quad_nodes} and {2 * case.quad_nodes} nodes disagrees by {delta:.3e}"
        )
    return delta


def check_case(case: InequalityCase) -> Verdict:
    terms = evaluate_terms(case)
    labels = [label for label, _ in terms]
    links = [loewner_leq(terms[i][1], terms[i + 1][1], case.tol) for i in range(len(terms) - 1)]
    meta = {"dim": case.dim, "v": case.v, "s": case.s, "t": case.t, "mu": case.mu,
            "seed": case.seed, "index": case.index, "window": case.pair.window,
            "map": case.phi.kind if case.phi is not None else None}
    if case.id == "MONO_REFINED":
        meta["quad_nodes"] = case.quad_nodes
        meta["quad_delta"] = _mono_quadrature_check(case, terms[1][1])
    return Verdict(case.id, labels, links, all(lv.holds for lv in links), meta)


# --------------------------------------------------------------------------
# instances

def _loguniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))


def sample_window(rng: np.random.Generator, policy: str, v: float | None) -> tuple[float, float]:
    if policy == "general":
        m = _loguniform(rng, 0.05, 2.0)
        return m, m * _loguniform(rng, 1.05, 50.0)
    if policy == "exp":
        cap = 10.0 if v is None or v > 0 else 0.999 / abs(v)
        m = cap * _loguniform(rng, 0.005, 0.5)
        return m, _loguniform(rng, 1.05 * m, cap)
    if policy == "ratio":
        if v > 0:
            m = 1.0 + _loguniform(rng, 0.01, 1.0)
            return m, m * _loguniform(rng, 1.05, 5.0)
        M = rng.uniform(0.1, 0.95)
        return M * _loguniform(rng, 0.05, 0.95), M
    raise ValueError(f"unknown window policy {policy!r}")


def case_tag(suite_id: str, dim: int, v: float | None) -> str:
    return f"{suite_id}:{dim}:{v!r}"


def make_case(suite_id: str, dim: int, v: float | None, seed: int, index: int,
              tol: float = DEFAULT_TOL, quad_nodes: int = DEFAULT_QUAD_NODES,
              cond_max: float = 1e4) -> InequalityCase:
    """Draw a hypothesis-satisfying instance; deterministic in ``(seed, suite, dim, v, index)``."""
    suite = get_suite(suite_id)
    tag = case_tag(suite_id, dim, v)
    rng = key_rng(seed, tag + ":params", index)
    window = sample_window(rng, suite.instances, v)
    C = None
    if suite.instances == "ratio":
        spec = GenSpec(dim, cond_max, window, seed, "ratio-K", v, tag, index)
        A, B, C = random_ratio_k_instance(spec)
        pair = OperatorPair(A, B, ratio_k_x_window(v, *window))
    else:
        constraint = "exp-domain" if suite.instances == "exp" else "certified-window"
        pair = random_certified_pair(GenSpec(dim, cond_max, window, seed, constraint, v, tag, index))
    kw: dict = {}
    if "v" in suite.needs:
        kw["v"] = v
    lam = pair.frame.x_eigenvalues
    if "s" in suite.needs:
        kw["s"] = float(rng.uniform(lam[0], lam[-1]))
    if "t" in suite.needs:
        kw["t"] = float(rng.uniform(lam[0], lam[-1]))
    if "mu" in suite.needs:
        kw["mu"] = float(rng.uniform(0.0, 1.0))
    if "phi" in suite.needs:
        kw["phi"] = random_map(dim, MAP_KINDS[index % len(MAP_KINDS)], seed, hash_index(tag, index))
    return InequalityCase(suite_id, pair, C=C, quad_nodes=quad_nodes, tol=tol, seed=seed, index=index, **kw)


def hash_index(tag: str, index: int) -> int:
    return (zlib.crc32(tag.encode()) << 20) + index
