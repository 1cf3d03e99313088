"""Numerical certification of the reverse-Minkowski-type inequalities.

Each check evaluates both sides of one inequality with the operator
applied to pointwise-composed integrands (powers, products, differences
and maxima are folded into the integrand expression, never applied to
operator values), and accepts the trial only if the inequality holds
within a slack budget proportional to the reported quadrature errors.

Quadrature non-convergence marks a trial inconclusive rather than failed:
an inequality is never silently passed or failed on a value we do not
trust.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import ConvergenceError, DomainError
from .functions import (
    PairKind,
    PositivePair,
    Sum,
    TestFunction,
    generate_box_pair,
    generate_ratio_pair,
)
from .operator_core import ClassicalKind, OperatorParams, evaluate, evaluate_classical
from .quadrature import DEFAULT_CONFIG, QuadratureConfig

__all__ = [
    "TheoremId",
    "CheckConfig",
    "InequalityCheck",
    "HadamardOp",
    "c1",
    "c2",
    "c3",
    "c4",
    "c5",
    "c6",
    "check_t8",
    "check_t9",
    "check_t10",
    "check_t11",
    "check_t12",
    "check_t13",
    "check_t14",
    "check_t15",
    "check_forward_minkowski",
    "check_scalar_lemmas",
    "SuiteConfig",
    "TrialRecord",
    "SuiteReport",
    "default_operator_grid",
    "run_suite",
]


class TheoremId(Enum):
    T8 = "T8"
    T9 = "T9"
    T10 = "T10"
    T11 = "T11"
    T12 = "T12"
    T13 = "T13"
    T14 = "T14"
    T15 = "T15"
    FORWARD_MINKOWSKI = "ForwardMinkowski"
    YOUNG = "Young"
    POWER_MEAN = "PowerMean"


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def c1(m: float, M: float) -> float:
    _require(0.0 < m <= M, "require 0 < m <= M")
    return (M * (m + 1.0) + (M + 1.0)) / ((m + 1.0) * (M + 1.0))


def c2(m: float, M: float) -> float:
    _require(0.0 < m <= M, "require 0 < m <= M")
    return (M + 1.0) * (m + 1.0) / M - 2.0


def c3(p: float, M: float) -> float:
    _require(p > 1.0, "require p > 1")
    _require(M > 0.0, "require M > 0")
    return 2.0 ** (p - 1.0) * M ** p / (p * (M + 1.0) ** p)


def c4(q: float, m: float, statement_constants: bool = False) -> float:
    """Second constant of the product bound.

    The binding derivation carries 2^(q-1); the alternative 2^(p-1) form
    (with p conjugate to q) is available behind ``statement_constants``
    for side-by-side comparison.
    """
    _require(q > 1.0, "require q > 1")
    _require(m > 0.0, "require m > 0")
    expo = q - 1.0
    if statement_constants:
        p = q / (q - 1.0)
        expo = p - 1.0
    return 2.0 ** expo / (q * (m + 1.0) ** q)


def c5(a_lo: float, A_hi: float, b_lo: float, B_hi: float) -> float:
    _require(0.0 < a_lo <= A_hi, "require 0 < a_lo <= A_hi")
    _require(0.0 < b_lo <= B_hi, "require 0 < b_lo <= B_hi")
    return (A_hi * (a_lo + B_hi) + B_hi * (A_hi + b_lo)) / (
        (A_hi + b_lo) * (a_lo + B_hi)
    )


def c6(m: float, M: float) -> float:
    _require(0.0 < m <= M, "require 0 < m <= M")
    return 1.0 / ((m + 1.0) * (M + 1.0))


# ---------------------------------------------------------------------------
# operator application with error tracking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HadamardOp:
    """Stand-in operator spec: evaluate checks through the direct
    logarithmic-kernel form instead of a generalized parameter point."""

    alpha: float
    lower: float = 1.0


@dataclass(frozen=True)
class _Val:
    value: float
    err: float

    def powered(self, e: float) -> "_Val":
        if e == 1.0:
            return self
        v = self.value ** e
        return _Val(v, abs(e) * self.value ** (e - 1.0) * self.err)

    def times(self, other: "_Val") -> "_Val":
        return _Val(
            self.value * other.value,
            abs(self.value) * other.err + abs(other.value) * self.err,
        )

    def scaled(self, c: float) -> "_Val":
        return _Val(c * self.value, abs(c) * self.err)

    def plus(self, other: "_Val") -> "_Val":
        return _Val(self.value + other.value, self.err + other.err)


class _Inconclusive(Exception):
    pass


def _apply_op(
    op, fn: TestFunction, x: float, quad: QuadratureConfig, breakpoints: tuple = ()
) -> _Val:
    try:
        if isinstance(op, HadamardOp):
            res = evaluate_classical(
                ClassicalKind.HADAMARD, op.alpha, fn, (op.lower,), x, quad
            )
        else:
            res = evaluate(op, fn, x, quad, breakpoints)
    except ConvergenceError as exc:
        raise _Inconclusive(str(exc)) from exc
    if not math.isfinite(res.value) or res.value < 0.0:
        raise _Inconclusive("operator value %r unusable" % (res.value,))
    return _Val(res.value, res.error_estimate)


def _sign_crossings(fa: TestFunction, fb: TestFunction, lo: float, hi: float,
                    n: int = 512) -> tuple:
    """Interior points where fa - fb changes sign (kinks of max(fa, fb))."""
    t = np.linspace(lo, hi, n)
    d = np.asarray(fa(t)) - np.asarray(fb(t))
    roots = []
    for i in range(n - 1):
        if d[i] == 0.0 or d[i] * d[i + 1] > 0.0:
            continue
        a, b = t[i], t[i + 1]
        fa_v = d[i]
        for _ in range(80):
            m = 0.5 * (a + b)
            fm = float(fa(m)) - float(fb(m))
            if fm == 0.0:
                a = b = m
                break
            if (fm > 0.0) == (fa_v > 0.0):
                a, fa_v = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    return tuple(roots)


# ---------------------------------------------------------------------------
# check records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckConfig:
    """Knobs shared by all theorem checks."""

    p: float = 2.0
    c: Optional[float] = None  # 0 < c < m, consulted by the sandwich check T12
    slack_factor: float = 2.0
    statement_constants: bool = False
    quad: QuadratureConfig = DEFAULT_CONFIG
    trials: int = 1
    seed: int = 0

    def __post_init__(self):
        _require(self.p >= 1.0, "require p >= 1")
        _require(self.slack_factor > 0.0, "require positive slack_factor")

    @property
    def q(self) -> float:
        """Conjugate exponent; infinite when p = 1."""
        if self.p == 1.0:
            return math.inf
        return self.p / (self.p - 1.0)


@dataclass(frozen=True)
class InequalityCheck:
    theorem_id: TheoremId
    lhs: float
    rhs: float
    constant: float
    slack: float
    satisfied: bool
    lhs_err: float
    rhs_err: float
    mid: Optional[float] = None  # sandwich checks: the bracketed quantity
    mid_err: float = 0.0
    inconclusive: bool = False
    aux: Optional[dict] = None

    @property
    def margin(self) -> float:
        """Smallest relative distance from violation (negative = violated)."""
        scale = max(abs(self.rhs), abs(self.lhs), 1e-300)
        if self.mid is None:
            return (self.rhs - self.lhs) / scale
        scale = max(scale, abs(self.mid))
        return min(self.mid - self.lhs, self.rhs - self.mid) / scale


def _inconclusive_check(theorem: TheoremId, constant: float = math.nan) -> InequalityCheck:
    return InequalityCheck(
        theorem_id=theorem,
        lhs=math.nan,
        rhs=math.nan,
        constant=constant,
        slack=math.nan,
        satisfied=False,
        lhs_err=math.nan,
        rhs_err=math.nan,
        inconclusive=True,
    )


def _one_sided(theorem, lhs: _Val, rhs: _Val, constant, slack_factor, aux=None):
    slack = slack_factor * (lhs.err + rhs.err)
    return InequalityCheck(
        theorem_id=theorem,
        lhs=lhs.value,
        rhs=rhs.value,
        constant=constant,
        slack=slack,
        satisfied=lhs.value <= rhs.value + slack,
        lhs_err=lhs.err,
        rhs_err=rhs.err,
        aux=aux,
    )


def _sandwich(theorem, lower: _Val, middle: _Val, upper: _Val, constant, slack_factor):
    slack_lo = slack_factor * (lower.err + middle.err)
    slack_hi = slack_factor * (middle.err + upper.err)
    ok = (lower.value <= middle.value + slack_lo) and (
        middle.value <= upper.value + slack_hi
    )
    return InequalityCheck(
        theorem_id=theorem,
        lhs=lower.value,
        rhs=upper.value,
        constant=constant,
        slack=slack_lo + slack_hi,
        satisfied=ok,
        lhs_err=lower.err,
        rhs_err=upper.err,
        mid=middle.value,
        mid_err=middle.err,
    )


# ---------------------------------------------------------------------------
# theorem checks
# ---------------------------------------------------------------------------


def _ratio_bounds(pair: PositivePair) -> tuple:
    return pair.m, pair.M


def check_t8(pair: PositivePair, params, x: float, cfg: CheckConfig) -> InequalityCheck:
    """Sum of p-th roots bounded by c1 times the p-th root of the sum."""
    m, M = _ratio_bounds(pair)
    const = c1(m, M)
    p = cfg.p
    try:
        fp = _apply_op(params, pair.f.powered(p), x, cfg.quad)
        gp = _apply_op(params, pair.g.powered(p), x, cfg.quad)
        spp = _apply_op(params, pair.f.plus(pair.g).powered(p), x, cfg.quad)
    except _Inconclusive:
        return _inconclusive_check(TheoremId.T8, const)
    lhs = fp.powered(1.0 / p).plus(gp.powered(1.0 / p))
    rhs = spp.powered(1.0 / p).scaled(const)
    return _one_sided(TheoremId.T8, lhs, rhs, const, cfg.slack_factor)


def check_t9(pair: PositivePair, params, x: float, cfg: CheckConfig) -> InequalityCheck:
    """c2 times the product of p-th roots bounded by the sum of squared roots."""
    m, M = _ratio_bounds(pair)
    const = c2(m, M)
    p = cfg.p
    try:
        fp = _apply_op(params, pair.f.powered(p), x, cfg.quad)
        gp = _apply_op(params, pair.g.powered(p), x, cfg.quad)
    except _Inconclusive:
        return _inconclusive_check(TheoremId.T9, const)
    lhs = fp.powered(1.0 / p).times(gp.powered(1.0 / p)).scaled(const)
    rhs = fp.powered(2.0 / p).plus(gp.powered(2.0 / p))
    return _one_sided(TheoremId.T9, lhs, rhs, const, cfg.slack_factor)


def check_t10(pair: PositivePair, params, x: float, cfg: CheckConfig) -> InequalityCheck:
    """Split-exponent product bound with constant (M/m)^(1/(pq)).

    The sound conclusion carries no outer exponent on the right-hand
    operator term (the two proof branches contribute exponents 1/p and 1/q
    which sum to one); the variant with a spurious outer 1/p that appears
    in one display is recorded in ``aux`` for comparison but not asserted.
    """
    m, M = _ratio_bounds(pair)
    _require(cfg.p > 1.0, "T10 requires p > 1")
    p, q = cfg.p, cfg.q
    const = (M / m) ** (1.0 / (p * q))
    try:
        fi = _apply_op(params, pair.f, x, cfg.quad)
        gi = _apply_op(params, pair.g, x, cfg.quad)
        mixed = _apply_op(
            params,
            pair.f.powered(1.0 / p).times(pair.g.powered(1.0 / q)),
            x,
            cfg.quad,
        )
    except _Inconclusive:
        return _inconclusive_check(TheoremId.T10, const)
    lhs = fi.powered(1.0 / p).times(gi.powered(1.0 / q))
    rhs = mixed.scaled(const)
    aux = {"outer_exponent_rhs": const * mixed.value ** (1.0 / p)}
    return _one_sided(TheoremId.T10, lhs, rhs, const, cfg.slack_factor, aux=aux)


def check_t11(pair: PositivePair, params, x: float, cfg: CheckConfig) -> InequalityCheck:
    """Product integral bounded by c3, c4 combinations of power sums."""
    m, M = _ratio_bounds(pair)
    _require(cfg.p > 1.0, "T11 requires p > 1")
    p, q = cfg.p, cfg.q
    const3 = c3(p, M)
    const4 = c4(q, m, cfg.statement_constants)
    try:
        prod = _apply_op(params, pair.f.times(pair.g), x, cfg.quad)
        psum = _apply_op(
            params,
            TestFunction(
                Sum(((1.0, pair.f.powered(p).expr), (1.0, pair.g.powered(p).expr))),
                pair.f.domain,
            ),
            x,
            cfg.quad,
        )
        qsum = _apply_op(
            params,
            TestFunction(
                Sum(((1.0, pair.f.powered(q).expr), (1.0, pair.g.powered(q).expr))),
                pair.f.domain,
            ),
            x,
            cfg.quad,
        )
    except _Inconclusive:
        return _inconclusive_check(TheoremId.T11, const3)
    lhs = prod
    rhs = psum.scaled(const3).plus(qsum.scaled(const4))
    return _one_sided(
        TheoremId.T11, lhs, rhs, const3, cfg.slack_factor, aux={"c4": const4}
    )


def check_t12(pair: PositivePair, params, x: float, cfg: CheckConfig) -> InequalityCheck:
    """Two-sided bound through the p-th power of f - c g.

    Implements the derivation's form with the p-th power inside the
    operator; the bracketed middle quantity is the sum of p-th roots.
    """
    m, M = _ratio_bounds(pair)
    c = cfg.c
    _require(c is not None and 0.0 < c < m, "require 0 < c < m")
    p = cfg.p
    diff = pair.f.minus_scaled(c, pair.g)
    try:
        dp = _apply_op(params, diff.powered(p), x, cfg.quad)
        fp = _apply_op(params, pair.f.powered(p), x, cfg.quad)
        gp = _apply_op(params, pair.g.powered(p), x, cfg.quad)
    except _Inconclusive:
        return _inconclusive_check(TheoremId.T12)
    root = dp.powered(1.0 / p)
    lower = root.scaled((M + 1.0) / (M - c))
    upper = root.scaled((m + 1.0) / (m - c))
    middle = fp.powered(1.0 / p).plus(gp.powered(1.0 / p))
    return _sandwich(TheoremId.T12, lower, middle, upper, c, cfg.slack_factor)


def check_t13(pair: PositivePair, params, x: float, cfg: CheckConfig) -> InequalityCheck:
    """Box-bounded version of the reverse sum bound with constant c5."""
    _require(pair.kind is PairKind.BOX_BOUNDED and pair.box is not None,
             "T13 requires a box-bounded pair")
    a_lo, A_hi, b_lo, B_hi = pair.box
    const = c5(a_lo, A_hi, b_lo, B_hi)
    p = cfg.p
    try:
        fp = _apply_op(params, pair.f.powered(p), x, cfg.quad)
        gp = _apply_op(params, pair.g.powered(p), x, cfg.quad)
        spp = _apply_op(params, pair.f.plus(pair.g).powered(p), x, cfg.quad)
    except _Inconclusive:
        return _inconclusive_check(TheoremId.T13, const)
    lhs = fp.powered(1.0 / p).plus(gp.powered(1.0 / p))
    rhs = spp.powered(1.0 / p).scaled(const)
    return _one_sided(TheoremId.T13, lhs, rhs, const, cfg.slack_factor)


def check_t14(pair: PositivePair, params, x: float, cfg: CheckConfig) -> InequalityCheck:
    """Sandwich of c6 times the squared-sum integral between scaled product integrals."""
    m, M = _ratio_bounds(pair)
    const = c6(m, M)
    try:
        prod = _apply_op(params, pair.f.times(pair.g), x, cfg.quad)
        sq = _apply_op(params, pair.f.plus(pair.g).powered(2.0), x, cfg.quad)
    except _Inconclusive:
        return _inconclusive_check(TheoremId.T14, const)
    lower = prod.scaled(1.0 / M)
    middle = sq.scaled(const)
    upper = prod.scaled(1.0 / m)
    return _sandwich(TheoremId.T14, lower, middle, upper, const, cfg.slack_factor)


def check_t15(pair: PositivePair, params, x: float, cfg: CheckConfig) -> InequalityCheck:
    """Sum of p-th roots bounded by twice the root of the max-function integral."""
    m, M = _ratio_bounds(pair)
    p = cfg.p
    # h = max(M*((M/m + 1) f - M g), ((m + M) g - f)/m), evaluated pointwise
    arg1 = TestFunction(
        Sum(((M * (M / m + 1.0), pair.f.expr), (-M * M, pair.g.expr))), pair.f.domain
    )
    arg2 = TestFunction(
        Sum((((m + M) / m, pair.g.expr), (-1.0 / m, pair.f.expr))), pair.f.domain
    )
    h = arg1.max_with(arg2)
    lo, hi = pair.f.domain
    kinks = () if isinstance(params, HadamardOp) else _sign_crossings(
        arg1, arg2, max(lo, params.lower), min(hi, x)
    )
    try:
        fp = _apply_op(params, pair.f.powered(p), x, cfg.quad)
        gp = _apply_op(params, pair.g.powered(p), x, cfg.quad)
        hp = _apply_op(params, h.powered(p), x, cfg.quad, breakpoints=kinks)
    except _Inconclusive:
        return _inconclusive_check(TheoremId.T15, 2.0)
    lhs = fp.powered(1.0 / p).plus(gp.powered(1.0 / p))
    rhs = hp.powered(1.0 / p).scaled(2.0)
    return _one_sided(TheoremId.T15, lhs, rhs, 2.0, cfg.slack_factor)


def check_forward_minkowski(
    pair: PositivePair, params, x: float, cfg: CheckConfig
) -> InequalityCheck:
    """Ordinary triangle-inequality direction, used as a proof-step sanity check."""
    p = cfg.p
    try:
        fp = _apply_op(params, pair.f.powered(p), x, cfg.quad)
        gp = _apply_op(params, pair.g.powered(p), x, cfg.quad)
        spp = _apply_op(params, pair.f.plus(pair.g).powered(p), x, cfg.quad)
    except _Inconclusive:
        return _inconclusive_check(TheoremId.FORWARD_MINKOWSKI, 1.0)
    lhs = spp.powered(1.0 / p)
    rhs = fp.powered(1.0 / p).plus(gp.powered(1.0 / p))
    return _one_sided(TheoremId.FORWARD_MINKOWSKI, lhs, rhs, 1.0, cfg.slack_factor)


def check_scalar_lemmas(r: float, a: float, b: float) -> bool:
    """Pointwise lemmas used inside the derivations.

    Checks a*b <= a^r/r + b^s/s with s conjugate to r, and the power-mean
    bound (a+b)^r <= 2^(r-1) (a^r + b^r); the exponent is r-1 (the value a
    dimension check forces), not the constant p-1 printed alongside it.
    Requires r > 1 and a, b >= 0.  A few-ulp guard absorbs float rounding.
    """
    _require(r > 1.0, "require r > 1")
    _require(a >= 0.0 and b >= 0.0, "require a, b >= 0")
    s = r / (r - 1.0)

    def pw(base, expo):
        # conjugate exponents blow up as r -> 1+; overflow means the bound
        # side is huge, not that the inequality fails
        try:
            return base ** expo
        except OverflowError:
            return math.inf

    young_rhs = pw(a, r) / r + pw(b, s) / s
    guard = 8.0 * 2.220446049250313e-16
    young_ok = a * b <= young_rhs + guard * max(a * b, young_rhs, 1e-300)
    pm_lhs = pw(a + b, r)
    pm_rhs = pw(2.0, r - 1.0) * (pw(a, r) + pw(b, r))
    pm_ok = pm_lhs <= pm_rhs + guard * max(pm_lhs, pm_rhs, 1e-300)
    return young_ok and pm_ok


# ---------------------------------------------------------------------------
# suite runner
# ---------------------------------------------------------------------------


_OPERATOR_CHECKS = {
    TheoremId.T8: check_t8,
    TheoremId.T9: check_t9,
    TheoremId.T10: check_t10,
    TheoremId.T11: check_t11,
    TheoremId.T12: check_t12,
    TheoremId.T13: check_t13,
    TheoremId.T14: check_t14,
    TheoremId.T15: check_t15,
    TheoremId.FORWARD_MINKOWSKI: check_forward_minkowski,
}

_NEEDS_P_GT_1 = {TheoremId.T10, TheoremId.T11}

DEFAULT_THEOREMS = (
    TheoremId.T8,
    TheoremId.T9,
    TheoremId.T10,
    TheoremId.T11,
    TheoremId.T12,
    TheoremId.T13,
    TheoremId.T14,
    TheoremId.T15,
)


def default_operator_grid() -> tuple:
    """Parameter points spanning the classical reductions used by the suite."""
    grid = []
    for alpha in (0.5, 1.0, 2.0):
        grid.append(OperatorParams(alpha=alpha, beta=alpha, rho=1.0, eta=0.0, kappa=0.0))
    for alpha in (0.5, 1.5):
        grid.append(OperatorParams(alpha=alpha, beta=alpha, rho=2.0, eta=0.0, kappa=0.0))
    for alpha, rho, eta in ((0.5, 2.0, 0.5), (1.2, 1.5, 0.0)):
        grid.append(
            OperatorParams(
                alpha=alpha, beta=0.0, rho=rho, eta=eta, kappa=-rho * (alpha + eta)
            )
        )
    return tuple(grid)


@dataclass(frozen=True)
class SuiteConfig:
    theorems: tuple = DEFAULT_THEOREMS
    trials: int = 100
    seed: int = 0
    p_values: tuple = (1.0, 2.0, 3.0)
    ratio_bounds: tuple = ((0.5, 2.0), (1.0, 1.0), (0.9, 1.1))
    c_fraction: float = 0.5
    x: float = 1.0
    slack_factor: float = 2.0
    statement_constants: bool = False
    quad: QuadratureConfig = DEFAULT_CONFIG
    complexity: int = 2
    threads: int = 1
    operator_grid: tuple = field(default_factory=default_operator_grid)


@dataclass(frozen=True)
class TrialRecord:
    theorem: TheoremId
    index: int
    pair_seed: int
    params: OperatorParams
    m: float
    M: float
    p: float
    c: Optional[float]
    x: float
    kind: PairKind
    check: InequalityCheck

    @property
    def status(self) -> str:
        if self.check.inconclusive:
            return "inconclusive"
        return "pass" if self.check.satisfied else "fail"


@dataclass
class SuiteReport:
    config: SuiteConfig
    records: list
    version: str
    timestamp: str

    def summary(self) -> dict:
        out = {}
        for theorem in self.config.theorems:
            recs = [r for r in self.records if r.theorem is theorem]
            passes = sum(1 for r in recs if r.status == "pass")
            fails = sum(1 for r in recs if r.status == "fail")
            inconclusive = sum(1 for r in recs if r.status == "inconclusive")
            margins = [r.check.margin for r in recs if r.status != "inconclusive"]
            out[theorem.value] = {
                "trials": len(recs),
                "passes": passes,
                "failures": fails,
                "inconclusive": inconclusive,
                "min_margin": min(margins) if margins else None,
            }
        return out

    @property
    def total_failures(self) -> int:
        return sum(1 for r in self.records if r.status == "fail")

    @property
    def total_inconclusive(self) -> int:
        return sum(1 for r in self.records if r.status == "inconclusive")

    def inconclusive_over_threshold(self, fraction: float = 0.01) -> bool:
        total = len(self.records)
        return total > 0 and self.total_inconclusive > fraction * total

    def to_json_dict(self) -> dict:
        def record_dict(r: TrialRecord) -> dict:
            return {
                "theorem": r.theorem.value,
                "trial": r.index,
                "pair_seed": r.pair_seed,
                "kind": r.kind.value,
                "alpha": r.params.alpha,
                "beta": r.params.beta,
                "rho": r.params.rho,
                "eta": r.params.eta,
                "kappa": r.params.kappa,
                "lower": r.params.lower,
                "x": r.x,
                "m": r.m,
                "M": r.M,
                "p": r.p,
                "c": r.c,
                "lhs": r.check.lhs,
                "mid": r.check.mid,
                "rhs": r.check.rhs,
                "constant": r.check.constant,
                "slack": r.check.slack,
                "margin": None if r.status == "inconclusive" else r.check.margin,
                "status": r.status,
            }

        failures = [record_dict(r) for r in self.records if r.status == "fail"]
        return {
            "metadata": {
                "version": self.version,
                "master_seed": self.config.seed,
                "timestamp": self.timestamp,
                "trials_per_theorem": self.config.trials,
                "slack_factor": self.config.slack_factor,
                "statement_constants": self.config.statement_constants,
                "x": self.config.x,
            },
            "grid": {
                "operators": [
                    {
                        "alpha": g.alpha,
                        "beta": g.beta,
                        "rho": g.rho,
                        "eta": g.eta,
                        "kappa": g.kappa,
                        "lower": g.lower,
                    }
                    for g in self.config.operator_grid
                ],
                "p_values": list(self.config.p_values),
                "ratio_bounds": [list(b) for b in self.config.ratio_bounds],
            },
            "theorems": self.summary(),
            "failures": failures,
        }

    def csv_rows(self) -> list:
        header = [
            "theorem", "trial", "pair_seed", "kind", "alpha", "beta", "rho",
            "eta", "kappa", "lower", "x", "m", "M", "p", "c",
            "lhs", "mid", "rhs", "constant", "slack", "margin", "status",
        ]
        rows = [header]
        for r in self.records:
            rows.append([
                r.theorem.value, r.index, r.pair_seed, r.kind.value,
                r.params.alpha, r.params.beta, r.params.rho, r.params.eta,
                r.params.kappa, r.params.lower, r.x, r.m, r.M, r.p,
                "" if r.c is None else r.c,
                r.check.lhs,
                "" if r.check.mid is None else r.check.mid,
                r.check.rhs, r.check.constant, r.check.slack,
                "" if r.status == "inconclusive" else r.check.margin,
                r.status,
            ])
        return rows


def _trial_seed(master_seed: int, theorem_ordinal: int, index: int) -> int:
    return (int(master_seed) * 1_000_003 + theorem_ordinal * 10_007 + index) & 0x7FFFFFFF


def _run_trial(cfg: SuiteConfig, theorem: TheoremId, index: int) -> TrialRecord:
    p_options = [p for p in cfg.p_values if p > 1.0] if theorem in _NEEDS_P_GT_1 else list(cfg.p_values)
    if not p_options:
        raise DomainError("%s requires at least one p > 1 in p_values" % theorem.value)
    combos = [
        (op, bounds, p)
        for op in cfg.operator_grid
        for bounds in cfg.ratio_bounds
        for p in p_options
    ]
    op, (m, M), p = combos[index % len(combos)]
    ordinal = list(TheoremId).index(theorem)
    seed = _trial_seed(cfg.seed, ordinal, index)
    domain = (op.lower, cfg.x)
    if theorem is TheoremId.T13:
        pair = generate_box_pair(seed, m, M, m, M, domain, cfg.complexity)
    else:
        pair = generate_ratio_pair(seed, m, M, domain, cfg.complexity)
    c = cfg.c_fraction * m if theorem is TheoremId.T12 else None
    check_cfg = CheckConfig(
        p=p,
        c=c,
        slack_factor=cfg.slack_factor,
        statement_constants=cfg.statement_constants,
        quad=cfg.quad,
        seed=seed,
    )
    check = _OPERATOR_CHECKS[theorem](pair, op, cfg.x, check_cfg)
    return TrialRecord(
        theorem=theorem,
        index=index,
        pair_seed=seed,
        params=op,
        m=m,
        M=M,
        p=p,
        c=c,
        x=cfg.x,
        kind=pair.kind,
        check=check,
    )


def suite_threads_default() -> int:
    raw = os.environ.get("GENFRAC_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_suite(cfg: SuiteConfig, version: str = "0.1.0", timestamp: str = "") -> SuiteReport:
    """Run every selected theorem over ``trials`` seeded pairs.

    Results are deterministic for a fixed master seed regardless of the
    thread count: each trial derives its own seed and records are sorted
    by (theorem, trial index) before aggregation.
    """
    jobs = [(theorem, i) for theorem in cfg.theorems for i in range(cfg.trials)]
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            records = list(pool.map(lambda job: _run_trial(cfg, *job), jobs))
    else:
        records = [_run_trial(cfg, theorem, i) for theorem, i in jobs]
    order = {t: k for k, t in enumerate(TheoremId)}
    records.sort(key=lambda r: (order[r.theorem], r.index))
    return SuiteReport(config=cfg, records=records, version=version, timestamp=timestamp)
