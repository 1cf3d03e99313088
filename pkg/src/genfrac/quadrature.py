"""Error-controlled integration of the weakly singular operator kernel.

Every kernel integral is normalized to the unit interval first, so the
endpoint singularity always appears as an explicit (1-u)^(alpha-1) (and,
with a zero lower bound, u^eta) weight.  A double-exponential (tanh-sinh)
rule then integrates weight times smooth remainder: node weights are
assembled in log space, so the algebraic blow-up at either endpoint is
cancelled analytically instead of being sampled.

The closed-form value of the full operator on monomials t^sigma lives here
as well; it is the independent oracle the quadrature is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

import numpy as np

from .errors import ConvergenceError, DomainError
from .special_functions import log_beta, log_gamma

if TYPE_CHECKING:  # pragma: no cover
    from .operator_core import OperatorParams

__all__ = [
    "QuadratureConfig",
    "IntegralResult",
    "weighted_unit_integral",
    "integrate_kernel",
    "closed_form_monomial",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and node budget for one integral."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise DomainError("rel_tol must be positive")
        if not self.abs_tol > 0.0:
            raise DomainError("abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error_estimate: float
    evaluations: int


# ---------------------------------------------------------------------------
# tanh-sinh nodes
#
# u(t) = 1/(1 + exp(-pi*sinh(t))) maps R onto (0,1); endpoints are approached
# double-exponentially but never hit.  Per level we cache log(u), log(1-u)
# and log of the Jacobian so each integral only pays one vectorized exp.
# ---------------------------------------------------------------------------

_MAX_LEVEL = 12
_T_MAX_CAP = 8.5
_node_cache: dict[tuple[float, int], tuple] = {}


def _log1p_exp(y: np.ndarray) -> np.ndarray:
    # log(1 + e^y) without overflow
    out = np.empty_like(y)
    pos = y > 0.0
    out[pos] = y[pos] + np.log1p(np.exp(-y[pos]))
    out[~pos] = np.log1p(np.exp(y[~pos]))
    return out


def _level_nodes(t_max: float, level: int):
    key = (t_max, level)
    cached = _node_cache.get(key)
    if cached is not None:
        return cached
    h = 2.0 ** (-level)
    if level == 0:
        n = int(math.floor(t_max / h))
        t = h * np.arange(-n, n + 1, dtype=float)
    else:
        # only the odd multiples of h are new at this level
        n = int(math.floor((t_max - h) / (2.0 * h))) + 1
        t = h * (2.0 * np.arange(-n, n, dtype=float) + 1.0)
    s = 0.5 * math.pi * np.sinh(t)
    log_u = -_log1p_exp(-2.0 * s)
    log_1mu = -_log1p_exp(2.0 * s)
    u = np.exp(log_u)
    log_jac = math.log(math.pi) + np.log(np.cosh(t))
    data = (u, log_u, log_1mu, log_jac)
    _node_cache[key] = data
    return data


def _pick_t_max(one_minus_u_pow: float, u_pow: float) -> float:
    # truncate where the weaker endpoint weight has decayed below ~1e-24
    mu = min(one_minus_u_pow + 1.0, u_pow + 1.0, 1.0)
    t_max = math.asinh(56.0 / (math.pi * mu))
    t_max = min(_T_MAX_CAP, t_max)
    # snap up to a coarse grid so the node cache stays small
    return math.ceil(t_max * 2.0) / 2.0


def weighted_unit_integral(
    g: Callable[[np.ndarray], np.ndarray],
    one_minus_u_pow: float,
    u_pow: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> IntegralResult:
    """Integrate (1-u)^a * u^b * g(u) over (0, 1).

    ``g`` must accept a numpy array of nodes strictly inside (0, 1) and
    evaluate pointwise.  Both weight exponents must exceed -1, otherwise
    the integral does not exist.

    Refinement halves the tanh-sinh step until the last two passes agree
    within tolerance; the reported error estimate is that last difference,
    which in practice overestimates the true error of the final pass.
    """
    if one_minus_u_pow <= -1.0 or u_pow <= -1.0:
        raise DomainError(
            "weight exponents must exceed -1 for an integrable kernel, got "
            "(1-u)^%r u^%r" % (one_minus_u_pow, u_pow)
        )
    t_max = _pick_t_max(one_minus_u_pow, u_pow)
    a1 = one_minus_u_pow + 1.0
    b1 = u_pow + 1.0

    evals = 0
    total = 0.0
    value = 0.0
    prev = None
    estimate = math.inf
    for level in range(_MAX_LEVEL + 1):
        u, log_u, log_1mu, log_jac = _level_nodes(t_max, level)
        if level > 2 and evals + u.size > cfg.max_subdivisions:
            best = IntegralResult(value, estimate, max(evals, 1))
            raise ConvergenceError(
                "quadrature did not converge within %d evaluations"
                % cfg.max_subdivisions,
                result=best,
            )
        w = np.exp(log_jac + b1 * log_u + a1 * log_1mu)
        total += float(np.dot(w, g(u)))
        evals += u.size
        value = 2.0 ** (-level) * total
        if prev is not None:
            estimate = abs(value - prev)
            if level >= 2 and estimate <= max(cfg.abs_tol, cfg.rel_tol * abs(value)):
                # floor at the roundoff level of the node summation
                estimate = max(estimate, 16.0 * np.finfo(float).eps * abs(value))
                return IntegralResult(value, estimate, evals)
        prev = value
    best = IntegralResult(value, estimate, max(evals, 1))
    raise ConvergenceError(
        "quadrature did not converge within refinement level %d" % _MAX_LEVEL,
        result=best,
    )


# ---------------------------------------------------------------------------
# kernel-factor integral of the left-sided operator
# ---------------------------------------------------------------------------


def _kernel_segment(
    f,
    params: "OperatorParams",
    x: float,
    lo: float,
    hi: float,
    cfg: QuadratureConfig,
) -> IntegralResult:
    """Kernel-factor integral over one subinterval [lo, hi] of [a, x].

    The substitution u = (t^rho - lo^rho)/(hi^rho - lo^rho) turns the
    kernel's t-power weight into an exact u^eta factor when lo = 0 and,
    when hi = x, the singular factor into an exact (1-u)^(alpha-1) weight.
    Interior segments (hi < x) carry the then-smooth singular factor
    inside the integrand.
    """
    alpha = params.alpha
    rho = params.rho
    eta = params.eta
    singular_top = hi == x
    inv_rho = 1.0 / rho

    if lo == 0.0:
        # t = hi * u^(1/rho); t-power weight becomes u^eta exactly
        log_scale = rho * (eta + 1.0) * math.log(hi) - math.log(rho)
        d = hi ** rho
        u_pow = eta

        def t_of_u(u):
            return hi * u ** inv_rho

        extra = None
    else:
        log_lo_rho = rho * math.log(lo)
        lo_rho = math.exp(log_lo_rho)
        d = lo_rho * math.expm1(rho * math.log(hi / lo))
        log_scale = math.log(d) - math.log(rho)
        ratio = d / lo_rho
        u_pow = 0.0

        def t_of_u(u):
            # t = lo * (1 + u*D/lo^rho)^(1/rho), stable for rho -> 0+
            return lo * np.exp(inv_rho * np.log1p(u * ratio))

        if eta != 0.0:
            def extra(u):
                return np.exp(eta * (log_lo_rho + np.log1p(u * ratio)))
        else:
            extra = None

    if singular_top:
        log_scale += (alpha - 1.0) * math.log(d)
        a_pow = alpha - 1.0

        def g(u):
            vals = np.asarray(f(t_of_u(u)), dtype=float)
            return vals if extra is None else extra(u) * vals
    else:
        # remaining gap x^rho - hi^rho > 0 keeps the factor smooth
        e_gap = hi ** rho * math.expm1(rho * math.log(x / hi))
        a_pow = 0.0

        def g(u):
            vals = np.asarray(f(t_of_u(u)), dtype=float)
            vals = vals * (e_gap + d * (1.0 - u)) ** (alpha - 1.0)
            return vals if extra is None else extra(u) * vals

    res = weighted_unit_integral(g, a_pow, u_pow, cfg)
    scale = math.exp(log_scale)
    return IntegralResult(scale * res.value, scale * res.error_estimate, res.evaluations)


def integrate_kernel(
    f,
    params: "OperatorParams",
    x: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    breakpoints: tuple = (),
) -> IntegralResult:
    """Integral factor of the left-sided operator on [a, x].

    Computes int_a^x t^(rho*(eta+1)-1) * (x^rho - t^rho)^(alpha-1) * f(t) dt
    with the canonical substitution u = (t^rho - a^rho)/(x^rho - a^rho)
    (u = (t/x)^rho when a = 0), which isolates the upper-endpoint
    singularity as an exact (1-u)^(alpha-1) weight.  The raw integrand is
    never sampled at t = x.

    ``breakpoints`` lists interior points where f is continuous but not
    smooth (pointwise maxima); the integral is split there so each piece
    converges at the double-exponential rate.
    """
    a = params.lower
    if not x > a:
        raise DomainError("evaluation point must exceed the lower bound")
    if a == 0.0 and params.rho * (params.eta + 1.0) <= 0.0:
        raise DomainError("rho*(eta+1) must be positive when a=0")
    cuts = sorted({float(b) for b in breakpoints if a < b < x})
    edges = [a] + cuts + [x]
    value = 0.0
    err = 0.0
    evals = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        seg = _kernel_segment(f, params, x, lo, hi, cfg)
        value += seg.value
        err += seg.error_estimate
        evals += seg.evaluations
    return IntegralResult(value, err, evals)


def closed_form_monomial(params: "OperatorParams", sigma: float, x: float) -> float:
    """Exact operator value on f(t) = t^sigma with lower bound 0.

    The substitution u = (t/x)^rho collapses the kernel integral to a Beta
    function:

        rho^(-beta) * x^(kappa + rho*(eta+alpha) + sigma)
            * B(eta + sigma/rho + 1, alpha) / Gamma(alpha)

    This is the primary analytic oracle for the quadrature path.
    """
    if params.lower != 0.0:
        raise DomainError("closed form requires lower bound 0")
    if not params.rho > 0.0:
        raise DomainError("rho must be positive")
    if not params.alpha > 0.0:
        raise DomainError("alpha must be positive")
    b1 = params.eta + sigma / params.rho + 1.0
    if b1 <= 0.0:
        raise DomainError(
            "eta + sigma/rho + 1 must be positive for an integrable monomial"
        )
    log_val = (
        -params.beta * math.log(params.rho)
        + (params.kappa + params.rho * (params.eta + params.alpha) + sigma)
        * math.log(x)
        + log_beta(b1, params.alpha)
        - log_gamma(params.alpha)
    )
    return math.exp(log_val)
