"""Closed-form-vs-quadrature oracle sweep.

Over a fixed grid of operator parameters and monomial exponents, the full
numerically evaluated operator must match the analytic monomial value.
This is the primary accuracy gate for the quadrature path.
"""

from __future__ import annotations

from dataclasses import dataclass

from .functions import Monomial, TestFunction
from .operator_core import OperatorParams, evaluate
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, closed_form_monomial

__all__ = ["GRID_ALPHAS", "GRID_RHOS", "GRID_ETAS", "GRID_KAPPAS", "GRID_SIGMAS",
           "OraclePoint", "grid_points", "sweep"]

GRID_ALPHAS = (0.3, 0.5, 1.0, 1.7, 2.5)
GRID_RHOS = (0.5, 1.0, 2.0)
GRID_ETAS = (0.0, 0.5, 1.0)
GRID_KAPPAS = (0.0, 1.0)
GRID_SIGMAS = (0.0, 1.0, 2.0)


@dataclass(frozen=True)
class OraclePoint:
    params: OperatorParams
    sigma: float


def grid_points() -> list:
    """The 540-point (alpha, rho, eta, kappa, beta, sigma) grid."""
    points = []
    for alpha in GRID_ALPHAS:
        for rho in GRID_RHOS:
            for eta in GRID_ETAS:
                for kappa in GRID_KAPPAS:
                    for beta in (0.0, alpha):
                        for sigma in GRID_SIGMAS:
                            params = OperatorParams(
                                alpha=alpha, beta=beta, rho=rho, eta=eta, kappa=kappa
                            )
                            points.append(OraclePoint(params, sigma))
    return points


def sweep(x: float = 1.5, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Run the grid; returns (max relative error, results list).

    Each result is (point, quadrature value, closed-form value, rel error).
    """
    results = []
    worst = 0.0
    for point in grid_points():
        f = TestFunction(Monomial(point.sigma), (0.0, x))
        numeric = evaluate(point.params, f, x, cfg)
        exact = closed_form_monomial(point.params, point.sigma, x)
        rel = abs(numeric.value - exact) / abs(exact)
        worst = max(worst, rel)
        results.append((point, numeric.value, exact, rel))
    return worst, results
