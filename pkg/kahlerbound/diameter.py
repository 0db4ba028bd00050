# diameter.py
"""
Closed-form diameter bounds for compact Kahler manifolds with Ric >= rho.

The k-family: a Sobolev inequality at exponent p(k) = 1 + (m+1)/(m-1) * 4k/(k+1)^2
fed into the Bakry-Ledoux bound gives

    diam <= (pi / sqrt(rho)) * sqrt(p (m + (m-1) k) / (m (p - 2))).

k = 1 is Bonnet-Myers; k = 1 - 1/(2m) gives the closed form with 1 - 1/(24m).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Tuple

from .constants import boundary_exponent
from .errors import AdmissibilityError, DomainError
from .log import logger
from .search import scan_minimize
from .types import BoundMethod, BoundParams, CheckReport, DiameterBound, GeometryParams

# the optimizer stays this far inside the open admissible interval
K_MARGIN = 1e-9
SCAN_POINTS = 64


def bonnet_myers_bound(g: GeometryParams) -> float:
    return math.pi * math.sqrt((2 * g.m - 1) / g.rho)


def bakry_ledoux_bound(p: float, A: float) -> float:
    """pi * sqrt(2pA)/(p-2) from a Sobolev inequality with constant A."""
    if not p > 2:
        raise DomainError(f"p={p} must exceed 2")
    if not A > 0:
        raise DomainError(f"Sobolev constant A={A} must be positive")
    return math.pi * math.sqrt(2 * p * A) / (p - 2)


def admissible_k_interval(m: int) -> Tuple[float, float]:
    """Open interval of k with p(k) > 2, i.e. 4(m+1)k > (m-1)(k+1)^2."""
    if m < 2:
        raise DomainError(f"complex dimension m={m} must be >= 2")
    s = 2 * math.sqrt(2 * (m + 1))
    return (m + 3 - s) / (m - 1), (m + 3 + s) / (m - 1)


def family_radicand(m: int, k: float) -> float:
    """p(m + (m-1)k)/(m(p-2)) at p = p(k); the squared bound in units of pi^2/rho."""
    if not k > 0 or 4 * (m + 1) * k <= (m - 1) * (k + 1) ** 2:
        raise AdmissibilityError(f"k={k} outside the admissible interval {admissible_k_interval(m)}")
    p = boundary_exponent(m, k)
    return p * (m + (m - 1) * k) / (m * (p - 2))


def family_radicand_exact(m: int, k: Fraction) -> Tuple[Fraction, Fraction]:
    """(p, radicand) in exact rationals."""
    k = Fraction(k)
    p = 1 + Fraction(m + 1, m - 1) * 4 * k / (k + 1) ** 2
    if not k > 0 or p <= 2:
        raise AdmissibilityError(f"k={k} outside the admissible interval {admissible_k_interval(m)}")
    return p, p * (m + (m - 1) * k) / (m * (p - 2))


def family_bound(g: GeometryParams, k: float) -> DiameterBound:
    radicand = family_radicand(g.m, k)
    p = boundary_exponent(g.m, k)
    value = math.pi / math.sqrt(g.rho) * math.sqrt(radicand)
    return DiameterBound(BoundMethod.FamilyAtK, value, g, BoundParams(k=float(k), p=p))


def default_k(m: int) -> float:
    return 1 - 1 / (2 * m)


def closed_form_24m(g: GeometryParams) -> DiameterBound:
    value = math.pi / math.sqrt(g.rho) * math.sqrt(2 * g.m - 1) * (1 - 1 / (24 * g.m))
    return DiameterBound(BoundMethod.ClosedForm24m, value, g, BoundParams(k=default_k(g.m)))


def optimize_family(g: GeometryParams, tol: float = 1e-9) -> DiameterBound:
    """Minimize the k-family bound over the admissible interval.

    The result is numerical: 64-point pre-scan, golden-section refinement, and
    never worse than k = 1 - 1/(2m) or k = 1.
    """
    if not 0 < tol <= 1e-6:
        raise DomainError(f"tol={tol} must lie in (0, 1e-6]")
    m = g.m
    k_lo, k_hi = admissible_k_interval(m)

    def objective(k: float) -> float:
        try:
            return family_radicand(m, k)
        except AdmissibilityError:
            return math.inf

    k_star, best = scan_minimize(objective, k_lo + K_MARGIN, k_hi - K_MARGIN, SCAN_POINTS, tol)
    for k in (default_k(m), 1.0):
        v = objective(k)
        if v < best:
            k_star, best = k, v
    logger.debug("optimize_family m=%d: k*=%.12g radicand %.12g", m, k_star, best)
    value = math.pi / math.sqrt(g.rho) * math.sqrt(best)
    return DiameterBound(BoundMethod.FamilyOptimized, value, g,
                         BoundParams(k=k_star, p=boundary_exponent(m, k_star)))


def psi_exact(m: int, k: Fraction) -> Fraction:
    return 4 * (m + 1) * (2 * m - k) * k - (2 * m * m + (m - 1) * k) * (k + 1) ** 2


CHAIN_24M_STEPS = ("p_minus_2_positive", "psi_at_least_2", "p_minus_2_bound",
                   "numerator_bound", "gap_at_least_1_over_24m")


def chain_24m_steps(m: int) -> Dict[str, bool]:
    """Exact-rational truth values of the steps from k = 1 - 1/(2m) to the 1 - 1/(24m) factor."""
    k = 1 - Fraction(1, 2 * m)
    p, radicand = family_radicand_exact(m, k)
    return {
        "p_minus_2_positive": p - 2 > 0,
        "psi_at_least_2": psi_exact(m, k) >= 2,
        "p_minus_2_bound": m * (p - 2) * (k + 1) ** 2 <= Fraction(8 * m, m - 1),
        "numerator_bound": p * (m + (m - 1) * k) <= Fraction(2 * m * (2 * m - 1), m - 1),
        # sqrt(2m-1) - sqrt(radicand) >= sqrt(2m-1)/(24m), squared
        "gap_at_least_1_over_24m": radicand <= (2 * m - 1) * (1 - Fraction(1, 24 * m)) ** 2,
    }


def chain_24m_check(m_max: int) -> CheckReport:
    if m_max < 2:
        raise DomainError(f"m_max={m_max} must be >= 2")
    failures = {name: 0 for name in CHAIN_24M_STEPS}
    first_failure = None
    for m in range(2, m_max + 1):
        steps = chain_24m_steps(m)
        for name, ok in steps.items():
            if not ok:
                failures[name] += 1
                if first_failure is None:
                    first_failure = m
                    logger.info("chain_24m: step %s fails at m=%d", name, m)
    total = sum(failures.values())
    return CheckReport.from_residual("chain_24m", total, ("k=1-1/(2m)", "exact rationals"),
                                     m_max=m_max, failures=failures, first_failure=first_failure)


def rescale(value: float, rho_from: float, rho_to: float) -> float:
    """Diameter bounds scale as 1/sqrt(rho)."""
    return value * math.sqrt(rho_from / rho_to)
