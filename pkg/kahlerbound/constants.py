# constants.py
"""
Closed-form Beckner-Sobolev constants on compact manifolds with Ric >= rho.

All constants are normalized for Vol(M) = 1 and scale as 1/rho. The Kahler
constants take the complex dimension m; the Riemannian baselines take the real
dimension n (n = 2m for comparison).
"""

from __future__ import annotations

import math
from typing import Optional, Tuple

from .errors import AdmissibilityError, DomainError
from .types import ConstantFamily, GeometryParams, InequalityConstant

# floating p may overshoot the critical exponent by a rounding error
RADICAND_SLACK = 1e-12
P_SLACK = 1e-12


def _check_rho(rho: float) -> None:
    if not rho > 0:
        raise DomainError(f"Ricci lower bound rho={rho!r} must be positive")


def _check_sobolev_p(p: float, hi: float) -> None:
    if not 2 <= p <= hi * (1 + P_SLACK):
        raise DomainError(f"p={p} outside [2, {hi}]")


def critical_exponent(m: int) -> float:
    """2m/(m-1): the Sobolev exponent 2n/(n-2) of real dimension n = 2m."""
    if m < 2:
        raise DomainError(f"complex dimension m={m} must be >= 2")
    return 2 * m / (m - 1)


def boundary_exponent(m: int, k: float) -> float:
    """Largest p for which the k-family inequality holds: 1 + (m+1)/(m-1) * 4k/(k+1)^2."""
    if m < 2:
        raise DomainError(f"complex dimension m={m} must be >= 2")
    return 1 + (m + 1) / (m - 1) * 4 * k / (k + 1) ** 2


def beckner_rate(m: int, p: float) -> float:
    """((m-1)p + 2)/m, the decay factor of the heat-flow argument; C_B = ((p-1)/p) * 2/(rate * rho)."""
    return ((m - 1) * p + 2) / m


def riemannian_sobolev_constant(n: int, p: float, rho: float) -> float:
    if isinstance(n, bool) or int(n) != n or n < 3:
        raise DomainError(f"real dimension n={n!r} must be an integer >= 3")
    _check_rho(rho)
    _check_sobolev_p(p, 2 * n / (n - 2))
    return (n - 1) * (p - 2) / (n * rho)


def riemannian_beckner_constant(n: int, p: float, rho: float) -> float:
    """Riemannian constant in Beckner form; (n-1)/(n rho) at p = 2 (Lichnerowicz)."""
    if isinstance(n, bool) or int(n) != n or n < 2:
        raise DomainError(f"real dimension n={n!r} must be an integer >= 2")
    _check_rho(rho)
    if not 1 < p <= 2:
        raise DomainError(f"p={p} outside (1, 2]")
    return (p - 1) / p * 2 * (n - 1) / (n * rho)


def kahler_sobolev_constant(g: GeometryParams, p: float) -> float:
    m, rho = g.m, g.rho
    crit = g.critical_exponent
    _check_sobolev_p(p, crit)
    radicand = (m + 1) * (2 * m - (m - 1) * p)
    if abs(p - crit) <= P_SLACK * crit:
        # the radicand vanishes at the critical exponent; sqrt would amplify its rounding
        radicand = 0.0
    elif radicand < 0:
        if radicand < -RADICAND_SLACK:
            raise DomainError(f"negative radicand {radicand} at p={p}")
        radicand = 0.0
    return (p - 2) / ((p - 1) * 2 * m * rho) * (2 * m + p + 1 - 2 * math.sqrt(radicand))


def kahler_beckner_constant(g: GeometryParams, p: float) -> float:
    if not 1 < p <= 2:
        raise DomainError(f"p={p} outside (1, 2]")
    m = g.m
    return (p - 1) / p * (2 * m) / (((m - 1) * p + 2) * g.rho)


def log_sobolev_constant(g: GeometryParams) -> float:
    return 2 * g.m / ((g.m + 1) * g.rho)


def optimal_k_for_p(m: int, p: float) -> float:
    """Smaller root of (p-1)(m-1)(k+1)^2 = 4(m+1)k.

    The k-family constant increases with k, so the smaller root is the optimal one.
    """
    if m < 2:
        raise DomainError(f"complex dimension m={m} must be >= 2")
    if not p > 2:
        raise DomainError(f"p={p} must exceed 2")
    alpha = (p - 1) * (m - 1)
    gap = (m + 1) - alpha  # equals 2m - (m-1)p
    if gap < 0:
        if gap < -RADICAND_SLACK:
            raise DomainError(f"p={p} exceeds the critical exponent {critical_exponent(m)}")
        gap = 0.0
    return (2 * (m + 1) - alpha - 2 * math.sqrt((m + 1) * gap)) / alpha


def proposition_c_constant(g: GeometryParams, p: float, k: float) -> float:
    m = g.m
    if not p > 2:
        raise DomainError(f"p={p} must exceed 2")
    if not k > 0:
        raise AdmissibilityError(f"k={k} must be positive")
    limit = boundary_exponent(m, k)
    if p > limit * (1 + P_SLACK):
        raise AdmissibilityError(f"p={p} exceeds 1 + (m+1)/(m-1)*4k/(k+1)^2 = {limit} at k={k}")
    return (m + (m - 1) * k) * (p - 2) / (2 * m * g.rho)


def valid_p_range(family: ConstantFamily, g: GeometryParams) -> Tuple[float, float]:
    if family in (ConstantFamily.KahlerSobolev, ConstantFamily.RiemannianSobolev, ConstantFamily.PropositionC):
        return (2.0, g.critical_exponent)
    if family in (ConstantFamily.KahlerBeckner, ConstantFamily.RiemannianBeckner):
        return (1.0, 2.0)
    if family is ConstantFamily.LogSobolev:
        return (1.0, 1.0)
    return (2.0, 2.0)


def inequality_constant(family: ConstantFamily, g: GeometryParams, p: float,
                        k: Optional[float] = None) -> InequalityConstant:
    """Evaluate a constant of the given family and wrap it as a tagged record."""
    family = ConstantFamily(family)
    if family is ConstantFamily.RiemannianSobolev:
        value = riemannian_sobolev_constant(g.real_dimension, p, g.rho)
    elif family is ConstantFamily.RiemannianBeckner:
        value = riemannian_beckner_constant(g.real_dimension, p, g.rho)
    elif family is ConstantFamily.KahlerSobolev:
        value = kahler_sobolev_constant(g, p)
    elif family is ConstantFamily.KahlerBeckner:
        value = kahler_beckner_constant(g, p)
    elif family is ConstantFamily.LogSobolev:
        value = log_sobolev_constant(g)
    elif family is ConstantFamily.Poincare:
        value = kahler_beckner_constant(g, 2.0)
    else:
        if k is None:
            raise AdmissibilityError("the PropositionC family needs k")
        value = proposition_c_constant(g, p, k)
    return InequalityConstant(
        family=family,
        p=float(p),
        value=value,
        valid_p_range=valid_p_range(family, g),
        k=k if family is ConstantFamily.PropositionC else None,
        extra={"m": g.m, "rho": g.rho},
    )
