# rayleigh.py
"""
Diameter bound from the Rayleigh-quotient inequality

    2(2m - 1) <= (pi/d)^2 * N(d)/D(d),
    N = int_0^{d/2} sin^2(pi r/d) sin^{2m-1} r dr,
    D = int_0^{d/2} cos^2(pi r/d) sin^{2m-1} r dr,

which every compact Kahler manifold with Ric >= 2m - 1 and diameter d
satisfies. Also: the sine-power integrals I_n(theta) = int_0^theta sin^n, the
closed form pi(1 - 1/(200 sqrt(m) ln m)) and a replay of the argument behind it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Tuple

import numpy as np
from scipy.optimize import bisect
from scipy.special import gammaln

from .errors import DegenerateDomainError, DomainError, SolverError
from .log import logger
from .quadrature import adaptive_simpson, gauss_legendre_batch
from .search import sign_changes
from .types import (BoundMethod, BoundParams, ChainReport, ChainStep, DiameterBound,
                    GeometryParams, QuadratureEstimate)

EPS = np.finfo(float).eps
# above this power sin^n theta is formed as exp(n log sin theta)
LOG_POWER_THRESHOLD = 300
# backward recurrence start: relative error damped below e^-46 ~ 1e-20
BACKWARD_DAMPING = 46.0
SCAN_POINTS = 2048
SCAN_ORDER = 256
MIN_DENOMINATOR = 1e-300
# largest |margin| accepted at the returned d*
MARGIN_TOL = 1e-8
REFINE_ROUNDS = 4


def _check_theta(theta: float) -> None:
    if not 0 <= theta <= math.pi:
        raise DomainError(f"theta={theta} outside [0, pi]")


def _sin_power(s: float, e: int) -> float:
    if e > LOG_POWER_THRESHOLD:
        return math.exp(e * math.log(s)) if s > 0 else 0.0
    return s ** e


def _forward(n: int, theta: float, s: float, c: float) -> float:
    i0, i1 = theta, 2 * math.sin(0.5 * theta) ** 2
    if n == 0:
        return i0
    if n == 1:
        return i1
    prev = [i0, i1]
    for i in range(2, n + 1):
        cur = ((i - 1) * prev[i % 2] - _sin_power(s, i - 1) * c) / i
        prev[i % 2] = cur
    return prev[n % 2]


def _backward(n: int, s: float, c: float) -> float:
    # I_{n-2} = (n I_n + sin^{n-1} cos) / (n - 1), started from I_N ~ s^{N+1}/((N+1) c)
    j = math.ceil(BACKWARD_DAMPING / (-2.0 * math.log(s)))
    top = n + 2 * j
    cur = math.exp((top + 1) * math.log(s) - math.log((top + 1) * c))
    for i in range(top, n, -2):
        cur = (i * cur + _sin_power(s, i - 1) * c) / (i - 1)
    return cur


def sin_power_recurrence(n: int, theta: float) -> QuadratureEstimate:
    """I_n(theta) by the integration-by-parts recurrence, run in its stable direction."""
    if n < 0:
        raise DomainError(f"n={n} must be >= 0")
    _check_theta(theta)
    if theta == 0.0:
        return QuadratureEstimate(0.0, 0.0)
    s, c = math.sin(theta), math.cos(theta)
    # upward, the relative error grows like sin(theta)^-2 per step while I_n decays
    upward = theta >= 0.5 * math.pi or n < 2 or -2.0 * n * math.log(s) <= 4.0
    value = _forward(n, theta, s, c) if upward else _backward(n, s, c)
    return QuadratureEstimate(value, (n + 2) * 4 * EPS * abs(value))


def sin_power_quadrature(n: int, theta: float) -> QuadratureEstimate:
    if n < 0:
        raise DomainError(f"n={n} must be >= 0")
    _check_theta(theta)
    return adaptive_simpson(lambda t: np.sin(t) ** n, 0.0, theta)


def sin_power_integral(n: int, theta: float, backend: str = "recurrence") -> QuadratureEstimate:
    if backend == "recurrence":
        return sin_power_recurrence(n, theta)
    if backend == "quadrature":
        return sin_power_quadrature(n, theta)
    raise DomainError(f"unknown backend {backend!r}")


def wallis_factor(m: int) -> Fraction:
    """2^{2m} (m!)^2 / (2m+1)! = I_{2m+1}(pi/2)."""
    if m < 1:
        raise DomainError(f"m={m} must be >= 1")
    return Fraction(4 ** m * math.factorial(m) ** 2, math.factorial(2 * m + 1))


def stirling_bounds(n: int) -> Tuple[float, float, float]:
    """log of sqrt(2 pi) (n/e)^n sqrt(n), n!, e (n/e)^n sqrt(n)."""
    if n < 1:
        raise DomainError(f"n={n} must be >= 1")
    core = n * math.log(n) - n + 0.5 * math.log(n)
    return 0.5 * math.log(2 * math.pi) + core, float(gammaln(n + 1)), 1.0 + core


def harmonic_odd_sum(m: int) -> Fraction:
    return sum((Fraction(1, 2 * j + 1) for j in range(1, m + 1)), Fraction(0))


def _check_md(m: int, d: float) -> None:
    if isinstance(m, bool) or int(m) != m or m < 2:
        raise DomainError(f"complex dimension m={m!r} must be an integer >= 2")
    if not 0 < d <= math.pi:
        raise DomainError(f"d={d} outside (0, pi]")


def rayleigh_integrals(m: int, d: float) -> Tuple[QuadratureEstimate, QuadratureEstimate]:
    _check_md(m, d)
    w = math.pi / d
    n = 2 * m - 1
    num = adaptive_simpson(lambda r: np.sin(w * r) ** 2 * np.sin(r) ** n, 0.0, 0.5 * d)
    den = adaptive_simpson(lambda r: np.cos(w * r) ** 2 * np.sin(r) ** n, 0.0, 0.5 * d)
    return num, den


def rayleigh_ratio(m: int, d: float) -> QuadratureEstimate:
    num, den = rayleigh_integrals(m, d)
    if abs(den.value) < MIN_DENOMINATOR:
        raise DegenerateDomainError(f"denominator {den.value!r} vanishes at m={m}, d={d}")
    ratio = num.value / den.value
    err = abs(ratio) * (num.error_estimate / abs(num.value) + den.error_estimate / abs(den.value))
    return QuadratureEstimate(ratio, err)


def prop_p_margin(m: int, d: float) -> float:
    """(pi/d)^2 N/D - 2(2m-1); an actual diameter d must make this nonnegative."""
    return (math.pi / d) ** 2 * rayleigh_ratio(m, d).value - 2 * (2 * m - 1)


def scan_margins(m: int, d: np.ndarray, order: int = SCAN_ORDER) -> np.ndarray:
    """prop_p_margin on a grid with a fixed Gauss-Legendre rule.

    The weight is divided by sin^{2m-1}(d/2) so small d does not underflow;
    the factor cancels in N/D.
    """
    d = np.asarray(d, dtype=float)
    n = 2 * m - 1
    half = 0.5 * d

    def weighted(trig):
        def f(r):
            w = np.exp(n * (np.log(np.sin(r)) - np.log(np.sin(half))[:, None]))
            return trig((np.pi / d)[:, None] * r) ** 2 * w
        return f

    num = gauss_legendre_batch(weighted(np.sin), np.zeros_like(d), half, order)
    den = gauss_legendre_batch(weighted(np.cos), np.zeros_like(d), half, order)
    return (np.pi / d) ** 2 * num / den - 2 * (2 * m - 1)


def _bisect(f, lo: float, hi: float, xtol: float, m: int) -> Tuple[float, int]:
    root, info = bisect(f, lo, hi, xtol=xtol, full_output=True, disp=False)
    if not info.converged:
        logger.error("solve_max_diameter: bisection did not converge for m=%d", m)
        raise SolverError(f"bisection did not converge for m={m}")
    return root, info.iterations


def solve_max_diameter(m: int, tol: float = 1e-10) -> DiameterBound:
    """Largest d in (0, pi) with nonnegative margin, at Ric >= 2m - 1.

    Bisection runs to width tol or to the width at which the scanned slope
    keeps |margin| under MARGIN_TOL, whichever is finer.
    """
    g = GeometryParams.einstein_normalized(m)
    if not 0 < tol <= 1e-8:
        raise DomainError(f"tol={tol} must lie in (0, 1e-8]")
    grid = np.pi * np.arange(1, SCAN_POINTS + 1) / SCAN_POINTS
    margins = scan_margins(m, grid)
    crossings = sign_changes(margins)
    if not crossings.size:
        logger.error("solve_max_diameter: no sign change of the margin for m=%d", m)
        raise SolverError(f"no sign change of the margin on (0, pi] for m={m}")
    i = int(crossings[-1])
    lo, hi = float(grid[i]), float(grid[i + 1])
    slope = float((margins[i + 1] - margins[i]) / (hi - lo))

    def f(x):
        return prop_p_margin(m, x)

    f_lo, f_hi = f(lo), f(hi)
    if not (f_lo >= 0 > f_hi):
        logger.error("solve_max_diameter: bracket [%g, %g] has margins %g, %g", lo, hi, f_lo, f_hi)
        raise SolverError(f"margin does not change sign on [{lo}, {hi}] for m={m}")
    if f_lo == 0.0:
        root, iterations = lo, 0
        margin = 0.0
    else:
        xtol = min(tol, MARGIN_TOL / (4 * max(abs(slope), 1.0)))
        root, iterations = _bisect(f, lo, hi, xtol, m)
        margin = f(root)
        for _ in range(REFINE_ROUNDS):
            if abs(margin) <= MARGIN_TOL:
                break
            xtol /= 16
            root, steps = _bisect(f, lo, hi, xtol, m)
            iterations += steps
            margin = f(root)
        else:
            if abs(margin) > MARGIN_TOL:
                logger.warning("solve_max_diameter m=%d: margin %.3g at d*=%.15g exceeds %g",
                               m, margin, root, MARGIN_TOL)
    logger.debug("solve_max_diameter m=%d: d*=%.15g, margin %.3g after %d steps", m, root, margin, iterations)
    return DiameterBound(BoundMethod.RayleighSolve, float(root), g, BoundParams(d_star=float(root)),
                         extra={"margin": margin, "iterations": iterations, "slope": slope,
                                "bracket": [lo, hi]})


def closed_form_200(m: int) -> DiameterBound:
    g = GeometryParams.einstein_normalized(m)
    value = math.pi * (1 - 1 / (200 * math.sqrt(g.m) * math.log(g.m)))
    return DiameterBound(BoundMethod.ClosedForm200, value, g)


def chain_threshold(m: int) -> float:
    """Upper end of the epsilon range assumed in the contradiction argument."""
    return 1 / (100 * math.sqrt(m) * math.log(m))


def contradiction_reached(m: int, epsilon: float) -> bool:
    return 2 * (2 * m - 1) > 1.5 * (1 + epsilon) ** 2 * (2 * m + 1)


def _step(name: str, lhs: float, relation: str, rhs: float) -> ChainStep:
    if relation == ">=":
        holds = lhs >= rhs
    elif relation == "<=":
        holds = lhs <= rhs
    elif relation == "<":
        holds = lhs < rhs
    else:
        holds = lhs > rhs
    return ChainStep(name, float(lhs), relation, float(rhs), bool(holds))


def replay_chain(m: int, epsilon: float, samples: int = 64) -> ChainReport:
    """Evaluate every inequality of the contradiction argument at d = pi/(1+epsilon).

    Nothing is forced: each step carries its own truth value, and epsilon beyond
    the assumed range only marks the report.
    """
    if isinstance(m, bool) or int(m) != m or m < 2:
        raise DomainError(f"complex dimension m={m!r} must be an integer >= 2")
    if not epsilon > 0:
        raise DomainError(f"epsilon={epsilon} must be positive")
    m = int(m)
    d = math.pi / (1 + epsilon)
    theta = 0.5 * d
    in_hypothesis = epsilon < chain_threshold(m)
    steps: List[ChainStep] = []

    # cos/sin bounds at sampled t in (0, pi/2); the cosine lower bound is
    # cos x - 1 + x^2/2 = 2 (x/2 - sin(x/2)) (x/2 + sin(x/2))
    x = epsilon * np.linspace(0.0, 0.5 * np.pi, samples + 2)[1:-1]
    y = 0.5 * x
    slack = min(
        float(np.min(1.0 - np.cos(x))),
        float(np.min(2 * (y - np.sin(y)) * (y + np.sin(y)))),
        float(np.min(x - np.sin(x))),
        float(np.min(np.sin(x) - 0.5 * x)),
    )
    steps.append(_step("trig_bounds", slack, ">=", 0.0))

    # cos(d/2) = sin(epsilon/(1+epsilon) * pi/2)
    cos_half = math.sin(epsilon / (1 + epsilon) * 0.5 * math.pi)
    steps.append(_step("cos_half_d_lower", cos_half, ">=", 0.5 * epsilon))
    steps.append(_step("cos_half_d_upper", cos_half, "<=", 2 * epsilon))

    odd = {n: sin_power_integral(n, theta).value for n in range(1, 2 * m + 2, 2)}
    step_slack = min(odd[2 * j + 1] - (2 * j / (2 * j + 1) * odd[2 * j - 1] - 2 * epsilon / (2 * j + 1))
                     for j in range(1, m + 1))
    steps.append(_step("recurrence_step", step_slack, ">=", 0.0))

    i_top = odd[2 * m + 1]
    i_low = odd[2 * m - 1]
    wallis = wallis_factor(m)
    harmonic = harmonic_odd_sum(m)
    iterated = float(wallis) * (1 - cos_half) - 2 * epsilon * float(harmonic)
    steps.append(_step("iterated_lower", i_top, ">=", iterated))
    steps.append(_step("harmonic_vs_log", float(harmonic), "<=", math.log(2 * m + 1)))
    steps.append(_step("wallis_vs_sqrt", float(wallis * wallis * (2 * m + 1)), ">=", 1.0))
    stirling_lower = 1 / math.sqrt(2 * m + 1) - 2 * epsilon * math.log(2 * m + 1)
    steps.append(_step("stirling_relaxation", iterated, ">=", stirling_lower))
    steps.append(_step("stirling_lower", i_top, ">=", stirling_lower))
    steps.append(_step("four_fifths_lower", i_top, ">=", 0.8 / math.sqrt(2 * m + 1)))
    steps.append(_step("epsilon_absorbed", 2 * epsilon / m, "<", i_top / (3 * (2 * m + 1))))

    num, den = rayleigh_integrals(m, d)
    steps.append(_step("denominator_lower", den.value, ">=", 2 / 3 * i_low / (2 * m + 1)))
    ratio = num.value / den.value
    steps.append(_step("ratio_upper", ratio, "<=", 1.5 * (2 * m + 1)))

    contradiction = contradiction_reached(m, epsilon)
    margin = (math.pi / d) ** 2 * ratio - 2 * (2 * m - 1)
    if not contradiction:
        logger.info("replay_chain m=%d eps=%g: final comparison does not contradict", m, epsilon)
    return ChainReport(m, float(epsilon), d, in_hypothesis, tuple(steps), contradiction,
                       extra={"prop_margin": margin, "lhs": 2.0 * (2 * m - 1),
                              "rhs": 1.5 * (1 + epsilon) ** 2 * (2 * m + 1)})
