# model_check.py
"""
Numerical checks of the functional inequalities on CP^1 x CP^1.

The model is a product of two round 2-spheres of Gaussian curvature rho with
total volume 1: complex dimension 2, Ric = rho. Test functions are separable,
F = f(theta1) g(theta2) with zonal factors, so every integral is a product of
one-dimensional Gauss-Legendre sums in x = cos(theta) against the normalized
weight (1/2) sin(theta) d(theta) = (1/2) dx.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Sequence

import numpy as np

from .constants import kahler_beckner_constant, kahler_sobolev_constant, log_sobolev_constant
from .errors import DegenerateDomainError, DomainError
from .log import logger
from .quadrature import gauss_legendre, legendre_rule
from .types import CheckReport, GeometryParams, ManifoldSpec, ProductFunction, ZonalFunction

MODEL_M = 2
MARGIN_TOL = 1e-9
VIOLATION_TOL = 1e-6
BECKNER_P_GRID = (1.1, 1.25, 1.5, 1.75, 2.0)
SOBOLEV_P_GRID = (2.5, 3.0, 3.5, 4.0)
RANDOM_DEGREE = 4
FAMILIES = ("beckner", "sobolev")


def _geometry(spec: ManifoldSpec) -> GeometryParams:
    return GeometryParams(MODEL_M, spec.rho)


def _mean(spec: ManifoldSpec, h: Callable[[np.ndarray], np.ndarray]) -> float:
    # normalized area on the sphere is d(cos theta)/2
    return 0.5 * gauss_legendre(h, -1.0, 1.0, spec.order)


def integrate_product(spec: ManifoldSpec, F: ProductFunction) -> float:
    return _mean(spec, F.f.values) * _mean(spec, F.g.values)


def _power_integral(spec: ManifoldSpec, F: ProductFunction, s: float) -> float:
    """int |F|^s."""
    return _mean(spec, lambda x: np.abs(F.f.values(x)) ** s) * _mean(spec, lambda x: np.abs(F.g.values(x)) ** s)


def _grad_sq(spec: ManifoldSpec, z: ZonalFunction) -> float:
    return _mean(spec, lambda x: z.theta_derivative(x) ** 2)


def dirichlet_energy(spec: ManifoldSpec, F: ProductFunction) -> float:
    """int |grad F|^2, using |grad u|^2 = rho (du/dtheta)^2 on each factor."""
    f2 = _power_integral(spec, ProductFunction(F.f), 2)
    g2 = _power_integral(spec, ProductFunction(F.g), 2)
    return spec.rho * (_grad_sq(spec, F.f) * g2 + f2 * _grad_sq(spec, F.g))


def variance(spec: ManifoldSpec, F: ProductFunction) -> float:
    return _power_integral(spec, F, 2) - integrate_product(spec, F) ** 2


def rayleigh_quotient(spec: ManifoldSpec, F: ProductFunction) -> float:
    var = variance(spec, F)
    if var <= 0:
        raise DegenerateDomainError("Rayleigh quotient of a constant function")
    return dirichlet_energy(spec, F) / var


def check_poincare(spec: ManifoldSpec, F: ProductFunction) -> float:
    return dirichlet_energy(spec, F) / (2 * spec.rho) - variance(spec, F)


def check_beckner(spec: ManifoldSpec, F: ProductFunction, p: float) -> float:
    if not 1 < p <= 2:
        raise DomainError(f"p={p} outside (1, 2]")
    x, _ = legendre_rule(spec.order)
    if not F.is_positive_on(x):
        raise DomainError("Beckner check needs a strictly positive function")
    deficit = _power_integral(spec, F, 2) - _power_integral(spec, F, 2 / p) ** p
    return kahler_beckner_constant(_geometry(spec), p) * dirichlet_energy(spec, F) - deficit


def check_sobolev(spec: ManifoldSpec, F: ProductFunction, p: float) -> float:
    if not 2 < p <= 4:
        raise DomainError(f"p={p} outside (2, 4]")
    deficit = _power_integral(spec, F, p) ** (2 / p) - _power_integral(spec, F, 2)
    return kahler_sobolev_constant(_geometry(spec), p) * dirichlet_energy(spec, F) - deficit


def entropy(spec: ManifoldSpec, F: ProductFunction) -> float:
    """int F^2 log F^2 - int F^2 log int F^2."""
    def ent_part(z):
        return _mean(spec, lambda x: z.values(x) ** 2 * np.log(z.values(x) ** 2))
    f2 = _power_integral(spec, ProductFunction(F.f), 2)
    g2 = _power_integral(spec, ProductFunction(F.g), 2)
    total = f2 * g2
    # log(f^2 g^2) splits across the factors
    return ent_part(F.f) * g2 + f2 * ent_part(F.g) - total * np.log(total)


def check_log_sobolev(spec: ManifoldSpec, F: ProductFunction) -> float:
    x, _ = legendre_rule(spec.order)
    if not F.is_positive_on(x):
        raise DomainError("log-Sobolev check needs a strictly positive function")
    return log_sobolev_constant(_geometry(spec)) * dirichlet_energy(spec, F) - entropy(spec, F)


def check_lambda1(spec: ManifoldSpec, tol: float = 1e-8) -> CheckReport:
    """Rayleigh quotients of the first eigenfunctions; equality in lambda_1 >= 2(2m-1) at rho = 3."""
    first = ProductFunction(ZonalFunction.polynomial(0.0, 1.0))
    both = ProductFunction(ZonalFunction.polynomial(0.0, 1.0), ZonalFunction.polynomial(0.0, 1.0))
    q1 = rayleigh_quotient(spec, first)
    q2 = rayleigh_quotient(spec, both)
    failures = int(abs(q1 - 2 * spec.rho) > tol) + int(abs(q2 - 4 * spec.rho) > tol)
    return CheckReport.from_residual(
        "lambda1", failures, ("rho=2m-1" if spec.rho == 2 * MODEL_M - 1 else f"rho={spec.rho}",),
        quotient=q1, product_quotient=q2, expected=2 * spec.rho,
        lambda1_bound=2.0 * (2 * MODEL_M - 1),
    )


def random_function(seed: int, family: str, index: int, degree: int = RANDOM_DEGREE) -> ProductFunction:
    """exp(sum_j c_j cos^j) on each factor, c_j ~ U[-1, 1], from stream (seed, family, index)."""
    ss = np.random.SeedSequence(seed, spawn_key=(FAMILIES.index(family), index))
    rng = np.random.default_rng(ss)
    c = rng.uniform(-1.0, 1.0, size=(2, degree + 1))
    return ProductFunction(ZonalFunction.exp_polynomial(*c[0]), ZonalFunction.exp_polynomial(*c[1]))


def _one_check(spec: ManifoldSpec, family: str, seed: int, p_grid: Sequence[float], index: int) -> Dict:
    F = random_function(seed, family, index)
    energy = dirichlet_energy(spec, F)
    margins, ratios = [], []
    for p in p_grid:
        if family == "beckner":
            const = kahler_beckner_constant(_geometry(spec), p)
            margin = check_beckner(spec, F, p)
        else:
            const = kahler_sobolev_constant(_geometry(spec), p)
            margin = check_sobolev(spec, F, p)
        margins.append(margin)
        scale = const * energy
        ratios.append((scale - margin) / scale if scale > 0 else 0.0)
    return {"index": index, "min_margin": min(margins), "best_ratio": max(ratios)}


def random_suite(spec: ManifoldSpec, family: str, seed: int = 0, count: int = 200,
                 p_grid: Sequence[float] = (), workers: int = 1) -> CheckReport:
    """Seeded random-function sweep; a margin below -1e-6 counts as a violation."""
    if family not in FAMILIES:
        raise DomainError(f"unknown family {family!r}, expected one of {FAMILIES}")
    p_grid = tuple(p_grid) or (BECKNER_P_GRID if family == "beckner" else SOBOLEV_P_GRID)

    def run(i):
        return _one_check(spec, family, seed, p_grid, i)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, range(count)))
    else:
        rows = [run(i) for i in range(count)]

    margins = np.array([r["min_margin"] for r in rows])
    violations = int(np.count_nonzero(margins < -VIOLATION_TOL))
    below = int(np.count_nonzero(margins < -MARGIN_TOL))
    if violations:
        logger.warning("random_suite %s: %d violations, min margin %.3g", family, violations, margins.min())
    return CheckReport.from_residual(
        f"model_{family}", violations, ("CP1xCP1", f"rho={spec.rho}"),
        checks=count, p_grid=list(p_grid), violations=violations, below_tolerance=below,
        min_margin=float(margins.min()) if count else 0.0,
        best_ratio=max((r["best_ratio"] for r in rows), default=0.0),
        seed=seed,
    )
