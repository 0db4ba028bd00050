# quadrature.py
"""
Numerical integration on an interval.

adaptive_simpson: composite Simpson refined where the Richardson estimate
(S_halves - S_whole)/15 exceeds the local share of the tolerance. The whole
active set is refined at once, so the integrand must accept numpy arrays.

gauss_legendre: fixed-order rule for smooth integrands (scans, model space).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Tuple

import numpy as np

from .log import logger
from .types import QuadratureEstimate

EPSABS = 1e-12
EPSREL = 1e-12
MAX_INTERVALS = 2 ** 20
INITIAL_PANELS = 64
# rounding floor on reported errors, in units of eps*|value|
ROUNDING_FLOOR = 64

Integrand = Callable[[np.ndarray], np.ndarray]


def _as_vectorized(f: Integrand) -> Integrand:
    def g(x):
        return np.broadcast_to(np.asarray(f(x), dtype=float), np.shape(x))
    return g


def _simpson(h, fa, fm, fb):
    return h / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(f: Integrand, a: float, b: float, epsabs: float = EPSABS,
                     epsrel: float = EPSREL, initial_panels: int = INITIAL_PANELS,
                     max_intervals: int = MAX_INTERVALS) -> QuadratureEstimate:
    """Integrate f over [a, b]; returns value and a Richardson error estimate."""
    if a == b:
        return QuadratureEstimate(0.0, 0.0)
    if a > b:
        return adaptive_simpson(f, b, a, epsabs, epsrel, initial_panels, max_intervals).scaled(-1.0)

    f = _as_vectorized(f)
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    flo, fhi = f(lo), f(hi)
    fmid = f(0.5 * (lo + hi))
    length = b - a

    total = 0.0
    error = 0.0
    tol = None
    intervals = lo.size
    while lo.size:
        mid = 0.5 * (lo + hi)
        h = hi - lo
        fl = f(0.5 * (lo + mid))
        fr = f(0.5 * (mid + hi))
        whole = _simpson(h, flo, fmid, fhi)
        halves = _simpson(0.5 * h, flo, fl, fmid) + _simpson(0.5 * h, fmid, fr, fhi)
        err = (halves - whole) / 15.0

        if tol is None:
            scale = float(np.sum(np.abs(halves)))
            tol = min(epsabs, epsrel * scale)

        done = np.abs(err) <= tol * h / length
        if intervals + np.count_nonzero(~done) > max_intervals:
            logger.warning("adaptive_simpson: subdivision cap %d hit on [%g, %g]", max_intervals, a, b)
            done[:] = True

        total += float(np.sum(halves[done] + err[done]))
        error += float(np.sum(np.abs(err[done])))

        keep = ~done
        intervals += int(np.count_nonzero(keep))
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        flo, fl, fmid, fr, fhi = flo[keep], fl[keep], fmid[keep], fr[keep], fhi[keep]
        # children [lo, mid] and [mid, hi] reuse the quarter-point values as midpoints
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        flo, fhi = np.concatenate([flo, fmid]), np.concatenate([fmid, fhi])
        fmid = np.concatenate([fl, fr])

    logger.debug("adaptive_simpson [%g, %g]: %d intervals, err %.3g", a, b, intervals, error)
    floor = ROUNDING_FLOOR * np.finfo(float).eps * abs(total)
    return QuadratureEstimate(total, max(error, floor))


@lru_cache(maxsize=32)
def legendre_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(f: Integrand, a: float, b: float, order: int = 64) -> float:
    f = _as_vectorized(f)
    x, w = legendre_rule(order)
    half = 0.5 * (b - a)
    return float(half * np.dot(w, f(0.5 * (a + b) + half * x)))


def gauss_legendre_batch(f: Callable[[np.ndarray], np.ndarray], a: np.ndarray, b: np.ndarray,
                         order: int = 256) -> np.ndarray:
    """Many intervals at once: f receives a (len(a), order) array of nodes."""
    x, w = legendre_rule(order)
    a = np.asarray(a, dtype=float)[:, None]
    b = np.asarray(b, dtype=float)[:, None]
    half = 0.5 * (b - a)
    nodes = 0.5 * (a + b) + half * x[None, :]
    return (half[:, 0]) * (f(nodes) @ w)
