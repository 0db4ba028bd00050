# search.py
import math
from typing import Callable, List, Tuple

import numpy as np

from .log import logger

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = 1e-9) -> Tuple[float, float]:
    """
    Golden-section search for the minimum of f on [a, b].

    f should have a single local minimum in [a, b]. Returns (x, f(x)) for the
    better of the two final evaluation points; the minimizer lies within tol of x.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)

    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(n - 1):
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    logger.debug("golden_section: %d steps, bracket [%.12g, %.12g]", n, a, b)
    return (c, yc) if yc < yd else (d, yd)


def local_minima(values: np.ndarray) -> List[int]:
    """Indices of interior grid points no larger than both neighbours, plus minimal endpoints."""
    v = np.asarray(values, dtype=float)
    idx = [i for i in range(1, v.size - 1) if v[i] <= v[i - 1] and v[i] <= v[i + 1]]
    if v.size > 1 and v[0] < v[1]:
        idx.insert(0, 0)
    if v.size > 1 and v[-1] < v[-2]:
        idx.append(v.size - 1)
    return idx


def scan_minimize(f: Callable[[float], float], a: float, b: float, points: int = 64,
                  tol: float = 1e-9) -> Tuple[float, float]:
    """Grid pre-scan, then golden-section refinement on the bracket of the best grid point."""
    grid = np.linspace(a, b, points)
    values = np.array([f(x) for x in grid])
    minima = local_minima(values)
    if len(minima) > 1:
        logger.warning("scan_minimize: %d local minima on [%g, %g], refining the global one",
                       len(minima), a, b)
    i = int(np.argmin(values))
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, points - 1)]
    x, fx = golden_section(f, lo, hi, tol)
    if values[i] < fx:
        return float(grid[i]), float(values[i])
    return x, fx


def sign_changes(values: np.ndarray) -> np.ndarray:
    """Indices i with values[i] >= 0 > values[i + 1]."""
    v = np.asarray(values, dtype=float)
    return np.flatnonzero((v[:-1] >= 0) & (v[1:] < 0))
