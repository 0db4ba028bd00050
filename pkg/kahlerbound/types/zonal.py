from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import DomainError

MAX_DEGREE = 8


class Representation(str, Enum):
    POLY_COS = "polynomial-in-cos"
    EXP_POLY_COS = "exp-of-polynomial-in-cos"


@dataclass(frozen=True)
class ZonalFunction:
    """f(theta) = P(cos theta) or exp(P(cos theta)), coefficients in increasing degree."""

    representation: Representation
    coefficients: Tuple[float, ...]

    def __post_init__(self):
        if not 1 <= len(self.coefficients) <= MAX_DEGREE + 1:
            raise DomainError(f"zonal polynomial degree must be <= {MAX_DEGREE}")
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))

    @classmethod
    def constant(cls, c: float = 1.0) -> "ZonalFunction":
        return cls(Representation.POLY_COS, (c,))

    @classmethod
    def polynomial(cls, *coefficients: float) -> "ZonalFunction":
        return cls(Representation.POLY_COS, coefficients)

    @classmethod
    def exp_polynomial(cls, *coefficients: float) -> "ZonalFunction":
        return cls(Representation.EXP_POLY_COS, coefficients)

    @property
    def is_exponential(self) -> bool:
        return self.representation is Representation.EXP_POLY_COS

    def values(self, x: np.ndarray) -> np.ndarray:
        """Values at x = cos(theta)."""
        v = P.polyval(x, self.coefficients)
        return np.exp(v) if self.is_exponential else v

    def theta_derivative(self, x: np.ndarray) -> np.ndarray:
        # d/dtheta = -sin(theta) d/dx
        dp = P.polyval(x, P.polyder(self.coefficients)) * -np.sqrt(np.clip(1.0 - x * x, 0.0, None))
        return dp * self.values(x) if self.is_exponential else dp

    def is_positive_on(self, x: np.ndarray) -> bool:
        return self.is_exponential or bool(np.all(self.values(x) > 0))


@dataclass(frozen=True)
class ProductFunction:
    """Separable F(theta1, theta2) = f(theta1) * g(theta2) on two round spheres."""

    f: ZonalFunction
    g: ZonalFunction = ZonalFunction.constant(1.0)

    def is_positive_on(self, x: np.ndarray) -> bool:
        return self.f.is_positive_on(x) and self.g.is_positive_on(x)


@dataclass(frozen=True)
class ManifoldSpec:
    """CP^1 x CP^1 as two round 2-spheres of Gaussian curvature rho, total volume 1."""

    rho: float
    order: int = 64

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError(f"curvature rho={self.rho!r} must be positive")
        if self.order < 32:
            raise DomainError(f"quadrature order {self.order} must be >= 32")
