from dataclasses import dataclass
from typing import Any, Dict

from ..errors import DomainError


@dataclass(frozen=True)
class GeometryParams:
    """Complex dimension m and Ricci lower bound rho of a compact Kahler manifold."""

    m: int
    rho: float

    def __post_init__(self):
        if isinstance(self.m, bool) or int(self.m) != self.m:
            raise DomainError(f"complex dimension m={self.m!r} must be an integer")
        if self.m < 2:
            raise DomainError(f"complex dimension m={self.m} must be >= 2")
        if not self.rho > 0:
            raise DomainError(f"Ricci lower bound rho={self.rho!r} must be positive")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "rho", float(self.rho))

    @classmethod
    def einstein_normalized(cls, m: int) -> "GeometryParams":
        # Ric >= 2m - 1, the normalization of the diameter theorems
        return cls(m, 2 * m - 1)

    @property
    def real_dimension(self) -> int:
        return 2 * self.m

    @property
    def critical_exponent(self) -> float:
        return 2 * self.m / (self.m - 1)

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "rho": self.rho}
