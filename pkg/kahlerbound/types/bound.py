from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

from ..errors import DomainError
from .geometry import GeometryParams


class BoundMethod(str, Enum):
    BonnetMyers = "bonnet-myers"
    FamilyAtK = "family"
    FamilyOptimized = "family-opt"
    ClosedForm24m = "closed-24m"
    ClosedForm200 = "closed-200"
    RayleighSolve = "rayleigh"


@dataclass(frozen=True)
class BoundParams:
    k: Optional[float] = None
    p: Optional[float] = None
    d_star: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"k": self.k, "p": self.p, "d_star": self.d_star}


@dataclass(frozen=True)
class DiameterBound:
    method: BoundMethod
    value: float
    geometry: GeometryParams
    params: Optional[BoundParams] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.value > 0:
            raise DomainError(f"diameter bound must be positive, got {self.value!r}")

    def to_dict(self) -> Dict[str, Any]:
        d = {
            "method": self.method.value,
            "value": self.value,
            "m": self.geometry.m,
            "rho": self.geometry.rho,
        }
        if self.params is not None:
            d.update(self.params.to_dict())
        d.update(self.extra)
        return d
