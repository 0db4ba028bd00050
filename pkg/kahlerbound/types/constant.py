from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from ..errors import DomainError

_RANGE_SLACK = 1e-12


class ConstantFamily(str, Enum):
    RiemannianSobolev = "RiemannianSobolev"
    RiemannianBeckner = "RiemannianBeckner"
    KahlerSobolev = "KahlerSobolev"
    KahlerBeckner = "KahlerBeckner"
    LogSobolev = "LogSobolev"
    Poincare = "Poincare"
    PropositionC = "PropositionC"


@dataclass(frozen=True)
class InequalityConstant:
    family: ConstantFamily
    p: float
    value: float
    valid_p_range: Tuple[float, float]
    k: Optional[float] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.value >= 0:
            raise DomainError(f"{self.family.value} constant must be nonnegative, got {self.value!r}")
        lo, hi = self.valid_p_range
        if not lo - _RANGE_SLACK <= self.p <= hi * (1 + _RANGE_SLACK):
            raise DomainError(f"p={self.p} outside [{lo}, {hi}] for {self.family.value}")
        if (self.k is not None) != (self.family is ConstantFamily.PropositionC):
            raise DomainError("k is carried exactly by the PropositionC family")

    def to_dict(self) -> Dict[str, Any]:
        d = {
            "family": self.family.value,
            "p": self.p,
            "k": self.k,
            "value": self.value,
            "valid_p_range": list(self.valid_p_range),
        }
        d.update(self.extra)
        return d
