from dataclasses import dataclass


@dataclass(frozen=True)
class QuadratureEstimate:
    value: float
    error_estimate: float = 0.0

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError(f"error estimate must be nonnegative, got {self.error_estimate!r}")

    def __add__(self, other: "QuadratureEstimate") -> "QuadratureEstimate":
        return QuadratureEstimate(self.value + other.value, self.error_estimate + other.error_estimate)

    def scaled(self, factor: float) -> "QuadratureEstimate":
        return QuadratureEstimate(self.value * factor, self.error_estimate * abs(factor))

    def __float__(self) -> float:
        return float(self.value)
