from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one certification check; passes iff the residual is zero."""

    identity: str
    status: str
    residual: str
    assumptions: Tuple[str, ...] = ()
    extra: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_residual(cls, identity: str, residual: Any, assumptions=(), **extra) -> "CheckReport":
        text = str(residual)
        status = PASS if text == "0" else FAIL
        return cls(identity, status, text, tuple(assumptions), dict(extra))

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        d = {
            "identity": self.identity,
            "status": self.status,
            "residual": self.residual,
            "assumptions": list(self.assumptions),
        }
        d.update(self.extra)
        return d


@dataclass(frozen=True)
class ChainStep:
    name: str
    lhs: float
    relation: str
    rhs: float
    holds: bool

    def to_dict(self) -> Dict[str, Any]:
        return {"step": self.name, "lhs": self.lhs, "relation": self.relation, "rhs": self.rhs, "holds": self.holds}


@dataclass(frozen=True)
class ChainReport:
    m: int
    epsilon: float
    d: float
    in_hypothesis: bool
    steps: Tuple[ChainStep, ...]
    contradiction: bool
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def steps_hold(self) -> bool:
        return all(s.holds for s in self.steps)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "epsilon": self.epsilon,
            "d": self.d,
            "in_hypothesis": self.in_hypothesis,
            "steps_hold": self.steps_hold,
            "contradiction": self.contradiction,
            "steps": [s.to_dict() for s in self.steps],
            **self.extra,
        }


@dataclass
class Report:
    """Machine-readable CLI report; key order of to_dict() is part of the format."""

    command: str
    inputs: Dict[str, Any]
    version: str
    results: List[Dict[str, Any]] = field(default_factory=list)
    status: str = INFO

    def add(self, label: str, record: Dict[str, Any]) -> None:
        row = {"label": label}
        row.update(record)
        self.results.append(row)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "version": self.version,
            "status": self.status,
            "inputs": self.inputs,
            "results": self.results,
        }
