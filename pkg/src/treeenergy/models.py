import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from treeenergy.utils import format_float


class InvalidRecordError(ValueError):
    """Exception raised when a result record is internally inconsistent."""

    def __init__(self, record: str, reason: str):
        super().__init__(f"Invalid {record}: {reason}")
        self.record = record
        self.reason = reason


class EnergyMethod(str, Enum):
    COULSON = "coulson"
    EIGEN = "eigen"


class Winner(str, Enum):
    TA = "Ta"
    TB = "Tb"


@dataclass(frozen=True)
class EnergyResult:
    """Energy of one tree by one method, with the method's own error estimate."""

    value: float
    abs_error_estimate: float
    method: EnergyMethod
    evaluations: int = 0

    def __post_init__(self) -> None:
        if self.value < 0 and not math.isclose(self.value, 0.0, abs_tol=self.abs_error_estimate):
            raise InvalidRecordError("EnergyResult", f"energy must be nonnegative, got {self.value}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "value": self.value,
            "abs_error_estimate": self.abs_error_estimate,
            "method": self.method.value,
            "evaluations": self.evaluations,
        }


@dataclass(frozen=True)
class Verdict:
    """Which of T_a(delta, t), T_b(delta, t) has the larger energy; margin = E(T_a) - E(T_b)."""

    delta: int
    t: int
    winner: Winner
    margin: float
    margin_error: float
    decisive: bool
    unresolved_checks: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if (self.winner is Winner.TA) != (self.margin > 0):
            raise InvalidRecordError("Verdict", f"winner {self.winner.value} contradicts margin {self.margin}")

    @classmethod
    def from_margin(cls, delta: int, t: int, margin: float, margin_error: float, decisive_factor: float) -> "Verdict":
        return cls(
            delta=delta,
            t=t,
            winner=Winner.TA if margin > 0 else Winner.TB,
            margin=margin,
            margin_error=margin_error,
            decisive=abs(margin) > decisive_factor * margin_error,
        )

    def to_csv_row(self) -> dict[str, str]:
        """Convert to CSV row format."""
        return {
            "delta": str(self.delta),
            "t": str(self.t),
            "winner": self.winner.value,
            "margin": format_float(self.margin),
            "margin_error": format_float(self.margin_error),
            "decisive": "yes" if self.decisive else "no",
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "delta": self.delta,
            "t": self.t,
            "winner": self.winner.value,
            "margin": self.margin,
            "margin_error": self.margin_error,
            "decisive": self.decisive,
            "unresolved_checks": list(self.unresolved_checks),
        }


@dataclass(frozen=True)
class BoundCertificate:
    """f(delta) = tail_part - head_part, both parts stored as positive integrals."""

    delta: int
    integral_value: float
    tail_part: float
    head_part: float
    abs_error: float = 0.0

    @classmethod
    def from_parts(cls, delta: int, tail_part: float, head_part: float, abs_error: float = 0.0) -> "BoundCertificate":
        return cls(delta, tail_part - head_part, tail_part, head_part, abs_error)

    def to_csv_row(self) -> dict[str, str]:
        return {
            "delta": str(self.delta),
            "f_value": format_float(self.integral_value),
            "tail_part": format_float(self.tail_part),
            "head_part": format_float(self.head_part),
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "delta": self.delta,
            "integral_value": self.integral_value,
            "tail_part": self.tail_part,
            "head_part": self.head_part,
            "abs_error": self.abs_error,
        }


@dataclass(frozen=True)
class ProofConstantCheck:
    """A bounding integral from one case of the verdict proofs, against the constant printed for it."""

    name: str
    delta: int
    integral: float
    claimed: float
    abs_error: float
    sign_only: bool = False

    @property
    def sign_ok(self) -> bool:
        return math.copysign(1.0, self.integral) == math.copysign(1.0, self.claimed) and self.integral != 0

    @property
    def relative_deviation(self) -> float:
        return abs(self.integral - self.claimed) / abs(self.claimed)

    def passed(self, tolerance: float) -> bool:
        return self.sign_ok and (self.sign_only or self.relative_deviation <= tolerance)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "delta": self.delta,
            "integral": self.integral,
            "claimed": self.claimed,
            "abs_error": self.abs_error,
            "sign_only": self.sign_only,
            "sign_ok": self.sign_ok,
            "relative_deviation": self.relative_deviation,
        }


@dataclass(frozen=True)
class SuiteFailure:
    case_id: str
    expected: str
    got: str

    def to_dict(self) -> dict[str, str]:
        return {"case_id": self.case_id, "expected": self.expected, "got": self.got}


@dataclass
class SuiteReport:
    """Outcome of one verification suite; it passes iff no case failed."""

    suite_name: str
    cases_run: int = 0
    failures: list[SuiteFailure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, case_id: str, ok: bool, expected: Any = True, got: Any = None) -> Optional[SuiteFailure]:
        """Count one case; on failure keep (case id, expected, got) and return it."""
        self.cases_run += 1
        if ok:
            return None
        failure = SuiteFailure(case_id, _describe(expected), _describe(got))
        self.failures.append(failure)
        return failure

    def merge(self, other: "SuiteReport") -> None:
        self.cases_run += other.cases_run
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite_name": self.suite_name,
            "cases_run": self.cases_run,
            "passed": self.passed,
            "failures": [failure.to_dict() for failure in self.failures],
            "notes": list(self.notes),
        }


def _describe(value: Any) -> str:
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, Enum):
        return str(value.value)
    return str(value)
