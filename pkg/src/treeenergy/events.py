from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from typing import Any, Optional, Union


class EventType(str, Enum):
    SUITE_STARTED = "suite_started"
    CASE_COMPLETED = "case_completed"
    SUITE_PROGRESS = "suite_progress"
    COMPLETION = "completion"
    ERROR = "error"


@dataclass
class SuiteEvent:
    type: EventType
    timestamp: datetime
    message: str
    data: Optional[dict[str, Any]] = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "type": self.type.value,
            "timestamp": self.timestamp.isoformat(),
            "message": self.message,
            "data": self.data or {},
        }


@dataclass
class SuiteStartedEvent(SuiteEvent):
    def __init__(self, message: str, suite_name: str, total_cases: Optional[int] = None):
        super().__init__(
            type=EventType.SUITE_STARTED,
            timestamp=datetime.now(),
            message=message,
            data={"suite_name": suite_name, "total_cases": total_cases},
        )


@dataclass
class CaseCompletedEvent(SuiteEvent):
    def __init__(self, message: str, case_id: str, passed: bool, details: Optional[dict[str, Any]] = None):
        super().__init__(
            type=EventType.CASE_COMPLETED,
            timestamp=datetime.now(),
            message=message,
            data={"case_id": case_id, "passed": passed, **(details or {})},
        )


@dataclass
class SuiteProgressEvent(SuiteEvent):
    def __init__(self, message: str, current_case: int, total_cases: int, failures: int = 0):
        progress_pct = (current_case / total_cases * 100) if total_cases > 0 else 0
        super().__init__(
            type=EventType.SUITE_PROGRESS,
            timestamp=datetime.now(),
            message=message,
            data={
                "current_case": current_case,
                "total_cases": total_cases,
                "progress_percentage": round(progress_pct, 1),
                "failures": failures,
            },
        )


@dataclass
class CompletionEvent(SuiteEvent):
    def __init__(self, message: str, suite_name: str, cases_run: int, failures: int):
        super().__init__(
            type=EventType.COMPLETION,
            timestamp=datetime.now(),
            message=message,
            data={
                "suite_name": suite_name,
                "cases_run": cases_run,
                "failures": failures,
                "passed": failures == 0,
            },
        )


@dataclass
class ErrorEvent(SuiteEvent):
    def __init__(self, message: str, error_type: str, error_details: Optional[str] = None):
        super().__init__(
            type=EventType.ERROR,
            timestamp=datetime.now(),
            message=message,
            data={"error_type": error_type, "error_details": error_details},
        )


SuiteEventType = Union[
    SuiteStartedEvent,
    CaseCompletedEvent,
    SuiteProgressEvent,
    CompletionEvent,
    ErrorEvent,
]
