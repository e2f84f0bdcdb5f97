"""Shared diagnostic values used by validation, projection, and the CLI."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


#: Closed set of machine-readable codes; stable across versions.
UNMATCHED_RET = "UNMATCHED_RET"
UNMATCHED_CAL = "UNMATCHED_CAL"
BRANCHING_REGION = "BRANCHING_REGION"
UNREACHABLE_STATE = "UNREACHABLE_STATE"
DUPLICATE_ROW = "DUPLICATE_ROW"
BAD_AGENT_KIND = "BAD_AGENT_KIND"

DIAGNOSTIC_CODES = frozenset(
    {
        UNMATCHED_RET,
        UNMATCHED_CAL,
        BRANCHING_REGION,
        UNREACHABLE_STATE,
        DUPLICATE_ROW,
        BAD_AGENT_KIND,
    }
)


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding, located by region and (optionally) a 0-based
    index into that region's transition declaration order."""

    severity: Severity
    code: str
    message: str
    region: str | None = None
    transition_index: int | None = None

    def __post_init__(self) -> None:
        if self.code not in DIAGNOSTIC_CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")

    def to_dict(self) -> dict:
        d: dict = {
            "severity": self.severity.value,
            "code": self.code,
            "message": self.message,
        }
        if self.region is not None:
            d["region"] = self.region
        if self.transition_index is not None:
            d["transition"] = self.transition_index
        return d

    def render(self) -> str:
        locus = ""
        if self.region is not None:
            locus = f" [{self.region}" + (
                f"#{self.transition_index}]" if self.transition_index is not None else "]"
            )
        return f"{self.severity.value}: {self.code}: {self.message}{locus}"
