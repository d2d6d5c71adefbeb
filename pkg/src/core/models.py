#!/usr/bin/env python3
"""
Core Data Models - Check and run reports for the conformal algebra engine
Dataclasses for per-identity results and a pydantic model for the rendered run report
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field


# ============================================================================
# ENUMS
# ============================================================================

class CheckStatus(str, Enum):
    """Outcome of a single identity check"""
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    @classmethod
    def combine(cls, statuses: Sequence['CheckStatus']) -> 'CheckStatus':
        """fail dominates inconclusive, which dominates pass"""
        if any(s == cls.FAIL for s in statuses):
            return cls.FAIL
        if any(s == cls.INCONCLUSIVE for s in statuses):
            return cls.INCONCLUSIVE
        return cls.PASS


# ============================================================================
# CHECK RESULTS
# ============================================================================

@dataclass
class Residual:
    """A witness tuple together with its nonzero residual"""
    witness: Tuple[str, ...]
    value: str
    label: str = ""
    element: Any = field(default=None, compare=False, repr=False)

    def describe(self) -> str:
        head = f"({', '.join(self.witness)})"
        if self.label:
            head = f"{self.label} {head}"
        return f"{head}: {self.value}"


@dataclass
class CheckReport:
    """Result of one identity check over all generator tuples"""
    name: str
    status: CheckStatus = CheckStatus.PASS
    residuals: List[Residual] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    bounds: Optional[Tuple[int, int]] = None
    informational: bool = False

    @classmethod
    def from_residuals(cls, name: str, residuals: List[Residual], **kwargs) -> 'CheckReport':
        status = CheckStatus.FAIL if residuals else CheckStatus.PASS
        return cls(name=name, status=status, residuals=list(residuals), **kwargs)

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    def witnesses(self) -> List[Tuple[str, ...]]:
        return [r.witness for r in self.residuals]

    def merge(self, other: 'CheckReport', name: Optional[str] = None) -> 'CheckReport':
        """Combine two reports; residuals keep their order"""
        return CheckReport(
            name=name or self.name,
            status=CheckStatus.combine([self.status, other.status]),
            residuals=self.residuals + other.residuals,
            notes=self.notes + other.notes,
            bounds=self.bounds or other.bounds,
            informational=self.informational and other.informational,
        )


# ============================================================================
# RUN REPORT
# ============================================================================

class CheckEntry(BaseModel):
    """Rendered form of a CheckReport"""
    model_config = ConfigDict(extra="forbid")

    name: str
    status: CheckStatus
    residuals: List[str] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    bounds: Optional[Tuple[int, int]] = None
    informational: bool = False

    @classmethod
    def from_report(cls, report: CheckReport) -> 'CheckEntry':
        return cls(
            name=report.name,
            status=report.status,
            residuals=[r.describe() for r in report.residuals],
            notes=list(report.notes),
            bounds=report.bounds,
            informational=report.informational,
        )


class RunReport(BaseModel):
    """
    Deterministic report of one command run

    Rendered as one key per line (text) or as sorted JSON. Timing is only
    present when explicitly requested, so identical inputs give identical bytes.
    """
    model_config = ConfigDict(extra="forbid")

    command: str
    inputs: Dict[str, str] = Field(default_factory=dict)
    bounds: Optional[Tuple[int, int]] = None
    checks: List[CheckEntry] = Field(default_factory=list)
    data: List[Tuple[str, str]] = Field(default_factory=list)
    timing: Optional[str] = None

    def add_check(self, report: CheckReport) -> None:
        self.checks.append(CheckEntry.from_report(report))

    def add_data(self, key: str, value: Any) -> None:
        self.data.append((key, str(value)))

    @property
    def status(self) -> CheckStatus:
        return CheckStatus.combine([c.status for c in self.checks if not c.informational])

    def render_text(self) -> str:
        lines = [f"command: {self.command}"]
        for name in sorted(self.inputs):
            lines.append(f"input {name}: {self.inputs[name]}")
        if self.bounds is not None:
            lines.append(f"bounds: deg-l<={self.bounds[0]}, deg-d<={self.bounds[1]}")
        for key, value in self.data:
            lines.append(f"{key}: {value}")
        for check in self.checks:
            tag = " (informational)" if check.informational else ""
            lines.append(f"check {check.name}: {check.status.value}{tag}")
            if check.bounds is not None:
                lines.append(f"  bounds: deg-l<={check.bounds[0]}, deg-d<={check.bounds[1]}")
            for note in check.notes:
                lines.append(f"  note: {note}")
            for residual in check.residuals:
                lines.append(f"  residual {residual}")
        lines.append(f"status: {self.status.value}")
        if self.timing is not None:
            lines.append(f"timing: {self.timing}")
        return "\n".join(lines) + "\n"

    def render_json(self) -> str:
        payload = self.model_dump(mode="json")
        payload["status"] = self.status.value
        if payload.get("timing") is None:
            payload.pop("timing", None)
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def render(self, fmt: str = "text") -> str:
        return self.render_json() if fmt == "json" else self.render_text()
