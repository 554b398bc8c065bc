"""Uniform result record for the exhaustive and statistical verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of one verification pass.

    cases counts the individual checks performed; violations holds one
    human-readable line per failed check (empty means the pass succeeded).
    details carries verifier-specific numbers for report files.
    """

    name: str
    cases: int = 0
    violations: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, message: str) -> None:
        self.violations.append(message)

    def summary(self) -> str:
        if self.passed:
            return f"{self.name}: PASS ({self.cases} checks)"
        head = self.violations[0]
        return f"{self.name}: FAIL ({len(self.violations)}/{self.cases} checks; first: {head})"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "violations": list(self.violations),
            "details": dict(self.details),
        }
