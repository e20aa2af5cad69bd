"""Validation report that gates a run."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from chb_simulator.const import LOGGER


@dataclass(frozen=True)
class ValidationCheck:
    """
    One assumption check.

    Attributes:
        name: Short identifier, e.g. H_over_ell.
        passed: Whether the assumption holds.
        message: Human readable finding.
        advisory: Advisory checks are reported but never block a run.

    """

    name: str
    passed: bool
    message: str
    advisory: bool = False


@dataclass
class ValidationReport:
    """Collected checks of one configuration."""

    checks: list[ValidationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """PASS iff every blocking check holds."""
        return all(check.passed for check in self.checks if not check.advisory)

    def add(self, name: str, *, passed: bool, message: str, advisory: bool = False) -> ValidationCheck:
        """Append a check and log failures."""
        check = ValidationCheck(name, passed, message, advisory)
        self.checks.append(check)
        if not passed:
            if advisory:
                LOGGER.warning("Advisory check %s: %s", name, message)
            else:
                LOGGER.error("Validation check %s failed: %s", name, message)
        return check

    def extend(self, checks: list[ValidationCheck]) -> None:
        """Append checks built elsewhere."""
        for check in checks:
            self.add(check.name, passed=check.passed, message=check.message, advisory=check.advisory)

    def failures(self) -> list[ValidationCheck]:
        """Blocking checks that did not hold."""
        return [check for check in self.checks if not check.passed and not check.advisory]

    def as_dict(self) -> dict[str, Any]:
        """Serializable form for the run summary."""
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "message": c.message, "advisory": c.advisory} for c in self.checks
            ],
        }


__all__ = ["ValidationCheck", "ValidationReport"]
