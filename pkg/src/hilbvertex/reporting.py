"""Uniform result object for the identity checks."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    status: str = "pass"  # pass | fail | inconclusive
    checked: int = 0
    first_failure: str | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def record(self, ok: bool, label) -> None:
        """Count one instance; label may be a callable, formatted only on failure."""
        self.checked += 1
        if not ok and self.status != "fail":
            self.status = "fail"
            self.first_failure = label() if callable(label) else label

    def merge(self, other: "CheckReport") -> None:
        self.checked += other.checked
        if other.status == "fail" and self.status != "fail":
            self.status = "fail"
            self.first_failure = f"{other.name}: {other.first_failure}"
        elif other.status == "inconclusive" and self.status == "pass":
            self.status = "inconclusive"

    def summary(self) -> str:
        line = f"{self.name}: {self.status} ({self.checked} checks)"
        if self.first_failure:
            line += f"; first failure: {self.first_failure}"
        return line
