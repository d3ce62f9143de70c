from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    """Outcome of a sweep: how many items and identities were checked, and what failed."""

    name: str
    items: int = 0
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            self.name,
            self.items + other.items,
            self.checks + other.checks,
            self.failures + other.failures,
        )

    def summary(self, unit: str = "items") -> str:
        line = f"{self.name}: checked {self.items} {unit}, {self.checks} identities, {len(self.failures)} failures"
        if self.failures:
            line += f"; first failure: {self.failures[0]}"
        return line

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "items": self.items,
            "checks": self.checks,
            "failures": list(self.failures),
            "ok": self.ok,
        }
