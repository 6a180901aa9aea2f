from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    cases: int = 0
    witness: Any = None


@dataclass
class Report:
    """Outcome of a battery of property checks.

    Each named property records how many cases it inspected and, on
    failure, the first counterexample found.
    """

    title: str
    checks: list = field(default_factory=list)

    def record(self, name: str, passed: bool, cases: int = 0, witness: Any = None) -> Check:
        check = Check(name, passed, cases, witness)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.cases, c.witness))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list:
        out = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"[{mark}] {c.name} ({c.cases} cases)"
            if not c.passed:
                line += f"  witness: {c.witness!r}"
            out.append(line)
        return out

    def __str__(self) -> str:
        return "\n".join([self.title] + ["  " + s for s in self.lines()])

    def to_json(self, convert=repr) -> dict:
        """JSON-ready summary; ``convert`` renders failure witnesses."""
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "cases": c.cases,
                 "witness": None if c.passed else convert(c.witness)}
                for c in self.checks
            ],
        }
