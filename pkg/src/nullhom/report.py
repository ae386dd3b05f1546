from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a sweep: pass/fail, the first counterexample, and a case count."""

    name: str
    passed: bool
    cases: int = 0
    witness: dict[str, Any] | None = None
    params: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def __str__(self):
        word = "PASS" if self.passed else "FAIL"
        return f"{word} {self.name} ({self.cases} cases)"


class Sweep:
    """Accumulates cases of a check, keeping only the first failure."""

    def __init__(self, name: str, **params):
        self.name = name
        self.params = params
        self.cases = 0
        self.witness = None

    @property
    def failed(self) -> bool:
        return self.witness is not None

    def case(self, ok: bool, reason: str = "", **witness) -> bool:
        self.cases += 1
        if not ok and self.witness is None:
            self.witness = {"case": self.cases - 1, "reason": reason, **witness}
        return ok

    def absorb(self, sub: Report, **context) -> bool:
        self.cases += sub.cases
        if not sub.passed and self.witness is None:
            self.witness = {"case": self.cases, "reason": f"{sub.name} failed", **context,
                            "sub": sub.witness}
        return sub.passed

    def report(self, **details) -> Report:
        return Report(self.name, self.witness is None, self.cases, self.witness,
                      dict(self.params), details)


def combine(name: str, reports, **params) -> Report:
    reports = list(reports)
    sweep = Sweep(name, **params)
    for r in reports:
        sweep.absorb(r, check=r.name)
    return sweep.report(parts=[r.name for r in reports])
