"""Check reports with a stable one-line text form."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    check: str
    passed: bool
    samples: int = 0
    seed: int | None = None
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        parts = ["PASS" if self.passed else "FAIL", self.check, f"samples={self.samples}"]
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        for k, v in self.details.items():
            parts.append(f"{k}={v}")
        if self.counterexample:
            parts.append(f"counterexample={self.counterexample}")
        return " ".join(parts)

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        return self.line()
