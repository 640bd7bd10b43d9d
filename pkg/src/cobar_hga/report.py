"""Check results and reports."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
WARN = "warn"


@dataclass
class CheckResult:
    name: str
    status: str = PASS
    checked: int = 0
    region: str = ""
    counterexample: str | None = None
    detail: str | None = None
    blocks: dict[str, int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def record(self, ok: bool, witness=None, detail: str | None = None, block=None) -> bool:
        """Count one checked instance; keeps the first failing witness."""
        self.checked += 1
        if block is not None:
            key = ",".join(map(str, block)) if isinstance(block, tuple) else str(block)
            self.blocks[key] = self.blocks.get(key, 0) + 1
        if not ok and self.status != FAIL:
            self.status = FAIL
            self.counterexample = witness if isinstance(witness, str) else repr(witness)
            self.detail = detail
        return ok

    def warn(self, message: str) -> None:
        self.warnings.append(message)
        if self.status == PASS:
            self.status = WARN

    def as_dict(self, timing: bool = True) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "checked": self.checked,
            "region": self.region,
            "blocks": dict(sorted(self.blocks.items())),
            "counterexample": self.counterexample,
            "detail": self.detail,
            "warnings": list(self.warnings),
            "wall_time": round(self.wall_time, 6) if timing else None,
        }


@contextmanager
def timed(result: CheckResult):
    start = time.perf_counter()
    try:
        yield result
    finally:
        result.wall_time = time.perf_counter() - start


@dataclass
class ValidationReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def names(self) -> list[str]:
        return [r.name for r in self.results]

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.results)

    def __iter__(self):
        return iter(self.results)

    def extend(self, other) -> None:
        self.results.extend(other)

    def summary(self) -> str:
        lines = []
        for r in self.results:
            line = f"{r.status.upper():4}  {r.name}  ({r.checked} checked"
            line += f"; {r.region})" if r.region else ")"
            if r.counterexample is not None:
                line += f"  counterexample: {r.counterexample}"
            lines.append(line)
        return "\n".join(lines)
