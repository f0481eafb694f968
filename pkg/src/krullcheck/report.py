"""Verification reports and their json / human renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "krullcheck.report/1"


@dataclass
class Step:
    description: str
    expected: object
    computed: object
    passed: bool
    message: str = ""
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "description": self.description,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
        }
        if self.message:
            out["message"] = self.message
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    scenario: str
    params: dict = field(default_factory=dict)
    steps: list[Step] = field(default_factory=list)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.steps) and all(s.passed for s in self.steps)

    @property
    def first_failure(self) -> int | None:
        return next((i for i, s in enumerate(self.steps) if not s.passed), None)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "scenario": self.scenario,
            "params": self.params,
            "status": "pass" if self.passed else "fail",
            "steps": [s.to_json() for s in self.steps],
            "duration_seconds": round(self.duration, 3),
        }


# minimal structural schema, checked by validate_report and the tests
REPORT_SCHEMA = {
    "type": "object",
    "required": ["schema", "scenario", "params", "status", "steps", "duration_seconds"],
    "properties": {
        "schema": {"const": SCHEMA},
        "scenario": {"type": "string"},
        "params": {"type": "object"},
        "status": {"enum": ["pass", "fail"]},
        "duration_seconds": {"type": "number"},
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["description", "expected", "computed", "passed"],
                "properties": {"passed": {"type": "boolean"}, "description": {"type": "string"}},
            },
        },
    },
}


def _short(v, limit: int = 70) -> str:
    text = v if isinstance(v, str) else json.dumps(v, ensure_ascii=False)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def emit_report(r: VerificationReport, fmt: str = "human") -> str:
    if fmt == "json":
        return json.dumps(r.to_json(), indent=2, ensure_ascii=False) + "\n"
    if fmt != "human":
        raise ValueError(f"unknown report format {fmt!r}")
    params = " ".join(f"{k}={v}" for k, v in sorted(r.params.items()))
    lines = [f"scenario {r.scenario}" + (f" ({params})" if params else "")]
    first = r.first_failure
    for i, s in enumerate(r.steps):
        mark = "✓" if s.passed else "✗"
        lines.append(f"  {mark} {s.description}")
        if not s.passed:
            prefix = ">>" if i == first else "  "
            lines.append(f"    {prefix} expected: {_short(s.expected)}")
            lines.append(f"    {prefix} computed: {_short(s.computed)}")
            if s.message:
                lines.append(f"    {prefix} {s.message}")
    n_ok = sum(s.passed for s in r.steps)
    lines.append(f"{'PASS' if r.passed else 'FAIL'}: {n_ok}/{len(r.steps)} steps in {r.duration:.2f}s")
    if first is not None:
        lines.append(f"first failing step: {first + 1}. {r.steps[first].description}")
    return "\n".join(lines) + "\n"
