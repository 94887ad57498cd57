"""Check results, reports and their JSON/markdown renderings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Iterable, Mapping

from .scalars import NonRationalPower, Scalar

VERDICTS = ("PASS", "FAIL", "FINDING")


@dataclass(frozen=True)
class Point:
    """A numeric specialisation: q, colour values by id, c⁺ and c⁻."""

    q: Fraction
    colours: tuple[tuple[int, Fraction], ...]
    cplus: Fraction = Fraction(1)
    cminus: Fraction = Fraction(1)

    @classmethod
    def make(cls, q, colours: Mapping[int, Any], cplus=1, cminus=1) -> "Point":
        return cls(
            Fraction(q),
            tuple(sorted((int(k), Fraction(v)) for k, v in colours.items())),
            Fraction(cplus),
            Fraction(cminus),
        )

    @property
    def colour_map(self) -> dict[int, Fraction]:
        return dict(self.colours)

    def value(self, x: Scalar) -> Fraction:
        return x.substitute(self.q, self.colour_map, self.cplus, self.cminus)

    def describe(self) -> str:
        cs = ", ".join(f"c{k}={v}" for k, v in self.colours)
        return f"q={self.q}, {cs}, c+={self.cplus}, c-={self.cminus}"


# q a fourth power so every quarter-integer colour power stays rational
DEFAULT_POINT = Point.make(16, {0: Fraction(1, 4), 1: Fraction(1, 2), 2: Fraction(3, 4)}, 2, 3)


@dataclass
class CheckResult:
    id: str
    paper_ref: str
    verdict: str = "PASS"
    residual_example: str | None = None
    specialization: str | None = None
    millis: float = 0.0
    required: bool = True
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict}")

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def set_witness(self, residual: Scalar, point: Point | None = None, where: str | None = None) -> None:
        point = point or DEFAULT_POINT
        text = residual.render()
        self.residual_example = f"{where}: {text}" if where else text
        try:
            self.specialization = f"{point.value(residual)} at {point.describe()}"
        except NonRationalPower:
            self.specialization = None

    def to_json(self, timing: bool = True) -> dict:
        return {
            "id": self.id,
            "paper_ref": self.paper_ref,
            "verdict": self.verdict,
            "required": self.required,
            "residual_example": self.residual_example,
            "specialization": self.specialization,
            "millis": round(self.millis, 3) if timing else 0,
            "details": _jsonable(self.details),
        }


def _jsonable(x):
    if isinstance(x, Mapping):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Scalar):
        return x.render()
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


@dataclass
class Report:
    config: dict
    checks: list[CheckResult] = field(default_factory=list)

    def extend(self, results: Iterable[CheckResult]) -> None:
        self.checks.extend(results)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        return result

    def summary(self) -> dict[str, int]:
        return {
            "pass": sum(c.verdict == "PASS" for c in self.checks),
            "fail": sum(c.verdict == "FAIL" for c in self.checks),
            "finding": sum(c.verdict == "FINDING" for c in self.checks),
        }

    def required_failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.required and c.verdict == "FAIL"]

    def by_id(self, check_id: str) -> CheckResult:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def to_json(self, timing: bool = True) -> dict:
        checks = sorted(self.checks, key=lambda c: c.id)
        return {
            "config": _jsonable(self.config),
            "checks": [c.to_json(timing) for c in checks],
            "summary": self.summary(),
        }

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=2, ensure_ascii=False, sort_keys=False) + "\n"

    def markdown(self) -> str:
        s = self.summary()
        lines = [
            "# chroma-hopf verification report",
            "",
            f"PASS {s['pass']} / FAIL {s['fail']} / FINDING {s['finding']}",
            "",
            "| id | verdict | required | anchor | residual |",
            "|---|---|---|---|---|",
        ]
        for c in sorted(self.checks, key=lambda c: c.id):
            res = (c.residual_example or "").replace("|", "\\|")
            lines.append(f"| `{c.id}` | {c.verdict} | {'yes' if c.required else 'no'} | {c.paper_ref} | {res} |")
        findings = [c for c in self.checks if c.verdict == "FINDING"]
        if findings:
            lines += ["", "## Findings", ""]
            for c in sorted(findings, key=lambda c: c.id):
                note = c.details.get("note", "")
                lines.append(f"- `{c.id}`: {note}")
        return "\n".join(lines) + "\n"


def load_schema() -> dict:
    return json.loads(resources.files("chromahopf").joinpath("report_schema.json").read_text())
