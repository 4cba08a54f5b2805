"""Verdict records shared by the residual checks, the theorem registry and the CLI."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

VERIFIED = "verified"
HYPOTHESES_FAIL = "hypotheses-fail"
CONTRADICTION = "CONTRADICTION"


def jsonable(x):
    """Convert witness values to JSON-friendly data (inf becomes the string "inf")."""
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return str(x)


@dataclass
class Verdict:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)
    note: str = ""

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "witness": jsonable(self.witness)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CheckReport:
    theorem: str
    module: str
    seed: int
    hypotheses: list = field(default_factory=list)
    conclusions: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return all(v.passed for v in self.hypotheses)

    @property
    def status(self) -> str:
        if not self.hypotheses_hold:
            return HYPOTHESES_FAIL
        if all(v.passed for v in self.conclusions):
            return VERIFIED
        return CONTRADICTION

    def hypothesis(self, name: str) -> Verdict | None:
        for v in self.hypotheses:
            if v.name == name:
                return v
        return None

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "module": self.module,
            "seed": self.seed,
            "status": self.status,
            "hypotheses": [v.to_dict() for v in self.hypotheses],
            "conclusions": [v.to_dict() for v in self.conclusions],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        return f"{self.theorem:12s} {self.module:28s} {self.status}"
