"""JSON module specs and deterministic report files.

A module spec looks like::

    {"ring": {"char": 32003, "vars": ["x", "y"]},
     "presentation": [["y"], ["-x"]],
     "degrees": [0, 0], "label": "(x,y)"}

``presentation`` lists the rows of the matrix: one row per generator,
one column per relation.  A free module is given by an empty presentation
together with ``ambient_rank``.  Instead of a presentation a spec may list
``ideal`` generators; the module is then the ideal with its syzygies.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__
from .groebner import DEFAULT_BUDGET, IdealData
from .modules import PModule, ideal_module
from .poly import DEFAULT_PRIME, ParseError, Poly, PolyRing, format_poly, parse_poly
from .report import jsonable

TOOL = "reeslab"


class SpecError(ValueError):
    """Malformed module spec; the message carries line and column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass
class ModuleSpec:
    module: PModule
    ideal: IdealData | None = None

    @property
    def ring(self) -> PolyRing:
        return self.module.ring


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


class _Locator:
    """Finds where successive string literals sit in the source text."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def find(self, value: str) -> int | None:
        lit = json.dumps(value, ensure_ascii=False)
        k = self.text.find(lit, self.pos)
        if k < 0:
            return None
        self.pos = k + len(lit)
        return k + 1  # first character inside the quotes


def _parse_entry(ring: PolyRing, value, where: str, loc: _Locator) -> Poly:
    if isinstance(value, int) and not isinstance(value, bool):
        return ring.const(value)
    if not isinstance(value, str):
        raise SpecError(f"{where}: expected a polynomial string, got {type(value).__name__}")
    start = loc.find(value)
    try:
        return parse_poly(ring, value)
    except ParseError as exc:
        if start is None:
            raise SpecError(f"{where}: {exc}") from None
        line, col = _line_col(loc.text, start + exc.pos)
        raise SpecError(f"{where}: {str(exc).rsplit(' (column', 1)[0]}", line, col) from None


def _int_list(value, name: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool)
                                                for v in value):
        raise SpecError(f"{name} must be a list of integers")
    return list(value)


def parse_module_spec(data: bytes | str, field: int | None = None) -> ModuleSpec:
    """Parse a JSON module spec; ``field`` overrides the declared characteristic."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SpecError(f"input is not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SpecError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SpecError("top level must be a JSON object")
    known = {"ring", "presentation", "degrees", "label", "ambient_rank", "ideal"}
    extra = sorted(set(doc) - known)
    if extra:
        raise SpecError(f"unknown keys {extra}")
    rb = doc.get("ring")
    if not isinstance(rb, dict) or "vars" not in rb:
        raise SpecError("missing ring block with vars")
    names = rb["vars"]
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        raise SpecError("ring.vars must be a list of strings")
    char = rb.get("char", DEFAULT_PRIME) if field is None else field
    if not isinstance(char, int) or isinstance(char, bool):
        raise SpecError("ring.char must be an integer")
    try:
        ring = PolyRing(names, char)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    loc = _Locator(data)
    label = doc.get("label", "")
    if not isinstance(label, str):
        raise SpecError("label must be a string")

    if "ideal" in doc:
        if "presentation" in doc:
            raise SpecError("give either presentation or ideal, not both")
        gens = doc["ideal"]
        if not isinstance(gens, list) or not gens:
            raise SpecError("ideal must be a non-empty list of polynomials")
        polys = [_parse_entry(ring, g, f"ideal[{i}]", loc) for i, g in enumerate(gens)]
        I = IdealData(ring, polys)
        if not I.gens:
            raise SpecError("the zero ideal is not a module of positive rank")
        E = ideal_module(I, label=label or "(" + ", ".join(format_poly(g) for g in I.gens) + ")",
                         minimize=False)
        return ModuleSpec(E, I)

    if "presentation" not in doc:
        raise SpecError("missing presentation (or ideal)")
    grid = doc["presentation"]
    if not isinstance(grid, list) or not all(isinstance(r, list) for r in grid):
        raise SpecError("presentation must be a list of rows")
    n = len(grid)
    if "ambient_rank" in doc:
        ar = doc["ambient_rank"]
        if not isinstance(ar, int) or isinstance(ar, bool) or ar < 0:
            raise SpecError("ambient_rank must be a non-negative integer")
        if n and ar != n:
            raise SpecError(f"ambient_rank {ar} differs from the {n} presentation rows")
        n = ar
    if n == 0:
        raise SpecError("a module needs at least one generator")
    widths = {len(r) for r in grid}
    if len(widths) > 1:
        raise SpecError(f"ragged presentation: row lengths {sorted(widths)}")
    s = widths.pop() if widths else 0
    rows = [[_parse_entry(ring, v, f"presentation[{i}][{j}]", loc) for j, v in enumerate(r)]
            for i, r in enumerate(grid)]
    cols = [tuple(rows[i][j] for i in range(n)) for j in range(s)]
    cols = [c for c in cols if any(f.terms for f in c)]
    if "degrees" in doc:
        degs = _int_list(doc["degrees"], "degrees")
        if len(degs) != n:
            raise SpecError(f"need {n} degrees, got {len(degs)}")
    else:
        degs = infer_degrees(n, cols)
    E = PModule(ring, n, tuple(cols), tuple(degs), label)
    if "degrees" in doc and cols and not E.is_graded:
        raise SpecError("presentation is not homogeneous for the given degrees")
    return ModuleSpec(E)


def infer_degrees(n: int, cols) -> list[int]:
    """Generator degrees making every column homogeneous, or zeros if none exist."""
    zeros = [0] * n
    links = []
    for c in cols:
        entries = [(i, f) for i, f in enumerate(c) if f.terms]
        if any(not f.is_homogeneous() for _, f in entries):
            return zeros
        links.append({i: f.degree() for i, f in entries})
    degs: list[int | None] = [None] * n
    for start in range(n):
        if degs[start] is not None:
            continue
        degs[start] = 0
        stack = [start]
        while stack:
            i = stack.pop()
            for col in links:
                if i not in col:
                    continue
                total = degs[i] + col[i]
                for k, dk in col.items():
                    if degs[k] is None:
                        degs[k] = total - dk
                        stack.append(k)
                    elif degs[k] != total - dk:
                        return zeros
    low = min(degs)
    return [d - low for d in degs]


def module_spec_dict(E: PModule, ideal: IdealData | None = None) -> dict:
    """Spec that re-parses to the same module."""
    ring = E.ring
    out = {"ring": {"char": ring.char, "vars": list(ring.vars)}}
    if ideal is not None:
        out["ideal"] = [format_poly(g) for g in ideal.gens]
    else:
        out["presentation"] = [[format_poly(c[i]) for c in E.relations] for i in range(E.ambient_rank)]
        out["ambient_rank"] = E.ambient_rank
        out["degrees"] = list(E.degrees)
    if E.label:
        out["label"] = E.label
    return out


def gb_strings(I: IdealData) -> list[str]:
    return I.sorted_gb_strings()


def make_report(command: str, seed: int, results: dict, spec: ModuleSpec | None = None,
                timing: dict | None = None) -> dict:
    rep = {
        "tool": TOOL,
        "version": __version__,
        "command": command,
        "seed": seed,
        "budget": {"max_pairs": DEFAULT_BUDGET.max_pairs, "max_basis": DEFAULT_BUDGET.max_basis},
        "results": jsonable(results),
    }
    if spec is not None:
        rep["module"] = module_spec_dict(spec.module, spec.ideal)
    if timing is not None:
        rep["timing"] = {k: round(v, 3) for k, v in sorted(timing.items())}
    return rep


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
