"""Command-line front end: ``reeslab <command> [spec.json] [options]``.

Exit codes: 0 ok, 1 malformed input, 2 hypotheses fail, 3 CONTRADICTION,
4 Groebner budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import bourbaki as bb
from . import modules as mod
from . import rees as rs
from . import residual as rl
from . import theorems as th
from .groebner import BudgetError, IdealData, height, set_default_budget
from .io import ModuleSpec, SpecError, dump_report, make_report, parse_module_spec
from .poly import ParseError, format_poly
from .report import CONTRADICTION, HYPOTHESES_FAIL, VERIFIED

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESES = 2
EXIT_CONTRADICTION = 3
EXIT_BUDGET = 4

STATUS_EXIT = {VERIFIED: EXIT_OK, HYPOTHESES_FAIL: EXIT_HYPOTHESES, CONTRADICTION: EXIT_CONTRADICTION}


class InputError(ValueError):
    pass


def _budget(text: str) -> dict:
    """``N`` (pair limit) or ``max_pairs=N,max_basis=M``."""
    out = {}
    try:
        if "=" not in text:
            return {"max_pairs": int(text)}
        for part in text.split(","):
            key, val = part.split("=", 1)
            key = key.strip()
            if key not in ("max_pairs", "max_basis"):
                raise ValueError(key)
            out[key] = int(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}; use N or max_pairs=N,max_basis=M")
    return out


def _param(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"bad parameter {text!r}; use key=value")
    k, v = text.split("=", 1)
    return k.strip(), v.strip()


def _field(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"field must be a prime or 0, got {text!r}")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all random choices (default 0)")
    common.add_argument("--field", type=_field, default=None,
                        help="characteristic, prime or 0; overrides the module file (default 32003)")
    common.add_argument("--max-degree", type=int, default=6,
                        help="degree bound for degreewise oracles and powers (default 6)")
    common.add_argument("--budget", type=_budget, default=None,
                        help="Groebner budget: N pairs, or max_pairs=N,max_basis=M")
    common.add_argument("--out", default=None, help="write the JSON report here")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")

    ap = argparse.ArgumentParser(prog="reeslab", description="Rees algebras of modules")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rees", parents=[common], help="symmetric and Rees ideals")
    p.add_argument("spec")
    p.add_argument("--cross-check", action="store_true",
                   help="compare with the elimination oracle up to --max-degree")

    p = sub.add_parser("fiber", parents=[common], help="special fiber, analytic spread, reduction number")
    p.add_argument("spec")

    p = sub.add_parser("powers", parents=[common], help="powers E^j with depth and pd")
    p.add_argument("spec")
    p.add_argument("--upto", type=int, default=None, help="largest power (default --max-degree)")

    p = sub.add_parser("bourbaki", parents=[common], help="generic Bourbaki ideal")
    p.add_argument("spec")
    p.add_argument("--mode", choices=["random", "symbolic"], default="random")

    p = sub.add_parser("residual", parents=[common], help="s-residual intersection J : I")
    p.add_argument("spec")
    p.add_argument("-s", type=int, required=True, help="number of generators of J")
    p.add_argument("--extra-degree", type=int, default=0)
    p.add_argument("--an", action="store_true", help="also run the sampled AN_s check")

    p = sub.add_parser("check", parents=[common], help="check one theorem")
    p.add_argument("spec", nargs="?", help="module spec (optional for P3.5, P3.6, T3.7, L3.8)")
    p.add_argument("--theorem", required=True, help="registry id, e.g. T3.2")
    p.add_argument("--param", type=_param, action="append", default=[], help="key=value")

    p = sub.add_parser("gallery", parents=[common], help="run the registry over the gallery")
    p.add_argument("--filter", default=None, help="only this theorem id")
    p.add_argument("--jobs", type=int, default=1)
    return ap


def _load(args) -> ModuleSpec:
    try:
        with open(args.spec, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {args.spec}: {exc.strerror}") from None
    return parse_module_spec(data, args.field)


def _ideal_of(spec: ModuleSpec, seed: int) -> IdealData:
    if spec.ideal is not None:
        return spec.ideal
    E = spec.module.minimized
    if mod.module_rank(E, seed) != 1:
        raise InputError("residual needs an ideal or a rank-one module")
    gens, _ = mod.hom_dual_vectors(E)
    if len(gens) != 1:
        raise InputError("rank-one module is not isomorphic to an ideal")
    return IdealData(E.ring, list(gens[0]))


# -- commands ------------------------------------------------------------------------------


def cmd_rees(args, spec, clock):
    pkg = clock("rees", lambda: rs.rees_ideal(spec.module, args.seed))
    res = {
        "ambient_vars": list(pkg.ambient.vars),
        "generator_degrees": list(pkg.module.degrees),
        "sym_ideal": pkg.sorted_strings("sym"),
        "rees_ideal": pkg.sorted_strings("rees"),
        "linear_type": pkg.is_linear_type(),
        "analytic_spread": pkg.special_fiber_dim(),
        "rees_dim": pkg.rees_dim(),
        "rees_pd": pkg.rees_pd(),
        "cohen_macaulay": pkg.is_cohen_macaulay(),
        "notes": list(pkg.notes),
    }
    if args.cross_check:
        emb = clock("oracle", lambda: rs.rees_ideal_by_embedding(spec.module, args.max_degree))
        res["oracle_agrees"] = IdealData(pkg.ambient, emb.gens) == IdealData(
            pkg.ambient, [g for g in pkg.rees_ideal.gb() if pkg.t_degree(g) <= args.max_degree])
    return res, EXIT_OK


def cmd_fiber(args, spec, clock):
    pkg = clock("rees", lambda: rs.rees_ideal(spec.module, args.seed))
    ell = pkg.special_fiber_dim()
    res = {"fiber_vars": list(pkg.fiber_ring.vars), "fiber_ideal": pkg.sorted_strings("fiber"),
           "analytic_spread": ell}
    try:
        res["reduction_number"] = clock("reduction", lambda: rs.reduction_number(pkg, args.seed, ell=ell))
    except rs.NotAReduction as exc:
        res["reduction_number"] = None
        res["notes"] = [str(exc)]
    return res, EXIT_OK


def cmd_powers(args, spec, clock):
    pkg = clock("rees", lambda: rs.rees_ideal(spec.module, args.seed))
    top = args.upto if args.upto is not None else args.max_degree
    out = {}
    for j in range(1, top + 1):
        P = clock(f"power_{j}", lambda: rs.power_module(pkg, j))
        dp, pd = mod.depth_and_pd(P)
        out[str(j)] = {"generators": P.mu, "depth": dp, "pd": pd}
    return {"powers": out}, EXIT_OK


def cmd_bourbaki(args, spec, clock):
    try:
        B = clock("bourbaki", lambda: bb.bourbaki_construct(spec.module, args.mode, args.seed))
    except bb.BourbakiError as exc:
        return {"hypotheses": False, "error": str(exc)}, EXIT_HYPOTHESES
    res = {"mode": B.mode, "seed_used": B.seed, "ring_vars": list(B.ext_ring.vars),
           "free_case": B.free_case, "notes": list(B.notes)}
    if B.free_case:
        return res, EXIT_OK
    res["ideal"] = B.ideal_I.sorted_gb_strings()
    res["psi"] = [format_poly(g) for g in B.psi]
    res["grade"] = B.grade_I
    if args.mode == "random":
        rep = clock("invariants", lambda: bb.bourbaki_invariant_check(spec.module, B, args.seed))
        res["invariants"] = rep.to_dict()
        res["deformation"] = clock("deformation", lambda: bb.rees_deformation_check(spec.module, B, args.seed))
        return res, STATUS_EXIT[rep.status]
    return res, EXIT_OK


def cmd_residual(args, spec, clock):
    I = _ideal_of(spec, args.seed)
    data = clock("residual", lambda: rl.residual_intersection(I, args.s, args.seed,
                                                               extra_degree=args.extra_degree))
    res = {
        "height_I": height(I),
        "J": [format_poly(g) for g in data.J.gens],
        "K": data.K.sorted_gb_strings(),
        "height_K": data.height_K,
        "improper": data.improper,
        "is_residual": data.is_residual,
        "geometric": data.geometric,
        "cm_quotient": data.cm_quotient,
        "seed_used": data.seed,
        "notes": list(data.notes),
    }
    code = EXIT_OK
    if args.an:
        rep = clock("AN", lambda: rl.check_AN(I, args.s, seed=args.seed))
        res["AN"] = rep.to_dict()
        code = STATUS_EXIT[rep.status]
    return res, code


def _coerce(v: str):
    for cast in (int, float):
        try:
            return cast(v)
        except ValueError:
            pass
    return v


def cmd_check(args, spec, clock):
    tid = args.theorem
    if tid not in th.REGISTRY:
        raise InputError(f"unknown theorem {tid!r}; known: {', '.join(th.REGISTRY)}")
    params = {k: _coerce(v) for k, v in args.param}
    if spec is None:
        if tid not in ("P3.5", "P3.6", "T3.7", "L3.8"):
            raise InputError(f"{tid} needs a module spec")
        _, rep = clock("check", lambda: th.check_prop_generators(tid, params, args.seed))
    elif tid == "P3.6" and spec.ideal is not None:
        params["ideal"] = spec.ideal
        _, rep = clock("check", lambda: th.check_prop_generators(tid, params, args.seed))
    elif tid in ("T3.7", "L3.8"):
        params["module"] = spec.module
        _, rep = clock("check", lambda: th.check_prop_generators(tid, params, args.seed))
    else:
        rep = clock("check", lambda: th.check_theorem(tid, spec.module, params, args.seed))
    return {"report": rep.to_dict()}, STATUS_EXIT[rep.status]


def cmd_gallery(args, spec, clock):
    if args.filter is not None and args.filter not in th.REGISTRY:
        raise InputError(f"unknown theorem {args.filter!r}")
    reps = clock("gallery", lambda: th.run_gallery(args.filter, args.seed, max(1, args.jobs)))
    counts = {}
    for r in reps:
        counts[r.status] = counts.get(r.status, 0) + 1
    res = {"counts": dict(sorted(counts.items())), "reports": [r.to_dict() for r in reps]}
    return res, EXIT_CONTRADICTION if counts.get(CONTRADICTION) else EXIT_OK


COMMANDS = {"rees": cmd_rees, "fiber": cmd_fiber, "powers": cmd_powers, "bourbaki": cmd_bourbaki,
            "residual": cmd_residual, "check": cmd_check, "gallery": cmd_gallery}


def _text(command: str, res: dict) -> str:
    lines = []
    if command == "check":
        r = res["report"]
        lines.append(f"{r['theorem']}: {r['status']}")
        for kind, tag in (("hypotheses", "hypothesis"), ("conclusions", "conclusion")):
            for v in r[kind]:
                lines.append(f"  {tag:10s} {'ok  ' if v['passed'] else 'FAIL'} {v['name']}")
        lines.extend(f"  note: {n}" for n in r["notes"])
    elif command == "gallery":
        for r in res["reports"]:
            lines.append(f"{r['theorem']:12s} {r['module']:32s} {r['status']}")
        lines.append(", ".join(f"{k}: {v}" for k, v in res["counts"].items()))
    else:
        for k, v in res.items():
            if isinstance(v, list) and v and all(isinstance(x, str) for x in v):
                lines.append(f"{k}:")
                lines.extend(f"  {x}" for x in v)
            else:
                lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget:
        set_default_budget(**args.budget)
    timing = {}

    def clock(name, fn):
        t = time.perf_counter()
        try:
            return fn()
        finally:
            timing[name] = timing.get(name, 0.0) + time.perf_counter() - t

    spec = None
    try:
        if getattr(args, "spec", None) is not None:
            spec = _load(args)
        if args.field is not None and spec is None and args.command in ("check", "gallery"):
            print("note: --field applies to spec files only", file=sys.stderr)
        res, code = COMMANDS[args.command](args, spec, clock)
    except (SpecError, ParseError, InputError, th.TheoremInputError, rl.ResidualError,
            rs.ReesError) as exc:
        print(f"reeslab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetError as exc:
        print(f"reeslab: budget exhausted: {exc}", file=sys.stderr)
        res, code = {"error": f"budget exhausted: {exc}"}, EXIT_BUDGET
    report = make_report(args.command, args.seed, res, spec, timing if args.timing else None)
    report["exit_code"] = code
    text = dump_report(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text if args.json else _text(args.command, res))
    return code


if __name__ == "__main__":
    sys.exit(main())
