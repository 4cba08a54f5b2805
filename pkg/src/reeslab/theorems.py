"""Executable theorem registry: hypotheses and conclusions evaluated on concrete modules.

Every module lives over a graded polynomial ring ``k[x_1..x_d]``, the
graded-local model of a Gorenstein local ring of dimension ``d``.  Local
conditions become height conditions on Fitting ideals; depths are taken at
the homogeneous maximal ideal via Auslander-Buchsbaum.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from . import bourbaki as bb
from . import modules as mod
from . import rees as rs
from . import residual as rl
from .groebner import IdealData, dimension, height
from .modules import PModule, direct_sum, free_module, ideal_module
from .poly import PolyRing
from .report import CONTRADICTION, CheckReport, Verdict
from .residual import INF

# predicate name -> the operation that decides it (module attribute path)
PREDICATES = {
    "torsion_free": "modules.torsion_submodule",
    "positive_rank": "modules.module_rank",
    "orientable": "modules.is_orientable",
    "rank_one": "modules.module_rank",
    "free_in_codim_1": "modules.fitting_ideal",
    "free_locus": "modules.fitting_ideal",
    "proper_ideal": "bourbaki.bourbaki_construct",
    "bourbaki_ideal": "bourbaki.bourbaki_construct",
    "height": "groebner.height",
    "G_s": "residual.check_Gs",
    "depth_powers": "modules.depth_and_pd",
    "ext_powers": "modules.ext_is_zero",
    "ext_locus": "residual.ext_vanishing_locus_check",
    "reduction_number": "rees.reduction_number",
    "analytic_spread": "rees.special_fiber_dim",
    "projective_dimension": "modules.projective_dimension",
    "strongly_cm": "residual.is_strongly_cm",
    "ideal_module": "residual.is_ideal_module",
    "ring_dimension": "groebner.dimension",
    "parameter_range": "rees.special_fiber_dim",
    "quotient_dimension": "groebner.dimension",
    "generator_count": "modules.minimal_generators",
    "branch": "rees.reduction_number",
    "direct_sum_shape": "modules.direct_sum",
    # conclusions
    "linear_type": "rees.is_linear_type",
    "cm_rees": "rees.is_cm_rees",
    "cm_equivalence": "rees.is_cm_rees",
    "linear_type_transfer": "rees.is_linear_type",
    "bourbaki_linear_type": "rees.is_linear_type",
    "AN_s": "residual.check_AN",
    "spread_formula": "rees.special_fiber_dim",
    "spread_bounds": "rees.special_fiber_dim",
    "reduction_bound": "rees.reduction_number",
    "G_s_transfer": "residual.check_Gs",
    "no_proper_reductions": "rees.special_fiber_dim",
    "T4.4_hypotheses": "theorems.check_theorem",
}


class TheoremInputError(ValueError):
    pass


# -- cached facts about one module -----------------------------------------------------------


class ModuleFacts:
    """Lazily computed invariants of a module, shared by all theorem checks."""

    def __init__(self, E: PModule, seed: int = 0, label: str | None = None):
        self.M = E.minimized
        self.seed = seed
        self.label = label or E.label or "E"
        self.ring: PolyRing = self.M.ring
        self.d = self.ring.nvars
        self.n = self.M.ambient_rank
        self._fit: dict = {}
        self._gs: dict = {}
        self._powers: dict = {}
        self._depths: dict = {}
        self._ext: dict = {}
        self._locus: dict = {}

    @cached_property
    def rank(self) -> int:
        return mod.module_rank(self.M, self.seed)

    @cached_property
    def torsion_free(self) -> bool:
        return mod.torsion_submodule(self.M, self.seed).is_torsion_free

    @cached_property
    def pkg(self) -> rs.ReesPackage:
        return rs.rees_ideal(self.M, self.seed)

    @cached_property
    def ell(self) -> int:
        return self.pkg.special_fiber_dim()

    @cached_property
    def r(self) -> int | None:
        try:
            return rs.reduction_number(self.pkg, self.seed, ell=self.ell)
        except rs.NotAReduction:
            return None

    @cached_property
    def linear_type(self) -> bool:
        return self.pkg.is_linear_type()

    @cached_property
    def cm(self) -> bool:
        return self.pkg.is_cohen_macaulay()

    @cached_property
    def pd(self) -> int:
        return mod.projective_dimension(self.M)

    @cached_property
    def free_locus_height(self):
        return self.fitting_height(self.rank)

    def fitting_height(self, j: int):
        return rl.fitting_heights(self.M, j, self._fit)[j]

    def gs(self, s) -> bool:
        if s <= 1:
            return True
        if s not in self._gs:
            self._gs[s] = rl.check_Gs(self.M, s, self.seed, self._fit, self.rank).verdict
        return self._gs[s]

    @cached_property
    def gs_level(self):
        top = self.n - self.rank + 1
        for s in range(2, top + 1):
            if not self.gs(s):
                return s - 1
        return INF

    @cached_property
    def bourbaki(self) -> bb.BourbakiData | None:
        try:
            return bb.bourbaki_construct(self.M, seed=self.seed)
        except bb.BourbakiError as exc:
            self.bourbaki_error = str(exc)
            return None

    @cached_property
    def g(self):
        B = self.bourbaki
        if B is None:
            return None
        return INF if B.free_case else B.grade_I

    @cached_property
    def ideal_facts(self) -> "ModuleFacts | None":
        B = self.bourbaki
        if B is None or B.free_case:
            return None
        return ModuleFacts(B.ideal_as_module(), self.seed, f"I({self.label})")

    def power(self, j: int) -> PModule:
        if j not in self._powers:
            self._powers[j] = rs.power_module(self.pkg, j)
        return self._powers[j]

    def depth_power(self, j: int):
        if j not in self._depths:
            self._depths[j] = mod.depth(self.power(j))
        return self._depths[j]

    def ext_power_zero(self, j: int, i: int) -> bool:
        if (j, i) not in self._ext:
            self._ext[(j, i)] = mod.ext_is_zero(self.power(j), i)
        return self._ext[(j, i)]

    def ext_locus(self, j: int, codim: int) -> bool:
        if (j, codim) not in self._locus:
            self._locus[(j, codim)] = rl.ext_vanishing_locus_check(self.pkg, j, codim, self.seed)
        return self._locus[(j, codim)]


# -- verdict helpers --------------------------------------------------------------------------


def _span(lo: int, hi: int) -> list[int]:
    return list(range(lo, hi + 1))


def _depth_verdict(F: ModuleFacts, pairs: list[tuple[int, int]]) -> Verdict:
    wit = {}
    ok = True
    for j, bound in pairs:
        dp = F.depth_power(j)
        wit[f"E^{j}"] = [dp, bound]
        ok = ok and dp >= bound
    return Verdict("depth_powers", ok, wit, "" if pairs else "empty range")


def _ext_verdict(F: ModuleFacts, pairs: list[tuple[int, int]]) -> Verdict:
    wit = {}
    ok = True
    for j, i in pairs:
        z = F.ext_power_zero(j, i)
        wit[f"Ext^{i}(E^{j})"] = "0" if z else "nonzero"
        ok = ok and z
    return Verdict("ext_powers", ok, wit, "" if pairs else "empty range")


def _locus_verdict(F: ModuleFacts, js: list[int], codim: int, active: bool) -> Verdict:
    if not active:
        return Verdict("ext_locus", True, {"g": F.g}, "only required when g = 2")
    wit = {}
    ok = True
    for j in js:
        z = F.ext_locus(j, codim)
        wit[f"j={j}"] = z
        ok = ok and z
    return Verdict("ext_locus", ok, {"codim": codim, **wit}, "" if js else "empty range")


def _gs_verdict(F: ModuleFacts, s) -> Verdict:
    return Verdict("G_s", F.gs(s), {"s": s, "rank": F.rank, "level": F.gs_level})


def _standing(F: ModuleFacts, rep: CheckReport, orientable: bool = True) -> bool:
    """Torsion-free, positive rank (and orientable) hypotheses; returns whether they hold."""
    e = F.rank
    rep.hypotheses.append(Verdict("positive_rank", e > 0, {"rank": e}))
    if e <= 0:
        return False
    rep.hypotheses.append(Verdict("torsion_free", F.torsion_free))
    if orientable:
        rep.hypotheses.append(Verdict("orientable", mod.is_orientable(F.M, seed=F.seed), {},
                                      "automatic over a polynomial ring"))
    return rep.hypotheses_hold


def _bourbaki_verdict(F: ModuleFacts, rep: CheckReport) -> bool:
    B = F.bourbaki
    if B is None:
        rep.hypotheses.append(Verdict("bourbaki_ideal", False, {},
                                      getattr(F, "bourbaki_error", "construction failed")))
        return False
    rep.hypotheses.append(Verdict("bourbaki_ideal", True,
                                  {"g": F.g, "seed": B.seed, "free_case": B.free_case}))
    return True


def _conclude(rep: CheckReport, fn: Callable[[], None]) -> CheckReport:
    if rep.hypotheses_hold:
        fn()
    else:
        rep.notes.append("hypotheses fail: conclusions not evaluated")
    return rep


def _default_k(F: ModuleFacts, params: dict) -> int:
    if "k" in params:
        return int(params["k"])
    r = F.r if F.r is not None else 1
    return max(1, min(r, F.ell - F.rank))


# -- theorem checks ----------------------------------------------------------------------------


def _check_T2_5(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    if _standing(F, rep):
        rep.hypotheses.append(Verdict("free_in_codim_1", F.free_locus_height >= 2,
                                      {"height": F.free_locus_height}))
        if rep.hypotheses_hold:
            _bourbaki_verdict(F, rep)

    def concl():
        IF = F.ideal_facts
        cm_I = True if IF is None else IF.cm
        lt_I = True if IF is None else IF.linear_type
        rep.conclusions.append(Verdict("cm_equivalence", F.cm == cm_I, {"cm_E": F.cm, "cm_I": cm_I}))
        # grade R(E)_+ is measured by height, which bounds it above and equals it when R(E) is CM
        h = F.pkg.irrelevant_height()
        strong = F.linear_type and h >= F.rank
        ok = (not lt_I or strong) and (not strong or not F.cm or lt_I)
        rep.conclusions.append(Verdict("linear_type_transfer", ok,
                                       {"linear_type_E": F.linear_type, "linear_type_I": lt_I,
                                        "height_rees_plus": h, "rank": F.rank}))
    return _conclude(rep, concl)


def _check_P2_1(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    e = F.rank
    rep.hypotheses.append(Verdict("positive_rank", e > 0, {"rank": e}))

    def concl():
        ok = e <= F.ell <= F.d + e - 1 and F.ell <= F.n
        rep.conclusions.append(Verdict("spread_bounds", ok,
                                       {"e": e, "ell": F.ell, "d": F.d, "mu": F.n}))
    return _conclude(rep, concl)


def _check_P2_8(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    if _standing(F, rep):
        rep.hypotheses.append(Verdict("free_in_codim_1", F.free_locus_height >= 2,
                                      {"height": F.free_locus_height}))
        if rep.hypotheses_hold:
            _bourbaki_verdict(F, rep)

    def concl():
        sub = bb.bourbaki_invariant_check(F.M, F.bourbaki, F.seed, params.get("s"))
        rep.conclusions.extend(sub.conclusions)
        rep.notes.extend(sub.notes)
    return _conclude(rep, concl)


def _ideal_standing(F: ModuleFacts, rep: CheckReport) -> bool:
    e = F.rank
    rep.hypotheses.append(Verdict("rank_one", e == 1, {"rank": e}))
    if e != 1:
        return False
    rep.hypotheses.append(Verdict("torsion_free", F.torsion_free))
    if not F.torsion_free:
        return False
    B = F.bourbaki
    proper = B is not None and not B.free_case
    rep.hypotheses.append(Verdict("proper_ideal", proper,
                                  {"ideal": B.ideal_I.sorted_gb_strings() if proper else None},
                                  "the module is realized as an ideal of grade >= 2 without common factor"))
    return proper


def _check_T2_10(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    s = None
    if _ideal_standing(F, rep):
        g = F.g
        level = F.gs_level
        s = int(params.get("s", min(level, F.d)))
        rep.hypotheses.append(Verdict("height", True, {"g": g}))
        rep.hypotheses.append(Verdict("parameter_range", s >= g, {"s": s, "g": g}))
        rep.hypotheses.append(_gs_verdict(F, s))
        pairs = [(j, F.d - g - j + 2) for j in _span(1, s - g + 1)]
        rep.hypotheses.append(_depth_verdict(F, pairs))

    def concl():
        an = rl.check_AN(F.bourbaki.ideal_I, s, trials=int(params.get("trials", 2)), seed=F.seed)
        wit = {v.name: v.passed for v in an.conclusions}
        rep.conclusions.append(Verdict("AN_s", an.status != CONTRADICTION, {"s": s, **wit}))
        rep.notes.extend(an.notes)
    return _conclude(rep, concl)


def _check_T2_11(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    if _ideal_standing(F, rep):
        g, ell = F.g, F.ell
        rep.hypotheses.append(Verdict("height", g >= 1, {"g": g}))
        rep.hypotheses.append(_gs_verdict(F, ell + 1))
        rep.hypotheses.append(_depth_verdict(F, [(j, F.d - g - j + 2) for j in _span(1, ell - g)]))

    def concl():
        rep.conclusions.append(Verdict("linear_type", F.linear_type))
        rep.conclusions.append(Verdict("cm_rees", F.cm))
    return _conclude(rep, concl)


def _check_T2_12(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    if _ideal_standing(F, rep):
        g, ell = F.g, F.ell
        rep.hypotheses.append(Verdict("height", g >= 1, {"g": g}))
        rep.hypotheses.append(_gs_verdict(F, ell + 1))
        top = min(ell - g, F.d - g - 1)
        rep.hypotheses.append(_ext_verdict(F, [(j, g + j - 1) for j in _span(1, top)]))

    def concl():
        rep.conclusions.append(Verdict("linear_type", F.linear_type))
    return _conclude(rep, concl)


def _t32_hypotheses(F: ModuleFacts, rep: CheckReport) -> None:
    if _standing(F, rep):
        e, ell = F.rank, F.ell
        rep.hypotheses.append(_gs_verdict(F, ell - e + 2))
        top = min(ell - e - 1, F.d - 3)
        rep.hypotheses.append(_ext_verdict(F, [(j, j + 1) for j in _span(1, top)]))


def _check_T3_2(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    _t32_hypotheses(F, rep)

    def concl():
        rep.conclusions.append(Verdict("linear_type", F.linear_type))
        IF = F.ideal_facts
        if F.bourbaki is None:
            rep.conclusions.append(Verdict("bourbaki_linear_type", False, {},
                                           getattr(F, "bourbaki_error", "")))
        else:
            lt = True if IF is None else IF.linear_type
            rep.conclusions.append(Verdict("bourbaki_linear_type", lt, {"g": F.g}))
    return _conclude(rep, concl)


def _check_P3_5(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    if _standing(F, rep, orientable=False):
        e, ell = F.rank, F.ell
        rep.hypotheses.append(Verdict("projective_dimension", F.pd == 1, {"pd": F.pd}))
        rep.hypotheses.append(_gs_verdict(F, ell - e + 2))

    def concl():
        rep.conclusions.append(Verdict("no_proper_reductions", F.n == F.ell, {"mu": F.n, "ell": F.ell}))
        top = int(params.get("max_j", 3))
        v = _ext_verdict(F, [(j, j + 1) for j in _span(1, top)])
        rep.conclusions.append(v)
    return _conclude(rep, concl)


def _check_P3_6(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    I = params.get("ideal")
    frank = int(params.get("free_rank", 0))
    rep.hypotheses.append(Verdict("direct_sum_shape", I is not None and frank >= 1,
                                  {"free_rank": frank}, "E = I + R^(e-1) with e - 1 >= 1"))
    IF = None
    if rep.hypotheses_hold:
        IF = ModuleFacts(ideal_module(I), F.seed, "I")
        rep.hypotheses.append(Verdict("height", height(I) == 2, {"height": height(I)}))
        rep.hypotheses.append(Verdict("strongly_cm", rl.is_strongly_cm(I)))
        v = _gs_verdict(IF, IF.ell + 1)
        rep.hypotheses.append(v)

    def concl():
        e, ell_E = F.rank, F.ell
        rep.conclusions.append(Verdict("spread_formula", ell_E == IF.ell + e - 1,
                                       {"ell_E": ell_E, "ell_I": IF.ell, "e": e}))
        rep.conclusions.append(_gs_verdict(F, ell_E - e + 2))
        rep.conclusions.append(_ext_verdict(F, [(j, j + 1) for j in _span(1, ell_E - e + 1)]))
    return _conclude(rep, concl)


def general_submodule(M: PModule, count: int, seed: int) -> tuple[PModule, PModule]:
    """``E`` generated by ``count`` seeded general elements of ``mM``, and ``M/E``."""
    M = M.minimized
    ring = M.ring
    n = M.ambient_rank
    rng = random.Random(seed)
    top = max(M.degrees) + 1
    vecs = []
    for _ in range(count):
        v = tuple(rl._random_form(ring, top - M.degrees[i], rng) for i in range(n))
        vecs.append(v)
    E = mod.subquotient(ring, list(M.degrees), vecs, list(M.relations), f"E<{M.label}")
    Q = mod.module_quotient_by_vectors(M, vecs, f"{M.label}/E")
    return E, Q


def module_dimension(Q: PModule):
    """Krull dimension of the module (``-1`` for zero)."""
    if Q.is_zero():
        return -1
    return dimension(mod.fitting_ideal(Q.minimized, 0))


def _free_witness(M: mod.PModule, Q: mod.PModule, seed: int):
    """``f_M * f_Q`` with ``M_f`` free and ``(M/E)_f = 0``, so ``E_f = M_f`` is free."""
    M = M.minimized
    f = M.ring.one()
    if M.nrels:
        f = mod.matrix_rank(M.rows(), seed)[1]
    Qm = Q.minimized
    if Qm.ambient_rank:
        rank, g = mod.matrix_rank(Qm.rows(), seed)
        if rank < Qm.ambient_rank:
            return None
        f = f * g
    return f


def _check_T3_7(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    _t32_hypotheses(F, rep)
    sub = Q = None
    if rep.hypotheses_hold:
        e, ell, d = F.rank, F.ell, F.d
        count = int(params.get("count", ell if ell == d + e - 1 else ell + 1))
        E, Q = general_submodule(F.M, count, F.seed + 17)
        qd = module_dimension(Q)
        bound = max(d - ell + e - 2, 0)
        rep.hypotheses.append(Verdict("quotient_dimension", qd <= bound,
                                      {"dim_M_over_E": qd, "bound": bound, "count": count}))
        mu_ok = ell != d + e - 1 or E.mu <= ell
        rep.hypotheses.append(Verdict("generator_count", mu_ok, {"mu_E": E.mu, "ell": ell}))
        sub = E

    def concl():
        lt = rs.is_linear_type(rs.rees_ideal(sub, F.seed, witness=_free_witness(F.M, Q, F.seed)))
        rep.conclusions.append(Verdict("linear_type", lt, {"submodule_generators": sub.mu}))
    return _conclude(rep, concl)


def _check_L3_8(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    Q = None
    s = None
    if _standing(F, rep, orientable=False):
        s = int(params.get("s", max(2, min(F.gs_level, F.d))))
        rep.hypotheses.append(Verdict("parameter_range", 2 <= s <= F.d, {"s": s, "d": F.d}))
        rep.hypotheses.append(_gs_verdict(F, s))
        if rep.hypotheses_hold:
            _, Q = general_submodule(F.M, s + F.rank - 1, F.seed + 29)

    def concl():
        qd = module_dimension(Q)
        rep.conclusions.append(Verdict("quotient_dimension", qd <= F.d - s,
                                       {"dim_M_over_E": qd, "bound": F.d - s, "s": s}))
    return _conclude(rep, concl)


def _t44_hypotheses(F: ModuleFacts, k: int, rep: CheckReport) -> None:
    if not _standing(F, rep):
        return
    e, ell, d = F.rank, F.ell, F.d
    rep.hypotheses.append(_gs_verdict(F, ell - e + 1))
    rep.hypotheses.append(Verdict("parameter_range", 1 <= k <= ell - e, {"k": k, "ell-e": ell - e}))
    rep.hypotheses.append(Verdict("reduction_number", F.r is not None and F.r <= k, {"r": F.r, "k": k}))
    if not rep.hypotheses_hold or not _bourbaki_verdict(F, rep):
        return
    g = F.g
    a = ell - e - k - g + 1
    pairs = [(j, d - g - j + 2) for j in _span(1, a)]
    pairs += [(j, d - ell + e + k - j) for j in _span(max(1, a + 1), k)]
    rep.hypotheses.append(_depth_verdict(F, pairs))
    js = _span(max(0, ell - e - k), ell - e - 3)
    rep.hypotheses.append(_locus_verdict(F, js, ell - e, g == 2))


def _check_T4_4(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    k = _default_k(F, params)
    _t44_hypotheses(F, k, rep)

    def concl():
        rep.conclusions.append(Verdict("cm_rees", F.cm))
    return _conclude(rep, concl)


def _implied_t44(F: ModuleFacts, k: int, rep: CheckReport) -> None:
    sub = CheckReport("T4.4", rep.module, rep.seed)
    _t44_hypotheses(F, k, sub)
    failed = [v.name for v in sub.hypotheses if not v.passed]
    rep.conclusions.append(Verdict("T4.4_hypotheses", not failed, {"k": k, "failed": failed}))


def _corollary_common(F: ModuleFacts, rep: CheckReport, dim: int | None) -> bool:
    if dim is not None:
        rep.hypotheses.append(Verdict("ring_dimension", F.d == dim, {"d": F.d}))
        if F.d != dim:
            return False
    if not _standing(F, rep):
        return False
    rep.hypotheses.append(_gs_verdict(F, F.ell - F.rank + 1))
    return rep.hypotheses_hold


def _check_C_d4(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    route = None
    if _corollary_common(F, rep, 4):
        le, r = F.ell - F.rank, F.r
        rep.hypotheses.append(Verdict("reduction_number", r is not None and r <= le, {"r": r, "ell-e": le}))
        if rep.hypotheses_hold:
            dp = F.depth_power
            branch = None
            if r == 1 and ((le > 1 and dp(1) >= 2) or (le == 1 and dp(1) >= 3)):
                branch = "a"
            elif r == 2 and ((le > 2 and dp(1) >= 2) or (le == 2 and all(dp(j) >= 4 - j for j in (1, 2)))):
                branch = "b"
            elif r == 3 and all(dp(j) >= 4 - j for j in (1, 2, 3)):
                branch = "c"
            route = None if branch is None else ("external" if le == 3 and r <= 2 else "T4.4")
            rep.hypotheses.append(Verdict("branch", branch is not None, {"branch": branch, "route": route}))

    def concl():
        rep.conclusions.append(Verdict("cm_rees", F.cm))
        if route == "T4.4":
            _implied_t44(F, F.r, rep)
        else:
            rep.notes.append("branch relies on the G_d case; no T4.4 implication asserted")
    return _conclude(rep, concl)


def _check_C_d5(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    route = None
    if _corollary_common(F, rep, 5):
        le, r = F.ell - F.rank, F.r
        rep.hypotheses.append(Verdict("reduction_number", r is not None and 1 <= r <= le, {"r": r}))
        if rep.hypotheses_hold:
            _bourbaki_verdict(F, rep)
        if rep.hypotheses_hold:
            dp = F.depth_power
            g = F.g
            branch = None
            if le == 4 and r <= 2 and dp(1) >= 4:
                branch = "a"
            elif le == 4 and r >= 3 and all(dp(j) >= r + 1 - j for j in _span(1, r)) and \
                    (g != 2 or F.ext_locus(1, 4)):
                branch = "b"
            elif r == le <= 3 and all(dp(j) >= 5 - j for j in _span(1, r)):
                branch = "c"
            elif r == le - 1 <= 2 and all(dp(j) >= 4 - j for j in _span(1, r)):
                branch = "d"
            elif le == 3 and r == 1 and dp(1) >= (4 if g == 2 else 2):
                branch = "e"
            route = None if branch is None else ("external" if branch == "a" else "T4.4")
            rep.hypotheses.append(Verdict("branch", branch is not None, {"branch": branch, "route": route}))

    def concl():
        rep.conclusions.append(Verdict("cm_rees", F.cm))
        if route == "T4.4":
            _implied_t44(F, F.r, rep)
        else:
            rep.notes.append("branch relies on the G_d case; no T4.4 implication asserted")
    return _conclude(rep, concl)


def _check_large_red(F: ModuleFacts, params: dict, rep: CheckReport, shift: int) -> CheckReport:
    k = None
    if _corollary_common(F, rep, None):
        le = F.ell - F.rank
        rep.hypotheses.append(Verdict("parameter_range", le + 1 >= 2, {"ell-e": le}))
        if rep.hypotheses_hold and _bourbaki_verdict(F, rep):
            g = F.g
            k = le - g + shift
            rep.hypotheses.append(Verdict("reduction_number", F.r is not None and F.r <= k, {"r": F.r, "bound": k}))
            rep.hypotheses.append(_depth_verdict(F, [(j, F.d - g - j + shift) for j in _span(1, k)]))
            if shift == 1:
                rep.hypotheses.append(_locus_verdict(F, _span(1, le - 3), le, g == 2))

    def concl():
        rep.conclusions.append(Verdict("cm_rees", F.cm))
        if k is not None and k >= 1:
            _implied_t44(F, k, rep)
        else:
            rep.notes.append("k < 1: outside the range of T4.4, no implication asserted")
    return _conclude(rep, concl)


def _check_T_IdealMod(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    k = _default_k(F, params)
    if _standing(F, rep, orientable=False):
        rep.hypotheses.append(Verdict("ideal_module", rl.is_ideal_module(F.M)))
        e, ell, d = F.rank, F.ell, F.d
        rep.hypotheses.append(Verdict("parameter_range", 1 <= k <= ell - e, {"k": k}))
        rep.hypotheses.append(Verdict("reduction_number", F.r is not None and F.r <= k, {"r": F.r, "k": k}))
        need = ell - e - min(2, k) + 1
        rep.hypotheses.append(Verdict("free_locus", F.free_locus_height >= need,
                                      {"height_Fitt_e": F.free_locus_height, "needed": need}))
        rep.hypotheses.append(_gs_verdict(F, ell - e + 1))
        rep.hypotheses.append(_depth_verdict(F, [(j, d - ell + e + k - j) for j in _span(1, k)]))

    def concl():
        rep.conclusions.append(Verdict("cm_rees", F.cm))
    return _conclude(rep, concl)


def _check_T_HerLinType(F: ModuleFacts, params: dict, rep: CheckReport) -> CheckReport:
    if _standing(F, rep):
        e, ell, d = F.rank, F.ell, F.d
        rep.hypotheses.append(_gs_verdict(F, ell - e + 2))
        rep.hypotheses.append(_depth_verdict(F, [(j, d - j) for j in _span(1, ell - e - 1)]))

    def concl():
        rep.conclusions.append(Verdict("linear_type", F.linear_type))
        rep.conclusions.append(Verdict("cm_rees", F.cm))
    return _conclude(rep, concl)


# -- registry ----------------------------------------------------------------------------------


@dataclass(frozen=True)
class TheoremEntry:
    id: str
    title: str
    hypotheses: tuple
    conclusions: tuple
    check: Callable = field(repr=False, compare=False)


_STANDING = ("positive_rank", "torsion_free", "orientable")

REGISTRY: dict[str, TheoremEntry] = {t.id: t for t in [
    TheoremEntry("P2.1", "analytic spread bounds", ("positive_rank",), ("spread_bounds",), _check_P2_1),
    TheoremEntry("T2.5", "CM transfer to the Bourbaki ideal",
                 _STANDING + ("free_in_codim_1", "bourbaki_ideal"),
                 ("cm_equivalence", "linear_type_transfer"), _check_T2_5),
    TheoremEntry("P2.8", "spread and reduction number of the Bourbaki ideal",
                 _STANDING + ("free_in_codim_1", "bourbaki_ideal"),
                 ("spread_formula", "reduction_bound", "G_s_transfer"), _check_P2_8),
    TheoremEntry("T2.10", "depth of powers gives AN_s",
                 ("rank_one", "torsion_free", "proper_ideal", "height", "parameter_range", "G_s",
                  "depth_powers"), ("AN_s",), _check_T2_10),
    TheoremEntry("T2.11", "linear type from depth of powers",
                 ("rank_one", "torsion_free", "proper_ideal", "height", "G_s", "depth_powers"),
                 ("linear_type", "cm_rees"), _check_T2_11),
    TheoremEntry("T2.12", "linear type from Ext vanishing",
                 ("rank_one", "torsion_free", "proper_ideal", "height", "G_s", "ext_powers"),
                 ("linear_type",), _check_T2_12),
    TheoremEntry("T3.2", "modules of linear type from Ext vanishing",
                 _STANDING + ("G_s", "ext_powers"), ("linear_type", "bourbaki_linear_type"), _check_T3_2),
    TheoremEntry("P3.5", "projective dimension one",
                 ("positive_rank", "torsion_free", "projective_dimension", "G_s"),
                 ("no_proper_reductions", "ext_powers"), _check_P3_5),
    TheoremEntry("P3.6", "strongly CM ideal plus a free module",
                 ("direct_sum_shape", "height", "strongly_cm", "G_s"),
                 ("spread_formula", "G_s", "ext_powers"), _check_P3_6),
    TheoremEntry("T3.7", "general submodules are of linear type",
                 _STANDING + ("G_s", "ext_powers", "quotient_dimension", "generator_count"),
                 ("linear_type",), _check_T3_7),
    TheoremEntry("L3.8", "dimension of M/E for general elements",
                 ("positive_rank", "torsion_free", "parameter_range", "G_s"),
                 ("quotient_dimension",), _check_L3_8),
    TheoremEntry("T4.4", "CM Rees algebras from depth of powers",
                 _STANDING + ("G_s", "parameter_range", "reduction_number", "bourbaki_ideal",
                              "depth_powers", "ext_locus"), ("cm_rees",), _check_T4_4),
    TheoremEntry("C-d4", "dimension four",
                 ("ring_dimension",) + _STANDING + ("G_s", "reduction_number", "branch"),
                 ("cm_rees", "T4.4_hypotheses"), _check_C_d4),
    TheoremEntry("C-d5", "dimension five",
                 ("ring_dimension",) + _STANDING + ("G_s", "reduction_number", "bourbaki_ideal", "branch"),
                 ("cm_rees", "T4.4_hypotheses"), _check_C_d5),
    TheoremEntry("C-LargeRed1", "reduction number at most l - e - g + 1",
                 _STANDING + ("G_s", "parameter_range", "bourbaki_ideal", "reduction_number",
                              "depth_powers", "ext_locus"),
                 ("cm_rees", "T4.4_hypotheses"),
                 lambda F, p, r: _check_large_red(F, p, r, 1)),
    TheoremEntry("C-LargeRed2", "reduction number at most l - e - g + 2",
                 _STANDING + ("G_s", "parameter_range", "bourbaki_ideal", "reduction_number",
                              "depth_powers"),
                 ("cm_rees", "T4.4_hypotheses"),
                 lambda F, p, r: _check_large_red(F, p, r, 2)),
    TheoremEntry("T-IdealMod", "ideal modules",
                 ("positive_rank", "torsion_free", "ideal_module", "parameter_range", "reduction_number",
                  "free_locus", "G_s", "depth_powers"), ("cm_rees",), _check_T_IdealMod),
    TheoremEntry("T-HerLinType", "linear type and CM from depth of powers",
                 _STANDING + ("G_s", "depth_powers"), ("linear_type", "cm_rees"), _check_T_HerLinType),
]}


def resolve_predicate(name: str):
    """The function deciding a registry predicate."""
    import importlib

    path = PREDICATES[name]
    modname, attr = path.split(".")
    return getattr(importlib.import_module(f"reeslab.{modname}"), attr)


GS_NOTE = ("G_s uses mu(E_p) <= dim R_p + e - 1, i.e. ht Fitt_j >= j - e + 2; "
           "the variant dim R_p - e + 1 differs for e > 1")
R_NOTE = "probabilistic: r(E) is the least reduction number over sampled general reductions"


def check_theorem(id: str, E: PModule | ModuleFacts, params: dict | None = None,
                  seed: int = 0) -> CheckReport:
    if id not in REGISTRY:
        raise TheoremInputError(f"unknown theorem id {id!r}; known: {', '.join(REGISTRY)}")
    F = E if isinstance(E, ModuleFacts) else ModuleFacts(E, seed)
    rep = CheckReport(id, F.label, F.seed)
    rep = REGISTRY[id].check(F, dict(params or {}), rep)
    names = {v.name for v in rep.hypotheses + rep.conclusions}
    if "G_s" in names:
        rep.notes.append(GS_NOTE)
    if "reduction_number" in names:
        rep.notes.append(R_NOTE)
    return rep


# -- example generators -------------------------------------------------------------------------


def random_linear_matrix(ring: PolyRing, nrows: int, ncols: int, seed: int,
                         density: float = 1.0) -> list[tuple]:
    """Columns of a seeded matrix of linear forms (each coefficient kept with probability ``density``)."""
    rng = random.Random(seed)
    p = ring.char
    top = p - 1 if p else 50
    cols = []
    for _ in range(ncols):
        col = []
        for _ in range(nrows):
            f = ring.zero()
            for v in ring.gens():
                if rng.random() < density:
                    f = f + v.scale(rng.randint(1, top))
            col.append(f)
        cols.append(tuple(col))
    return cols


def random_pd1_module(ring: PolyRing, nrows: int, ncols: int, seed: int, density: float = 1.0,
                      attempts: int = 40) -> tuple[PModule, int]:
    """Seeded ``coker`` of a linear matrix with pd 1, torsion-free and ``G_{l-e+2}``.

    Rejection sampling; returns the module and the seed that produced it.
    """
    for k in range(attempts):
        s = seed * 1000 + k
        cols = random_linear_matrix(ring, nrows, ncols, s, density)
        E = PModule(ring, nrows, tuple(cols), (0,) * nrows, f"coker{nrows}x{ncols}[{s}]")
        M = E.minimized
        if M.ambient_rank != nrows or M.nrels != ncols:
            continue
        F = ModuleFacts(M, seed)
        if F.rank != nrows - ncols or F.pd != 1 or not F.torsion_free:
            continue
        if F.gs(F.ell - F.rank + 2):
            return M, s
    raise TheoremInputError("rejection sampling found no pd-1 module with the G condition")


def check_prop_generators(id: str, params: dict | None = None, seed: int = 0):
    """Build an example for P3.5, P3.6, T3.7 or L3.8 and check it."""
    params = dict(params or {})
    if id == "P3.5":
        nv = int(params.get("nvars", 3))
        ring = PolyRing([f"x{i + 1}" for i in range(nv)])
        E, _ = random_pd1_module(ring, int(params.get("rows", 3)), int(params.get("cols", 2)), seed,
                                 float(params.get("density", 1.0)))
        return E, check_theorem("P3.5", E, params, seed)
    if id == "P3.6":
        I = params.get("ideal")
        if I is None:
            ring = PolyRing(["x", "y", "z"])
            cols = random_linear_matrix(ring, 3, 2, seed)
            rows = [[c[i] for c in cols] for i in range(3)]
            I = IdealData(ring, mod._minors(rows, 2))
        frank = int(params.get("free_rank", 1))
        IM = ideal_module(I)
        deg = IM.degrees[0]
        E = direct_sum(IM, free_module(I.ring, frank, [deg] * frank), label=f"I+R^{frank}")
        return E, check_theorem("P3.6", E, {"ideal": I, "free_rank": frank}, seed)
    if id in ("T3.7", "L3.8"):
        M = params.get("module")
        if M is None:
            ring = PolyRing(["x", "y"])
            x, y = ring.gens()
            M = direct_sum(ideal_module([x, y]), free_module(ring, 1, [1]), label="(x,y)+R")
        return M, check_theorem(id, M, params, seed)
    raise TheoremInputError(f"no example generator for {id!r}")


# -- gallery -----------------------------------------------------------------------------------


@dataclass
class GalleryItem:
    name: str
    module: PModule
    params: dict = field(default_factory=dict)


def _ideal(ring: PolyRing, texts: list[str]) -> IdealData:
    return IdealData.parse(ring, texts)


def gallery(seed: int = 0) -> list[GalleryItem]:
    """The built-in modules; the random pd-1 members depend on the seed."""
    R2 = PolyRing(["x", "y"])
    R3 = PolyRing(["x", "y", "z"])
    R4 = PolyRing(["x", "y", "z", "w"])
    items = []

    def add(name, M, **params):
        items.append(GalleryItem(name, M.with_label(name), params))

    def plus_free(I: IdealData, k: int, name: str):
        IM = ideal_module(I)
        add(name, direct_sum(IM, free_module(I.ring, k, [IM.degrees[0]] * k)), ideal=I, free_rank=k)

    add("R^2/k[x,y]", free_module(R2, 2))
    add("R^3/k[x,y,z]", free_module(R3, 3))
    add("(x,y)/k[x,y]", ideal_module(_ideal(R2, ["x", "y"])))
    add("(x,y,z)/k[x,y,z]", ideal_module(_ideal(R3, ["x", "y", "z"])))
    add("(x,y)/k[x,y,z]", ideal_module(_ideal(R3, ["x", "y"])))
    add("(x2,xy,y2)/k[x,y]", ideal_module(_ideal(R2, ["x^2", "x*y", "y^2"])))
    add("(xz,xw,yz,yw)/k[x,y,z,w]", ideal_module(_ideal(R4, ["x*z", "x*w", "y*z", "y*w"])))
    plus_free(_ideal(R2, ["x", "y"]), 1, "(x,y)+R/k[x,y]")
    plus_free(_ideal(R2, ["x^2", "x*y", "y^2"]), 1, "(x2,xy,y2)+R/k[x,y]")
    plus_free(_ideal(R3, ["x", "y", "z"]), 1, "(x,y,z)+R/k[x,y,z]")
    plus_free(_ideal(R3, ["x", "y"]), 2, "(x,y)+R^2/k[x,y,z]")
    E1, _ = random_pd1_module(R3, 3, 2, seed)
    add("pd1 3x2/k[x,y,z]", E1)
    E2, _ = random_pd1_module(R3, 4, 2, seed, density=0.7)
    add("pd1 4x2/k[x,y,z]", E2)
    add("(x,y)+(z,w)/k[x,y,z,w]", direct_sum(ideal_module(_ideal(R4, ["x", "y"])),
                                             ideal_module(_ideal(R4, ["z", "w"]))))
    return items


def _run_item(args) -> list[CheckReport]:
    item, ids, seed = args
    F = ModuleFacts(item.module, seed, item.name)
    out = []
    for tid in ids:
        out.append(check_theorem(tid, F, item.params, seed))
    return out


def run_gallery(filter: str | None = None, seed: int = 0, jobs: int = 1,
                items: list[GalleryItem] | None = None) -> list[CheckReport]:
    """Every registry entry (or the one named by ``filter``) on every gallery module."""
    ids = [filter] if filter else list(REGISTRY)
    for tid in ids:
        if tid not in REGISTRY:
            raise TheoremInputError(f"unknown theorem id {tid!r}")
    items = gallery(seed) if items is None else items
    work = [(it, ids, seed) for it in items]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_run_item, work))
    else:
        chunks = [_run_item(w) for w in work]
    return [rep for chunk in chunks for rep in chunk]

