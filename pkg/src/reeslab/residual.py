"""Condition G_s, residual intersections, Artin-Nagata checks, sliding depth, Ext loci.

All local conditions are turned into height conditions on global ideals:
a module is free at ``p`` iff ``p`` misses ``Fitt_e``, and ``mu(E_p) <= m``
iff ``p`` misses ``Fitt_m``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .groebner import IdealData, dimension, height, ideal_quotient
from .modules import (
    PModule,
    depth_and_pd,
    fitting_ideal,
    hom_dual,
    kernel,
    minimal_generators,
    module_rank,
    quotient_ring_module,
    subquotient,
)
from .poly import Poly
from .report import CheckReport, Verdict
from .rees import ReesPackage, power_module, rees_ideal

INF = math.inf


class ResidualError(ValueError):
    pass


# -- G_s -----------------------------------------------------------------------------


@dataclass
class GsReport:
    s: float
    rank: int
    heights: dict  # j -> height of Fitt_j
    verdict: bool
    failed_at: int | None = None

    @property
    def note(self) -> str:
        return ("G_s read as mu(E_p) <= dim R_p + e - 1 on the locus where E_p is not free, "
                "i.e. ht Fitt_j >= j - e + 2 for e <= j <= e + s - 2")


def fitting_heights(E: PModule, upto: int, cache: dict | None = None) -> dict:
    """``{j: height Fitt_j(E)}`` for ``j <= upto``; unit ideals count as ``inf``."""
    M = E.minimized
    n = M.ambient_rank
    out = {}
    for j in range(upto + 1):
        if cache is not None and j in cache:
            out[j] = cache[j]
            continue
        h = INF if j >= n else height(fitting_ideal(M, j))
        out[j] = h
        if cache is not None:
            cache[j] = h
    return out


def check_Gs(E: PModule, s, seed: int = 0, cache: dict | None = None,
             rank: int | None = None) -> GsReport:
    M = E.minimized
    e = module_rank(M, seed) if rank is None else rank
    n = M.ambient_rank
    top = n - 1 if s == INF else min(e + int(s) - 2, n - 1)
    hs = fitting_heights(M, max(top, e - 1), cache)
    heights = {j: hs[j] for j in range(e, top + 1)}
    for j in range(e, top + 1):
        if hs[j] < j - e + 2:
            return GsReport(s, e, heights, False, j)
    return GsReport(s, e, heights, True)


# -- residual intersections ---------------------------------------------------------------


@dataclass
class ResidualData:
    I: IdealData
    s: int
    J: IdealData
    K: IdealData
    height_K: float
    geometric: bool
    cm_quotient: bool | None
    improper: bool
    seed: int | None
    is_residual: bool  # height(K) >= s (or K improper)
    notes: list = field(default_factory=list)


def _min_gens(I: IdealData) -> list[Poly]:
    gens = [g for g in I.gens if g.terms]
    if gens and all(g.is_homogeneous() for g in gens):
        return [v[0] for v in minimal_generators(I.ring, 1, [(g,) for g in gens])]
    return gens


def _random_form(ring, degree: int, rng: random.Random) -> Poly:
    p = ring.char
    top = p - 1 if p else 1000
    if degree == 0:
        return ring.const(rng.randint(1, top))
    terms = {}
    for combo in itertools.combinations_with_replacement(range(ring.nvars), degree):
        if any(ring.weights[i] != 1 for i in combo):
            continue
        e = [0] * ring.nvars
        for i in combo:
            e[i] += 1
        terms[tuple(e)] = rng.randint(1, top)
    return Poly(ring, terms)


def random_combinations(gens: list[Poly], s: int, seed: int, extra_degree: int = 0) -> list[Poly]:
    """``s`` homogeneous combinations of ``gens`` with seeded coefficients.

    Coefficients are scalars (``extra_degree == 0``) or random forms raising
    the top generator degree by ``extra_degree``.
    """
    ring = gens[0].ring
    rng = random.Random(seed)
    D = max(g.degree() for g in gens) + extra_degree
    out = []
    for _ in range(s):
        acc = ring.zero()
        for g in gens:
            d = D - g.degree()
            if d < 0:
                continue
            acc = acc + _random_form(ring, d, rng) * g
        out.append(acc)
    return out


def residual_intersection(I: IdealData, s: int, seed: int = 0, J: IdealData | None = None,
                          extra_degree: int = 0, attempts: int = 5) -> ResidualData:
    """``K = J : I`` for ``s`` seeded combinations ``J`` (or a forced ``J``)."""
    if I.is_unit():
        raise ResidualError("residual intersections need a proper ideal")
    g = height(I)
    if s < g:
        raise ResidualError(f"s = {s} is below height(I) = {g}")
    ring = I.ring
    gens = _min_gens(I)
    tries = [None] if J is not None else [seed + 7919 * k for k in range(attempts)]
    data = None
    for sd in tries:
        Jk = J if J is not None else IdealData(ring, random_combinations(gens, s, sd, extra_degree))
        K = ideal_quotient(Jk, I)
        if K.is_unit():
            return ResidualData(I, s, Jk, K, INF, False, None, True, sd, True,
                                ["improper: J : I is the unit ideal at this s"])
        hK = height(K)
        geometric = height(K + I) >= s + 1
        pd = depth_and_pd(quotient_ring_module(K.gb()))[1]
        data = ResidualData(I, s, Jk, K, hK, geometric, pd == hK, False, sd, hK >= s)
        if data.is_residual:
            return data
        data.notes.append(f"height(K) = {hK} < s with seed {sd}")
    return data


def check_AN(I: IdealData, s: int, trials: int = 2, seed: int = 0,
             geometric_only: bool = False) -> CheckReport:
    """Sampled Artin-Nagata test: every proper sampled i-residual ``R/K`` is CM, ``g <= i <= s``."""
    if I.is_unit():
        raise ResidualError("AN_s is defined for proper ideals")
    g = height(I)
    rep = CheckReport("AN_s" + ("^-" if geometric_only else ""), str(I), seed)
    if s < g:
        rep.notes.append(f"vacuous: s = {s} < height {g}")
        return rep
    for i in range(int(g), s + 1):
        for t in range(trials):
            sd = seed + 1009 * i + 31 * t
            res = residual_intersection(I, i, sd, extra_degree=t % 2)
            if res.improper:
                rep.notes.append(f"i={i} trial={t}: improper, skipped")
                continue
            if not res.is_residual:
                rep.notes.append(f"i={i} trial={t}: not a residual intersection, skipped")
                continue
            if geometric_only and not res.geometric:
                rep.notes.append(f"i={i} trial={t}: not geometric, skipped")
                continue
            rep.conclusions.append(Verdict(
                f"CM(R/K) i={i} trial={t}", bool(res.cm_quotient),
                {"height_K": res.height_K, "geometric": res.geometric, "seed": res.seed}))
    return rep


# -- Koszul homology and sliding depth -------------------------------------------------------


def koszul_homology(gens: list[Poly]) -> list[PModule]:
    """``H_0..H_n`` of the Koszul complex on ``gens`` as minimized graded modules."""
    ring = gens[0].ring
    n = len(gens)
    degs = [g.degree() for g in gens]
    subsets = [list(itertools.combinations(range(n), j)) for j in range(n + 1)]
    sdeg = [[sum(degs[i] for i in S) for S in subsets[j]] for j in range(n + 1)]
    index = [{S: k for k, S in enumerate(subsets[j])} for j in range(n + 1)]
    zero = ring.zero()

    def boundary(j):
        cols = []
        for S in subsets[j]:
            v = [zero] * len(subsets[j - 1])
            for pos, i in enumerate(S):
                k = index[j - 1][S[:pos] + S[pos + 1:]]
                v[k] = gens[i] if pos % 2 == 0 else -gens[i]
            cols.append(tuple(v))
        return cols

    maps = {j: boundary(j) for j in range(1, n + 1)}
    out = []
    for j in range(n + 1):
        if j == 0:
            Z = [(ring.one(),)]
        else:
            Z = kernel(ring, len(subsets[j - 1]), maps[j], sdeg[j - 1], sdeg[j])
        B = maps.get(j + 1, [])
        out.append(subquotient(ring, sdeg[j], Z, B, f"H_{j}"))
    return out


def sliding_depth_data(I: IdealData) -> list[tuple[int, float, float]]:
    """``(j, depth H_j, d - n + j)`` for the nonzero Koszul homology of minimal generators."""
    gens = _min_gens(I)
    d = I.ring.nvars
    n = len(gens)
    out = []
    for j, H in enumerate(koszul_homology(gens)):
        if H.is_zero():
            continue
        out.append((j, depth_and_pd(H)[0], d - n + j))
    return out


def sliding_depth_check(I: IdealData) -> bool:
    if I.is_unit():
        raise ResidualError("sliding depth needs a proper ideal")
    return all(dp >= bound for _, dp, bound in sliding_depth_data(I))


def is_strongly_cm(I: IdealData) -> bool:
    """Every nonzero Koszul homology module is Cohen-Macaulay (depth equals dimension)."""
    for H in koszul_homology(_min_gens(I)):
        if H.is_zero():
            continue
        dim = dimension(fitting_ideal(H, 0))
        if depth_and_pd(H)[0] != dim:
            return False
    return True


# -- Ext loci and ideal modules ------------------------------------------------------------


def ext_vanishing_locus_check(E: PModule | ReesPackage, j: int, target_codim: int,
                              seed: int = 0) -> bool:
    """No prime of height ``target_codim`` lies in both ``Supp Ext^{j+1}(E^j, R)`` and the non-free locus."""
    from .modules import ext_module

    pkg = E if isinstance(E, ReesPackage) else rees_ideal(E, seed)
    M = pkg.module
    Ej = power_module(pkg, j)
    X = ext_module(Ej, j + 1)
    if X.is_zero():
        return True
    e = module_rank(M, seed)
    loc = fitting_ideal(X, 0) + fitting_ideal(M, e)
    return height(loc) >= target_codim + 1


def is_ideal_module(E: PModule) -> bool:
    """The double dual is free."""
    D = hom_dual(hom_dual(E.minimized))
    return D.is_free()
