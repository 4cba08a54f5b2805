"""Generic Bourbaki ideals of modules and the associated checks.

For a torsion-free module ``E`` of rank ``e`` with generators ``a_1..a_n``,
``e - 1`` elements ``x_j = sum_i z_ij a_i`` are chosen with random scalars
(or new variables in symbolic mode).  The quotient ``E / (x_1..x_{e-1})`` has
rank one; a generator ``psi`` of its dual embeds it into ``R`` and its
image ``I = (psi_1, .., psi_n)`` is the Bourbaki ideal.  Because ``psi``
generates the reflexive rank-one module ``Hom(E/F, R)``, its entries have
no common factor, so ``I`` has height at least two unless it is the unit
ideal (the free case).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .groebner import IdealData, height, kernel_vectors, saturate
from .modules import (
    PModule,
    Submodule,
    fitting_ideal,
    hom_dual_vectors,
    ideal_module,
    matrix_rank,
    module_rank,
    torsion_submodule,
)
from .poly import Poly, PolyRing
from .rees import ReesPackage, power_module, reduction_number, rees_ideal, t_monomials
from .report import CheckReport, Verdict
from .residual import INF, check_Gs


class BourbakiError(ValueError):
    """Hypothesis failure or repeated genericity failure."""


@dataclass
class BourbakiData:
    module: PModule  # the minimized E
    mode: str
    seed: int
    seeds_tried: list
    ext_ring: PolyRing
    Z: list  # n x (e-1) coefficients (field scalars or Polys in symbolic mode)
    xs: list  # coefficient vectors of the x_j
    quotient: PModule
    psi: tuple  # generator of Hom(quotient, R); ideal generators psi_i
    ideal_I: IdealData | None
    grade_I: float
    free_case: bool = False
    notes: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.xs) + 1

    def ideal_as_module(self, minimize: bool = True) -> PModule:
        return ideal_module(list(self.psi), label="I", minimize=minimize)


def _hypotheses(E: PModule, seed: int) -> tuple[int, list]:
    notes = []
    e = module_rank(E, seed)
    if e < 1:
        raise BourbakiError("module must have positive rank")
    if not torsion_submodule(E, seed).is_torsion_free:
        raise BourbakiError("module is not torsion-free")
    F = fitting_ideal(E, e)
    if height(F) < 2:
        raise BourbakiError("module is not free in codimension one (height Fitt_e < 2)")
    return e, notes


def bourbaki_construct(E: PModule, mode: str = "random", seed: int = 0,
                       attempts: int = 5, check: bool = True) -> BourbakiData:
    M = E.minimized
    ring = M.ring
    if check:
        e, notes = _hypotheses(M, seed)
    else:
        e, notes = module_rank(M, seed), []
    n = M.ambient_rank
    if mode not in ("random", "symbolic"):
        raise ValueError(f"unknown mode {mode!r}")
    if e > 1 and len(set(M.degrees)) != 1:
        raise BourbakiError("generic elements need generators of one degree; regrade the free summands")
    tried = []
    for k in range(attempts):
        s = seed + 7919 * k
        tried.append(s)
        if mode == "random":
            rng = random.Random(s)
            top = ring.char - 1 if ring.char else 1000
            Z = [[rng.randint(1, top) for _ in range(e - 1)] for _ in range(n)]
            ext = ring
            cols = [tuple(ring.const(Z[i][j]) for i in range(n)) for j in range(e - 1)]
            base = M
        else:
            names = [f"Z{i + 1}_{j + 1}" for i in range(n) for j in range(e - 1)]
            ext = ring.extend(names, weights=[1] * len(names))
            lift = list(range(ring.nvars))
            Z = [[ext.var(ring.nvars + i * (e - 1) + j) for j in range(e - 1)] for i in range(n)]
            cols = [tuple(Z[i][j] for i in range(n)) for j in range(e - 1)]
            base = PModule(ext, n, tuple(tuple(f.map_vars(ext, lift) for f in c) for c in M.relations),
                           M.degrees, M.label)
        Q = PModule(ext, n, base.relations + tuple(cols), base.degrees, f"{M.label}/F", M.budget)
        if e > 1 and module_rank(Q, s) != 1:
            continue
        gens, shifts = hom_dual_vectors(Q)
        if len(gens) != 1:
            continue
        psi = gens[0]
        nonzero = [g for g in psi if g.terms]
        if not nonzero:
            continue
        I = IdealData(ext, nonzero)
        if I.is_unit():
            return BourbakiData(M, mode, s, tried, ext, Z, cols, Q, psi, None, float("inf"),
                                True, notes + ["quotient is free: no proper Bourbaki ideal"])
        h = height(I)
        if h < 2:
            continue
        return BourbakiData(M, mode, s, tried, ext, Z, cols, Q, psi, I, h, False, notes)
    raise BourbakiError(f"genericity failure for seeds {tried}")


def iter_generic_quotient(E: PModule, seed: int = 0, attempts: int = 5) -> PModule:
    """``E / R x`` for one random combination ``x`` of the generators."""
    M = E.minimized
    ring = M.ring
    e = module_rank(M, seed)
    if e < 2:
        raise BourbakiError("need rank at least 2")
    n = M.ambient_rank
    if len(set(M.degrees)) != 1:
        raise BourbakiError("generic elements need generators of one degree")
    for k in range(attempts):
        rng = random.Random(seed + 104729 * k)
        top = ring.char - 1 if ring.char else 1000
        x = tuple(ring.const(rng.randint(1, top)) for _ in range(n))
        Q = PModule(ring, n, M.relations + (x,), M.degrees, f"{M.label}/x", M.budget)
        if module_rank(Q, seed) != e - 1:
            continue
        t = torsion_submodule(Q, seed)
        if not t.is_torsion_free:
            continue
        return Q.minimized
    raise BourbakiError("genericity failure in the one-step quotient")


# -- deformation check -------------------------------------------------------------------


def lambda_forms(pkg: ReesPackage, B: BourbakiData) -> list[Poly]:
    T = pkg.t_vars()
    out = []
    for j in range(len(B.xs)):
        acc = pkg.ambient.zero()
        for i, t in enumerate(T):
            acc = acc + t.scale(B.Z[i][j])
        out.append(acc)
    return out


@dataclass
class DeformationResult:
    torsion_free: bool
    cross_check: bool | None
    deformed_ideal: IdealData


def rees_deformation(E: PModule | ReesPackage, B: BourbakiData, seed: int = 0) -> DeformationResult:
    if B.mode != "random":
        raise BourbakiError("the deformation check runs in random mode")
    pkg = E if isinstance(E, ReesPackage) else rees_ideal(B.module, seed)
    A = pkg.ambient
    lam = lambda_forms(pkg, B)
    Q = IdealData(A, list(pkg.rees_ideal.gb()) + lam)
    if not lam:
        return DeformationResult(True, True, Q)
    lift = list(range(pkg.nbase))
    f = pkg.sat_witness.map_vars(A, lift) if pkg.sat_witness is not None else A.one()
    _, fq = matrix_rank(B.quotient.rows(), seed)
    w = f * fq.map_vars(A, lift)
    S = saturate(Q, w)
    torsion_free = S.contains_ideal(Q) and Q.contains_ideal(S)
    cross = None
    if torsion_free and B.ideal_I is not None:
        Imod = B.ideal_as_module(minimize=False)
        RI = rees_ideal(Imod, seed, minimize=False)
        other = RI.rees_ideal
        if other.ring.vars == A.vars:
            other = other.in_ring(A)
            cross = other.contains_ideal(Q) and Q.contains_ideal(other)
        else:
            cross = False
    return DeformationResult(torsion_free, cross, Q)


def rees_deformation_check(E: PModule | ReesPackage, B: BourbakiData, seed: int = 0) -> bool:
    res = rees_deformation(E, B, seed)
    return res.torsion_free and res.cross_check is not False


# -- Koszul strands --------------------------------------------------------------------


@dataclass
class KoszulPiece:
    """Free covers and maps of the degree-j strand augmented onto ``I^j``.

    Spot ``i`` (``0 <= i <= min(j, e-1)``) is ``(E^{j-i})^{C(e-1,i)}``
    covered by the free module on pairs (subset S with |S| = i, T-monomial
    of degree j - i); ``relations[i]`` generate the kernel of the cover.
    ``maps[i]`` sends spot ``i`` to spot ``i-1`` (``maps[0]`` is the
    augmentation to R).
    """

    j: int
    bases: list
    degrees: list
    relations: list
    maps: list


def koszul_piece(pkg: ReesPackage, B: BourbakiData, j: int) -> KoszulPiece:
    base = pkg.base
    n = pkg.n
    e1 = len(B.xs)
    zero = base.zero()
    degs = pkg.module.degrees
    top = min(j, e1)
    bases, degrees, relations = [], [], []
    powers = {}
    for i in range(top + 1):
        m = j - i
        if m not in powers:
            powers[m] = power_module(pkg, m)
        Pm = powers[m]
        monos = t_monomials(n, m)
        subsets = list(itertools.combinations(range(e1), i))
        basis = [(S, mono) for S in subsets for mono in monos]
        bases.append(basis)
        degrees.append([Pm.degrees[k] + i * (min(degs) if degs else 0) for S in subsets
                        for k in range(len(monos))])
        rel = []
        size = len(monos)
        for si, S in enumerate(subsets):
            for col in Pm.relations:
                v = [zero] * len(basis)
                v[si * size:(si + 1) * size] = col
                rel.append(tuple(v))
        relations.append(rel)
    maps = []
    # augmentation T^a -> psi^a
    psi = B.psi
    aug = []
    for S, mono in bases[0]:
        val = base.one()
        for i, a in enumerate(mono):
            if a:
                val = val * psi[i] ** a
        aug.append((val,))
    maps.append(aug)
    for i in range(1, top + 1):
        tgt = bases[i - 1]
        tindex = {b: k for k, b in enumerate(tgt)}
        cols = []
        for S, mono in bases[i]:
            v = [zero] * len(tgt)
            for pos, s in enumerate(S):
                sign = 1 if pos % 2 == 0 else -1
                rest = S[:pos] + S[pos + 1:]
                for t in range(n):
                    c = B.Z[t][s] * sign
                    newm = list(mono)
                    newm[t] += 1
                    k = tindex[(rest, tuple(newm))]
                    v[k] = v[k] + base.const(c)
            cols.append(tuple(v))
        maps.append(cols)
    return KoszulPiece(j, bases, degrees, relations, maps)


def koszul_piece_homology(E: PModule | ReesPackage, B: BourbakiData, j: int,
                          seed: int = 0) -> list[bool]:
    """Exactness verdict at each spot ``0..min(j, e-1)`` of the augmented strand.

    Spot i is exact when every cycle (an element of the cover mapping into
    the relations of the target) lies in the image of the next map plus the
    relations of the spot itself.
    """
    pkg = E if isinstance(E, ReesPackage) else rees_ideal(B.module, seed)
    K = koszul_piece(pkg, B, j)
    base = pkg.base
    out = []
    for i in range(len(K.bases)):
        size = len(K.bases[i])
        if i == 0:
            tgt_rows = 1
            tgt_rel = []
            tgt_deg = [0]
        else:
            tgt_rows = len(K.bases[i - 1])
            tgt_rel = K.relations[i - 1]
            tgt_deg = K.degrees[i - 1]
        cols = list(K.maps[i]) + list(tgt_rel)
        ker = kernel_vectors(base, tgt_rows, cols, list(tgt_deg))
        cycles = [tuple(v[:size]) for v in ker if any(x.terms for x in v[:size])]
        bound = list(K.relations[i])
        if i + 1 < len(K.bases):
            bound += list(K.maps[i + 1])
        if not cycles:
            out.append(True)
            continue
        if not bound:
            out.append(False)
            continue
        S = Submodule(base, size, bound)
        out.append(S.contains_all(cycles))
    return out


def koszul_strand_exact(E, B: BourbakiData, j: int, seed: int = 0) -> bool:
    return all(koszul_piece_homology(E, B, j, seed))


def bourbaki_invariant_check(E: PModule, B: BourbakiData, seed: int = 0, s=None):
    """Spread formula, reduction-number bound and G_s transfer between E and its Bourbaki ideal."""
    M = B.module
    e = B.rank
    rep = CheckReport("P2.8", M.label or "E", seed)
    rep.hypotheses.append(Verdict("bourbaki_ideal", True, {"seed": B.seed, "free_case": B.free_case}))
    pkg = rees_ideal(M, seed)
    ell = pkg.special_fiber_dim()
    r = reduction_number(pkg, seed, ell=ell)
    if B.free_case:
        ell_I, r_I, gs_I = 1, 0, True
        rep.notes.append("free case: the Bourbaki ideal is the unit ideal")
    else:
        IM = B.ideal_as_module()
        ipkg = rees_ideal(IM, seed)
        ell_I = ipkg.special_fiber_dim()
        r_I = reduction_number(ipkg, seed, ell=ell_I)
        gs_I = None
    if s is None:
        s = _gs_level(M, seed, e)
    if gs_I is None:
        # only meaningful when E itself satisfies G_s
        gs_I = not check_Gs(M, s, seed, rank=e).verdict or check_Gs(B.ideal_as_module(), s, seed).verdict
    rep.conclusions.append(Verdict("spread_formula", ell_I == ell - e + 1,
                                   {"ell_E": ell, "ell_I": ell_I, "e": e}))
    rep.conclusions.append(Verdict("reduction_bound", r_I <= r, {"r_E": r, "r_I": r_I}))
    rep.conclusions.append(Verdict("G_s_transfer", gs_I, {"s": s}))
    return rep


def _gs_level(M: PModule, seed: int, e: int):
    """Largest s with G_s (``inf`` when every Fitting condition holds)."""
    cache: dict = {}
    top = M.minimized.ambient_rank - e + 1
    for s in range(1, top + 1):
        if not check_Gs(M, s, seed, cache, e).verdict:
            return s - 1
    return INF
