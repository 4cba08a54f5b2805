"""Symmetric and Rees algebras of modules, powers, fiber dimension, reductions.

For ``E = coker(phi)`` with generators ``a_1..a_n`` the ambient ring is
``R[T_1..T_n]`` with ``T_i`` weighted by ``deg(a_i) + c`` (``c`` chosen to
make all weights positive), so the symmetric ideal ``L = [T] * phi`` is
homogeneous.  The Rees ideal is ``P = L : f^oo`` for a nonzero
maximal-rank minor ``f`` of ``phi``: after inverting ``f`` the module is
free, so this saturation removes exactly the R-torsion of ``S(E)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .groebner import IdealData, dimension, height, saturate
from .modules import (
    PModule,
    matrix_rank,
    minimal_resolution,
    module_rank,
    quotient_ring_module,
    torsion_submodule,
)
from .poly import Poly, PolyRing


class ReesError(ValueError):
    pass


class NotAReduction(RuntimeError):
    """The sampled U did not satisfy ``E^{r+1} = U E^r`` for any r up to the cap."""


def t_monomials(n: int, j: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree-j monomials in n variables, lexicographically descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), j):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def rees_ambient(base: PolyRing, degrees: Sequence[int], prefix: str = "T") -> PolyRing:
    n = len(degrees)
    c = 1 - min(degrees) if degrees else 1
    names = base.fresh_names(prefix, n)
    return PolyRing(base.vars + tuple(names), base.char, "grevlex",
                    base.weights + tuple(d + c for d in degrees))


@dataclass
class ReesPackage:
    """Symmetric ideal ``L``, Rees ideal ``P`` and witness ``f`` of a module."""

    module: PModule
    base: PolyRing
    ambient: PolyRing
    sym_ideal: IdealData
    rees_ideal: IdealData
    sat_witness: Poly | None
    notes: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.module.ambient_rank

    @property
    def nbase(self) -> int:
        return self.base.nvars

    def t_vars(self) -> list[Poly]:
        return [self.ambient.var(self.nbase + i) for i in range(self.n)]

    def lift(self, f: Poly) -> Poly:
        return f.map_vars(self.ambient, list(range(self.nbase)))

    def t_degree(self, g: Poly) -> int:
        """T-degree of a T-homogeneous element (error otherwise)."""
        nb = self.nbase
        degs = {sum(e[nb:]) for e in g.terms}
        if len(degs) != 1:
            raise ReesError(f"element is not T-homogeneous: {g}")
        return degs.pop()

    def is_linear_type(self) -> bool:
        return self.sym_ideal.contains_ideal(self.rees_ideal)

    @cached_property
    def fiber_ring(self) -> PolyRing:
        names = self.ambient.vars[self.nbase:]
        return PolyRing(names, self.base.char, "grevlex", self.ambient.weights[self.nbase:])

    @cached_property
    def fiber_ideal(self) -> IdealData:
        """``(P + m) ∩ k[T]``: set the base variables to zero in a generating set."""
        nb = self.nbase
        out = []
        for g in self.rees_ideal.gb():
            terms = {e[nb:]: c for e, c in g.terms.items() if not any(e[:nb])}
            if terms:
                out.append(Poly(self.fiber_ring, terms))
        return IdealData(self.fiber_ring, out)

    def special_fiber_dim(self) -> int:
        return dimension(self.fiber_ideal)

    def rees_dim(self) -> int:
        return dimension(self.rees_ideal)

    def irrelevant_height(self) -> float:
        """Height of ``R(E)_+`` in ``ambient/P``; equals its grade when ``R(E)`` is CM."""
        return height(self.rees_ideal + IdealData(self.ambient, self.t_vars())) - height(self.rees_ideal)

    def rees_pd(self) -> int:
        if not self.rees_ideal.gb():
            return 0
        Q = quotient_ring_module(self.rees_ideal.gb(), label="R(E)")
        return minimal_resolution(Q).length

    def is_cohen_macaulay(self) -> bool:
        """CM of ``ambient/P``: pd over the ambient equals its codimension."""
        return self.rees_pd() == self.ambient.nvars - self.rees_dim()

    def sorted_strings(self, which: str = "rees") -> list[str]:
        I = {"rees": self.rees_ideal, "sym": self.sym_ideal, "fiber": self.fiber_ideal}[which]
        return I.sorted_gb_strings()

    def t_homogeneous_gens(self) -> list[tuple[int, Poly]]:
        """The reduced basis of P with T-degrees (bihomogeneous by construction)."""
        return [(self.t_degree(g), g) for g in self.rees_ideal.gb()]


def symmetric_ideal(E: PModule, minimize: bool = True) -> tuple[PolyRing, IdealData]:
    M = E.minimized if minimize else E
    A = rees_ambient(M.ring, M.degrees)
    nb = M.ring.nvars
    lift = list(range(nb))
    T = [A.var(nb + i) for i in range(M.ambient_rank)]
    forms = []
    for col in M.relations:
        acc = A.zero()
        for f, t in zip(col, T):
            if f.terms:
                acc = acc + f.map_vars(A, lift) * t
        if acc.terms:
            forms.append(acc)
    return A, IdealData(A, forms, E.budget)


def rees_ideal(E: PModule, seed: int = 0, minimize: bool = True,
               method: str = "auto", witness: Poly | None = None) -> ReesPackage:
    """Rees package of ``E`` (its torsion-free quotient when E has torsion).

    ``witness`` may supply any nonzero ``f`` with ``E_f`` free; it replaces
    the default maximal minor and is usually of much lower degree.
    """
    M = E.minimized if minimize else E
    notes = []
    e = module_rank(M, seed)
    if e == 0:
        raise ReesError("the Rees algebra needs a module of positive rank")
    A, L = symmetric_ideal(M, minimize=False)
    if M.nrels == 0:
        return ReesPackage(M, M.ring, A, L, IdealData(A, []), None, notes)
    tor = torsion_submodule(M, seed)
    if not tor.is_torsion_free:
        notes.append("module has torsion; the Rees algebra of its torsion-free quotient is used")
    f = witness
    if f is None or not f.terms:
        _, f = matrix_rank(M.rows(), seed)
    lift = list(range(M.ring.nvars))
    P = saturate(L, f.map_vars(A, lift), method=method)
    P = IdealData(A, P.gb(), E.budget)
    return ReesPackage(M, M.ring, A, L, P, f, notes)


def is_linear_type(E: PModule | ReesPackage, seed: int = 0) -> bool:
    pkg = E if isinstance(E, ReesPackage) else rees_ideal(E, seed)
    return pkg.is_linear_type()


def special_fiber_dim(E: PModule | ReesPackage, seed: int = 0) -> int:
    pkg = E if isinstance(E, ReesPackage) else rees_ideal(E, seed)
    return pkg.special_fiber_dim()


def power_module(pkg: ReesPackage, j: int) -> PModule:
    """``E^j``: the T-degree-j piece of ``ambient / P`` as an R-module."""
    base = pkg.base
    n = pkg.n
    nb = pkg.nbase
    degs = pkg.module.degrees
    if j < 0:
        raise ValueError("negative power")
    if j == 0:
        return PModule(base, 1, (), (0,), "E^0")
    monos = t_monomials(n, j)
    index = {m: i for i, m in enumerate(monos)}
    gdeg = tuple(sum(a * d for a, d in zip(m, degs)) for m in monos)
    cols = []
    zero = base.zero()
    for t, g in pkg.t_homogeneous_gens():
        if t > j:
            continue
        for mult in t_monomials(n, j - t):
            col: dict = {}
            for e, c in g.terms.items():
                te = tuple(a + b for a, b in zip(e[nb:], mult))
                col.setdefault(index[te], {})[e[:nb]] = c
            vec = [zero] * len(monos)
            for i, terms in col.items():
                vec[i] = Poly(base, terms)
            if any(v.terms for v in vec):
                cols.append(tuple(vec))
    return PModule(base, len(monos), tuple(cols), gdeg, f"E^{j}", pkg.module.budget)


@dataclass
class ReductionData:
    """``U`` given by scalar coefficient rows; ``r`` the reduction number found."""

    coefficients: list
    r: int | None
    cap: int
    seed: int

    def forms(self, pkg: ReesPackage) -> list[Poly]:
        T = pkg.t_vars()
        out = []
        for row in self.coefficients:
            acc = pkg.ambient.zero()
            for c, t in zip(row, T):
                acc = acc + t.scale(c)
            out.append(acc)
        return out


def random_reduction(pkg: ReesPackage, count: int, seed: int, cap: int = 10) -> ReductionData:
    rng = random.Random(seed)
    p = pkg.base.char
    top = p - 1 if p else 1000
    degs = pkg.module.degrees
    coeffs = []
    for _ in range(count):
        # only combine generators of equal degree so each form is homogeneous
        dmin = min(degs)
        coeffs.append([rng.randint(1, top) if d == dmin else 0 for d in degs])
    return ReductionData(coeffs, None, cap, seed)


def reduction_number_for(pkg: ReesPackage, U: ReductionData) -> int:
    """Least r <= cap with every T-monomial of degree r+1 in ``P + (U)``."""
    forms = U.forms(pkg)
    J = IdealData(pkg.ambient, list(pkg.rees_ideal.gb()) + forms)
    nb = pkg.nbase
    for r in range(U.cap + 1):
        ok = True
        for m in t_monomials(pkg.n, r + 1):
            mono = pkg.ambient.monomial((0,) * nb + m)
            if not J.contains(mono):
                ok = False
                break
        if ok:
            U.r = r
            return r
    raise NotAReduction(f"U is not a reduction with r <= {U.cap}")


def reduction_number(E: PModule | ReesPackage, seed: int = 0, cap: int = 10, tries: int = 3,
                     ell: int | None = None) -> int:
    """Sampled reduction number: minimum over ``tries`` seeds of general U with ell forms."""
    pkg = E if isinstance(E, ReesPackage) else rees_ideal(E, seed)
    if ell is None:
        ell = pkg.special_fiber_dim()
    best = None
    for k in range(tries):
        U = random_reduction(pkg, ell, seed * 1000 + k, cap)
        try:
            r = reduction_number_for(pkg, U)
        except NotAReduction:
            continue
        best = r if best is None else min(best, r)
    if best is None:
        raise NotAReduction(f"no sampled U was a reduction with r <= {cap}")
    return best


def fiber_reduction_number(pkg: ReesPackage, U: ReductionData) -> int:
    """Reduction number read off the fiber ring ``k[T]/fiber`` (graded Nakayama)."""
    F = pkg.fiber_ring
    forms = []
    for row in U.coefficients:
        acc = F.zero()
        for i, c in enumerate(row):
            acc = acc + F.var(i).scale(c)
        forms.append(acc)
    J = IdealData(F, list(pkg.fiber_ideal.gens) + forms)
    for r in range(U.cap + 1):
        if all(J.contains(F.monomial(m)) for m in t_monomials(pkg.n, r + 1)):
            return r
    raise NotAReduction("fiber check exceeded the cap")


def is_cm_rees(E: PModule | ReesPackage, seed: int = 0) -> bool:
    pkg = E if isinstance(E, ReesPackage) else rees_ideal(E, seed)
    return pkg.is_cohen_macaulay()


def rees_height(pkg: ReesPackage):
    return height(pkg.rees_ideal)


def rees_ideal_by_embedding(E: PModule, max_t_degree: int | None = 6) -> IdealData:
    """Rees ideal from an embedding ``E -> R^m`` given by generators of ``Hom(E, R)``.

    ``R(E)`` is the image of ``R[T] -> R[Y]``, ``T_i -> sum_k psi_k(a_i) Y_k``; its
    kernel is found by eliminating ``Y``.  Only generators of T-degree at most
    ``max_t_degree`` are returned.  Independent of the saturation route; needs E
    torsion-free.
    """
    from .groebner import eliminate
    from .modules import hom_dual_vectors

    M = E.minimized
    base = M.ring
    nb = base.nvars
    n = M.ambient_rank
    A = rees_ambient(base, M.degrees)
    if M.nrels == 0:
        return IdealData(A, [])
    psis, _ = hom_dual_vectors(M)
    deltas = []
    for psi in psis:
        i = next(i for i, f in enumerate(psi) if f.terms)
        deltas.append(psi[i].degree() - M.degrees[i])
    c = 1 - min(M.degrees)
    shift = max(0, max(deltas) + 1 - c)
    tw = [d + c + shift for d in M.degrees]
    yw = [c + shift - dl for dl in deltas]
    tnames = list(A.vars[nb:])
    ynames = A.fresh_names("Y", len(psis))
    big = PolyRing(base.vars + tuple(tnames) + tuple(ynames), base.char, "grevlex",
                   base.weights + tuple(tw) + tuple(yw))
    lift = list(range(nb))
    gens = []
    for i in range(n):
        acc = big.var(nb + i)
        for k, psi in enumerate(psis):
            if psi[i].terms:
                acc = acc - psi[i].map_vars(big, lift) * big.var(nb + n + k)
        gens.append(acc)
    K = eliminate(IdealData(big, gens), list(base.vars) + tnames)
    out = []
    for g in K.gens:
        tdeg = max(sum(e[nb:]) for e in g.terms)
        if max_t_degree is None or tdeg <= max_t_degree:
            out.append(Poly(A, dict(g.terms)))
    return IdealData(A, out)
