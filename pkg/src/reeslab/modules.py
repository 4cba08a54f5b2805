"""Finitely presented graded modules over polynomial rings.

A module ``E`` is the cokernel of a relation matrix ``phi: R^s -> R^n``; the
columns of ``phi`` generate the relation submodule of the free module
``R^n`` whose basis vectors have the degrees ``E.degrees``.  Depth is taken
with respect to the irrelevant maximal ideal, so ``depth = nvars - pd``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Sequence

from . import groebner as gb
from .groebner import Budget, GBState, IdealData, ModuleOrder, _as_work, _reduce
from .poly import Poly, PolyMatrix, PolyRing, vector_degree

Vector = tuple  # tuple of Poly


# -- submodules of free modules -------------------------------------------------------


class Submodule:
    """Submodule of a graded free module ``R^n`` with a cached Groebner basis."""

    def __init__(self, ring: PolyRing, n: int, gens: Sequence[Sequence[Poly]],
                 shifts: Sequence[int] | None = None, budget: Budget | None = None):
        self.ring = ring
        self.n = n
        self.shifts = tuple(shifts) if shifts is not None else (0,) * n
        self.gens = [tuple(v) for v in gens if any(f.terms for f in v)]
        for v in self.gens:
            if len(v) != n:
                raise ValueError("vector length does not match the ambient rank")
        self.budget = budget
        self.order = ModuleOrder(ring, n, self.shifts)
        self._gb = None
        self._reducer = None

    def gb_terms(self) -> list:
        if self._gb is None:
            self._gb = gb.buchberger([self.order.encode(v) for v in self.gens], self.order,
                                     self.ring.char, self.budget)
        return self._gb

    def gb(self) -> list[tuple]:
        return [tuple(self.order.decode(t)) for t in self.gb_terms()]

    def _red(self):
        if self._reducer is None:
            red = gb._Reducer(self.order)
            for t in self.gb_terms():
                red.add(gb._Elem(t, self.order, 0))
            self._reducer = red
        return self._reducer

    def normal_form(self, v: Sequence[Poly]) -> tuple:
        h, mon = _as_work(self.order.encode(v), p=self.ring.char)
        return tuple(self.order.decode(_reduce(h, mon, self._red(), self.ring.char)))

    def contains(self, v: Sequence[Poly]) -> bool:
        h, mon = _as_work(self.order.encode(v), p=self.ring.char)
        return not _reduce(h, mon, self._red(), self.ring.char)

    def contains_all(self, vs) -> bool:
        return all(self.contains(v) for v in vs)

    def is_zero(self) -> bool:
        return not self.gens

    def same_as(self, other: "Submodule") -> bool:
        return self.contains_all(other.gens) and other.contains_all(self.gens)


def minimal_generators(ring: PolyRing, n: int, vectors: Sequence[Sequence[Poly]],
                       shifts: Sequence[int] | None = None,
                       budget: Budget | None = None) -> list[tuple]:
    """A minimal homogeneous generating subset of the given vectors.

    For inhomogeneous input an irredundant subset is returned instead.
    """
    shifts = tuple(shifts) if shifts is not None else (0,) * n
    vecs = [tuple(v) for v in vectors if any(f.terms for f in v)]
    if not vecs:
        return []
    degs = [vector_degree(v, shifts) for v in vecs]
    order = ModuleOrder(ring, n, shifts)
    p = ring.char
    if any(d is None for d in degs):
        kept = list(vecs)
        i = len(kept) - 1
        while i >= 0 and len(kept) > 1:
            others = kept[:i] + kept[i + 1:]
            if Submodule(ring, n, others, shifts, budget).contains(kept[i]):
                kept = others
            i -= 1
        return kept
    state = GBState(order, p, budget)
    chosen = []
    for d in sorted(set(degs)):
        state.run(max_degree=d)
        pivots: dict = {}  # pivot key -> row dict (monic at pivot)
        for v, dv in zip(vecs, degs):
            if dv != d:
                continue
            enc = order.encode(v)
            h, mon = _as_work(enc, p=p)
            nf = _reduce(h, mon, state.reducer, p)
            row = {k: c for k, _m, c in nf}
            # eliminate against existing pivots
            while row:
                top = max(row)
                piv = pivots.get(top)
                if piv is None:
                    break
                c = row[top]
                for k, pc in piv.items():
                    val = row.get(k, 0) - c * pc
                    if p:
                        val %= p
                    if val:
                        row[k] = val
                    else:
                        row.pop(k, None)
            if not row:
                continue
            top = max(row)
            inv = pow(row[top], -1, p) if p else 1 / Fraction(row[top])
            pivots[top] = {k: (c * inv % p if p else c * inv) for k, c in row.items()}
            chosen.append(v)
            state.add(enc, sugar=d)
    return chosen


def kernel(ring: PolyRing, nrows: int, columns: Sequence[Sequence[Poly]],
           row_shifts: Sequence[int], col_shifts: Sequence[int],
           minimal: bool = True, budget: Budget | None = None) -> list[tuple]:
    """Generators of the kernel of ``R^ncols -> R^nrows`` (minimal when graded)."""
    vecs = gb.kernel_vectors(ring, nrows, columns, row_shifts, col_shifts, budget)
    vecs = [tuple(v) for v in vecs]
    if minimal and vecs:
        vecs = minimal_generators(ring, len(columns), vecs, col_shifts, budget)
    return vecs


# -- presented modules ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PModule:
    """Module ``coker(relations)`` with generators of the given degrees."""

    ring: PolyRing
    ambient_rank: int
    relations: tuple  # tuple of columns, each a tuple of ambient_rank Polys
    degrees: tuple = None
    label: str = ""
    budget: Budget | None = field(default=None, repr=False)

    def __post_init__(self):
        n = self.ambient_rank
        cols = tuple(tuple(c) for c in self.relations)
        for c in cols:
            if len(c) != n:
                raise ValueError("relation column length differs from ambient rank")
            for f in c:
                if f.ring != self.ring:
                    raise ValueError("relation entry from a different ring")
        object.__setattr__(self, "relations", cols)
        if self.degrees is None:
            object.__setattr__(self, "degrees", (0,) * n)
        else:
            object.__setattr__(self, "degrees", tuple(self.degrees))
            if len(self.degrees) != n:
                raise ValueError("need one degree per generator")

    # -- basic data ---------------------------------------------------------

    @property
    def nrels(self) -> int:
        return len(self.relations)

    @cached_property
    def matrix(self) -> PolyMatrix:
        return PolyMatrix(self.ring, self.ambient_rank, self.relations, self.degrees)

    @cached_property
    def col_degrees(self) -> tuple | None:
        return self.matrix.col_degrees

    @property
    def is_graded(self) -> bool:
        return self.col_degrees is not None

    def rows(self) -> list[list[Poly]]:
        return [[c[i] for c in self.relations] for i in range(self.ambient_rank)]

    def relation_module(self) -> Submodule:
        return Submodule(self.ring, self.ambient_rank, self.relations, self.degrees, self.budget)

    def with_label(self, label: str) -> "PModule":
        return PModule(self.ring, self.ambient_rank, self.relations, self.degrees, label, self.budget)

    def __repr__(self):
        return f"PModule({self.label or 'E'}: rank-{self.ambient_rank} free / {self.nrels} relations)"

    # -- cached derived data -----------------------------------------------------

    @cached_property
    def minimized(self) -> "PModule":
        return minimize_presentation(self)

    @cached_property
    def resolution(self) -> "FreeResolution":
        return minimal_resolution(self)

    @property
    def mu(self) -> int:
        """Minimal number of generators."""
        return self.minimized.ambient_rank

    def is_zero(self) -> bool:
        return self.minimized.ambient_rank == 0

    def is_free(self) -> bool:
        return self.minimized.nrels == 0


def free_module(ring: PolyRing, n: int, degrees: Sequence[int] | None = None, label="") -> PModule:
    return PModule(ring, n, (), tuple(degrees) if degrees else (0,) * n, label or f"R^{n}")


def ideal_module(I: IdealData | Sequence[Poly], label: str = "", minimize: bool = True) -> PModule:
    """The ideal as a module: generators ``g_i`` and their syzygies as relations."""
    gens = list(I.gens) if isinstance(I, IdealData) else [g for g in I if g.terms]
    if not gens:
        raise ValueError("the zero ideal is the zero module")
    ring = gens[0].ring
    if minimize and all(g.is_homogeneous() for g in gens):
        gens = [v[0] for v in minimal_generators(ring, 1, [(g,) for g in gens])]
    degs = [g.degree() for g in gens]
    homog = all(g.is_homogeneous() for g in gens)
    rel = kernel(ring, 1, [(g,) for g in gens], [0], degs, minimal=homog)
    name = label or "(" + ", ".join(str(g) for g in gens) + ")"
    return PModule(ring, len(gens), tuple(rel), tuple(degs) if homog else None, name)


def quotient_ring_module(I: IdealData | Sequence[Poly], label: str = "") -> PModule:
    """``R/I`` as a cyclic module."""
    gens = list(I.gens) if isinstance(I, IdealData) else list(I)
    ring = gens[0].ring if gens else I.ring
    return PModule(ring, 1, tuple((g,) for g in gens if g.terms), (0,), label or "R/I")


def direct_sum(*mods: PModule, label: str = "") -> PModule:
    ring = mods[0].ring
    n = sum(m.ambient_rank for m in mods)
    zero = ring.zero()
    cols = []
    degs = []
    off = 0
    for m in mods:
        for c in m.relations:
            col = [zero] * n
            col[off:off + m.ambient_rank] = c
            cols.append(tuple(col))
        degs.extend(m.degrees)
        off += m.ambient_rank
    return PModule(ring, n, tuple(cols), tuple(degs),
                   label or " + ".join(m.label or "E" for m in mods))


def _unit_entry(col, degs, p):
    for i, f in enumerate(col):
        if f.terms and f.is_constant():
            return i
    return None


def minimize_presentation(E: PModule) -> PModule:
    """Drop generators killed by unit entries, then keep minimal relations."""
    ring = E.ring
    cols = [list(c) for c in E.relations if any(f.terms for f in c)]
    degs = list(E.degrees)
    n = E.ambient_rank
    changed = True
    while changed:
        changed = False
        for b, col in enumerate(cols):
            a = _unit_entry(col, degs, ring.char)
            if a is None:
                continue
            u = col[a].constant_coeff()
            uinv = ring.field.inv(u)
            newcols = []
            for c_idx, c in enumerate(cols):
                if c_idx == b:
                    continue
                f = c[a]
                if f.terms:
                    factor = f.scale(uinv)
                    c = [ci - factor * col[i] if i != a else ci for i, ci in enumerate(c)]
                newcols.append([ci for i, ci in enumerate(c) if i != a])
            cols = [c for c in newcols if any(f.terms for f in c)]
            degs.pop(a)
            n -= 1
            changed = True
            break
    if E.matrix.col_degrees is not None or all(vector_degree(c, degs) is not None for c in cols):
        cols = minimal_generators(ring, n, cols, degs, E.budget)
    return PModule(ring, n, tuple(tuple(c) for c in cols), tuple(degs), E.label, E.budget)


# -- resolutions ---------------------------------------------------------------


@dataclass
class FreeResolution:
    """Minimal graded free resolution ``F_0 <- F_1 <- ... <- F_L``.

    ``maps[i]`` is the matrix of ``d_{i+1}: F_{i+1} -> F_i`` as a tuple of
    columns; ``degrees[i]`` are the generator degrees of ``F_i``.
    """

    ring: PolyRing
    degrees: list
    maps: list

    @property
    def betti(self) -> list[int]:
        return [len(d) for d in self.degrees]

    @property
    def length(self) -> int:
        return len(self.maps)

    def graded_betti(self) -> list[dict]:
        out = []
        for d in self.degrees:
            tally: dict = {}
            for x in d:
                tally[x] = tally.get(x, 0) + 1
            out.append(dict(sorted(tally.items())))
        return out

    def matrix(self, i: int) -> PolyMatrix:
        """The map ``d_i`` (1-based) as a PolyMatrix."""
        return PolyMatrix(self.ring, len(self.degrees[i - 1]), tuple(self.maps[i - 1]),
                          tuple(self.degrees[i - 1]))

    def check_complex(self) -> bool:
        """``d_i * d_{i+1} == 0`` for all i."""
        for i in range(len(self.maps) - 1):
            a, b = self.maps[i], self.maps[i + 1]
            rows = len(self.degrees[i])
            for col in b:
                acc = [self.ring.zero()] * rows
                for k, c in enumerate(col):
                    if c.terms:
                        for r in range(rows):
                            if a[k][r].terms:
                                acc[r] = acc[r] + c * a[k][r]
                if any(f.terms for f in acc):
                    return False
        return True

    def check_exact(self) -> bool:
        """Image of ``d_{i+1}`` equals the kernel of ``d_i`` at each step."""
        if not self.check_complex():
            return False
        ring = self.ring
        for i in range(len(self.maps)):
            rows = len(self.degrees[i])
            cols = self.maps[i]
            ker = gb.kernel_vectors(ring, rows, cols, self.degrees[i], self.degrees[i + 1])
            if i + 1 < len(self.maps):
                img = Submodule(ring, len(cols), self.maps[i + 1], self.degrees[i + 1])
                if not img.contains_all(ker):
                    return False
            elif ker:
                return False
        return True


class ResolutionError(RuntimeError):
    pass


def minimal_resolution(E: PModule, max_len: int | None = None) -> FreeResolution:
    if not E.is_graded:
        raise ValueError("minimal resolutions need a graded presentation")
    M = E.minimized
    ring = E.ring
    limit = ring.nvars + 1 if max_len is None else max_len
    degrees = [list(M.degrees)]
    maps = []
    cols = list(M.relations)
    if not cols:
        return FreeResolution(ring, degrees, maps)
    cur_deg = list(M.col_degrees)
    maps.append(cols)
    degrees.append(cur_deg)
    while True:
        if len(maps) > limit:
            raise ResolutionError(f"resolution longer than {limit}")
        rows = len(degrees[-2])
        ker = kernel(ring, rows, maps[-1], degrees[-2], degrees[-1], budget=E.budget)
        if not ker:
            break
        maps.append(ker)
        degrees.append([vector_degree(v, degrees[-1]) for v in ker])
    return FreeResolution(ring, degrees, maps)


INFINITE_DEPTH = float("inf")


def depth_and_pd(E: PModule) -> tuple:
    """``(depth, pd)``; the zero module gets ``(inf, -1)``."""
    if E.is_zero():
        return INFINITE_DEPTH, -1
    pd = E.resolution.length
    return E.ring.nvars - pd, pd


def projective_dimension(E: PModule) -> int:
    return depth_and_pd(E)[1]


def depth(E: PModule):
    return depth_and_pd(E)[0]


def depth_by_regular_sequence(E: PModule, seed: int = 0):
    """Depth as the length of a maximal regular sequence of seeded forms.

    The forms are generic combinations of ``x_i^(D / w_i)`` with ``D`` the lcm
    of the weights (linear forms in the standard grading).  Does not use
    resolutions, so it serves as an oracle for Auslander-Buchsbaum.
    """
    M = E.minimized
    if M.ambient_rank == 0:
        return INFINITE_DEPTH
    ring = M.ring
    n = M.ambient_rank
    rng = random.Random(seed)
    top = ring.char - 1 if ring.char else 1000
    D = math.lcm(*ring.weights)
    rels = list(M.relations)
    zero = ring.zero()
    count = 0
    while count < ring.nvars:
        l = ring.zero()
        for i in range(ring.nvars):
            l = l + (ring.var(i) ** (D // ring.weights[i])).scale(rng.randint(1, top))
        N = Submodule(ring, n, rels, M.degrees)
        colon = submodule_quotient(ring, n, M.degrees, rels, l)
        if not N.contains_all(colon):
            break
        count += 1
        for i in range(n):
            v = [zero] * n
            v[i] = l
            rels.append(tuple(v))
    return count


# -- determinants, Fitting ideals, rank ---------------------------------------------


def _minors(rows: list[list[Poly]], k: int, limit: int | None = None) -> list[Poly]:
    """All nonzero k-minors via memoized Laplace expansion."""
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    if k == 0:
        return []
    memo: dict = {}

    def det(rs: tuple, cs: tuple) -> Poly:
        key = (rs, cs)
        if key in memo:
            return memo[key]
        if len(rs) == 1:
            val = rows[rs[0]][cs[0]]
        else:
            r0 = rs[0]
            val = rows[r0][cs[0]].ring.zero()
            for j, c in enumerate(cs):
                a = rows[r0][c]
                if a.terms:
                    sub = det(rs[1:], cs[:j] + cs[j + 1:])
                    if sub.terms:
                        t = a * sub
                        val = val + t if j % 2 == 0 else val - t
        memo[key] = val
        return val

    out = []
    seen = set()
    for rs in itertools.combinations(range(nr), k):
        for cs in itertools.combinations(range(nc), k):
            d = det(rs, cs)
            if d.terms and d not in seen:
                seen.add(d)
                out.append(d)
                if limit is not None and len(out) >= limit:
                    return out
    return out


def determinant(rows: list[list[Poly]]) -> Poly:
    k = len(rows)
    if k == 0:
        raise ValueError("empty matrix")
    ms = _minors(rows, k)
    return ms[0] if ms else rows[0][0].ring.zero()


def fitting_ideal(E: PModule, i: int) -> IdealData:
    """Ideal of ``(n - i)``-minors of the relation matrix."""
    ring = E.ring
    n = E.ambient_rank
    k = n - i
    if k <= 0:
        return IdealData(ring, [ring.one()], E.budget)
    if k > E.nrels:
        return IdealData(ring, [], E.budget)
    return IdealData(ring, _minors(E.rows(), k), E.budget)


def _rank_mod_p(mat: list[list[int]], p: int) -> tuple[int, list[int], list[int]]:
    """Rank with pivot rows and columns of an integer matrix modulo p (or over Q)."""
    m = [list(r) for r in mat]
    nr = len(m)
    nc = len(m[0]) if m else 0
    piv_rows, piv_cols = [], []
    row_ids = list(range(nr))
    r = 0
    for c in range(nc):
        sel = None
        for i in range(r, nr):
            if (m[i][c] % p if p else m[i][c]):
                sel = i
                break
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        row_ids[r], row_ids[sel] = row_ids[sel], row_ids[r]
        inv = pow(m[r][c], -1, p) if p else 1 / Fraction(m[r][c])
        for i in range(r + 1, nr):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [(a - f * b) % p if p else a - f * b for a, b in zip(m[i], m[r])]
        piv_rows.append(row_ids[r])
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    return r, piv_rows, piv_cols


def matrix_rank(rows: list[list[Poly]], seed: int = 0, certify: bool = True) -> tuple[int, Poly | None]:
    """Generic rank of a polynomial matrix and a nonzero maximal-rank minor.

    The rank is read off a random evaluation; the minor on the pivot rows
    and columns is then computed exactly and checked to be nonzero.
    """
    if not rows or not rows[0]:
        return 0, None
    ring = rows[0][0].ring
    p = ring.char
    rng = random.Random(seed)
    for attempt in range(5):
        top = p - 1 if p else 10 ** 6
        pt = [rng.randint(1, top) for _ in range(ring.nvars)]
        ev = [[f.evaluate(pt) for f in r] for r in rows]
        r, pr, pc = _rank_mod_p(ev, p)
        if r == 0:
            # a nonzero entry would have shown up with high probability
            if any(f.terms for row in rows for f in row):
                continue
            return 0, None
        if not certify:
            return r, None
        sub = [[rows[i][j] for j in sorted(pc)] for i in sorted(pr)]
        minor = determinant(sub)
        if minor.terms:
            return r, minor
    raise RuntimeError("rank evaluation kept hitting degenerate points")


def module_rank(E: PModule, seed: int = 0) -> int:
    if E.nrels == 0:
        return E.ambient_rank
    r, _ = matrix_rank(E.rows(), seed)
    return E.ambient_rank - r


# -- saturation and torsion --------------------------------------------------------------


def submodule_quotient(ring, n, shifts, gens, f: Poly, budget=None) -> list[tuple]:
    """Generators of ``N : f`` inside ``R^n``."""
    zero = ring.zero()
    cols = []
    for i in range(n):
        col = [zero] * n
        col[i] = f
        cols.append(tuple(col))
    cols.extend(tuple(v) for v in gens)
    fdeg = f.degree() if f.is_homogeneous() else 0
    cs = [shifts[i] + fdeg for i in range(n)]
    for v in gens:
        d = vector_degree(v, shifts)
        cs.append(d if d is not None else 0)
    ker = gb.kernel_vectors(ring, n, cols, shifts, cs, budget)
    return [tuple(v[:n]) for v in ker if any(x.terms for x in v[:n])]


def saturate_submodule(ring: PolyRing, n: int, shifts, gens, f: Poly, budget=None,
                       method: str = "auto") -> list[tuple]:
    """Generators of ``N : f^oo`` for ``N`` spanned by ``gens`` in ``R^n``."""
    gens = [tuple(v) for v in gens if any(x.terms for x in v)]
    if not gens:
        return []
    if f.is_constant():
        return gens
    homog = f.is_homogeneous() and all(vector_degree(v, shifts) is not None for v in gens) \
        and ring.order == "grevlex"
    if method == "auto":
        method = "bayer" if homog else "iterate"
    if method == "iterate":
        cur = gens
        while True:
            nxt = submodule_quotient(ring, n, shifts, cur, f, budget)
            a = Submodule(ring, n, cur, shifts, budget)
            if a.contains_all(nxt):
                return cur
            cur = nxt
    name = ring.fresh_names("u_", 1, 0)[0]
    big = PolyRing(ring.vars + (name,), ring.char, "grevlex", ring.weights + (max(f.degree(), 1),))
    nv = ring.nvars
    lift = list(range(nv))
    u = big.var(nv)
    fb = f.map_vars(big, lift)
    zero = big.zero()
    vecs = [tuple(x.map_vars(big, lift) for x in v) for v in gens]
    for i in range(n):
        col = [zero] * n
        col[i] = u - fb
        vecs.append(tuple(col))
    S = Submodule(big, n, vecs, shifts, budget)
    images = ring.gens() + [f]
    out = []
    for v in S.gb():
        k = min(e[nv] for x in v for e in x.terms)
        if k:
            v = tuple(Poly(big, {e[:nv] + (e[nv] - k,): c for e, c in x.terms.items()}) for x in v)
        out.append(tuple(x.substitute(images, ring) for x in v))
    return out


@dataclass
class TorsionData:
    torsion: PModule
    quotient: PModule
    is_torsion_free: bool
    witness: Poly | None


def torsion_submodule(E: PModule, seed: int = 0) -> TorsionData:
    """Torsion ``T = ker(E -> E_f)`` for a nonzero maximal-rank minor ``f``."""
    ring = E.ring
    n = E.ambient_rank
    if E.nrels == 0:
        zero_mod = PModule(ring, 0, (), (), "0")
        return TorsionData(zero_mod, E, True, None)
    r, f = matrix_rank(E.rows(), seed)
    if r == 0:
        zero_mod = PModule(ring, 0, (), (), "0")
        return TorsionData(zero_mod, E, True, None)
    sat = saturate_submodule(ring, n, E.degrees, E.relations, f, E.budget)
    N = E.relation_module()
    free = N.contains_all(sat)
    quotient = PModule(ring, n, tuple(sat), E.degrees, f"{E.label}/torsion", E.budget)
    if free:
        zero_mod = PModule(ring, 0, (), (), "0")
        return TorsionData(zero_mod, E, True, f)
    # T = Nsat / N presented by the saturated generators
    k = len(sat)
    cols = list(sat) + list(E.relations)
    cs = [vector_degree(v, E.degrees) or 0 for v in cols]
    ker = gb.kernel_vectors(ring, n, cols, E.degrees, cs, E.budget)
    rel = [tuple(v[:k]) for v in ker if any(x.terms for x in v[:k])]
    T = PModule(ring, k, tuple(rel), tuple(cs[:k]), f"torsion({E.label})", E.budget)
    return TorsionData(T.minimized, quotient, False, f)


# -- Hom, Ext, exterior powers -----------------------------------------------------------


def _submodule_presentation(ring, n, shifts, gens, budget=None, label="") -> PModule:
    """Presentation of the submodule of ``R^n`` spanned by ``gens``."""
    gens = [tuple(v) for v in gens]
    degs = [vector_degree(v, shifts) for v in gens]
    homog = all(d is not None for d in degs)
    degs = [d if d is not None else 0 for d in degs]
    rel = kernel(ring, n, gens, shifts, degs, minimal=homog, budget=budget)
    return PModule(ring, len(gens), tuple(rel), tuple(degs), label, budget)


def hom_dual_vectors(E: PModule) -> tuple[list[tuple], tuple]:
    """Generators of ``Hom(E, R)`` as row vectors ``psi`` with ``psi * phi == 0``."""
    ring = E.ring
    n = E.ambient_rank
    dual_shifts = tuple(-d for d in E.degrees)
    if E.nrels == 0:
        gens = []
        for i in range(n):
            v = [ring.zero()] * n
            v[i] = ring.one()
            gens.append(tuple(v))
        return gens, dual_shifts
    # columns of phi^T are the rows of phi
    cols = [tuple(row) for row in E.rows()]
    cd = E.col_degrees
    row_shifts = [-d for d in cd] if cd is not None else [0] * E.nrels
    ker = kernel(ring, E.nrels, cols, row_shifts, list(dual_shifts),
                 minimal=cd is not None, budget=E.budget)
    return ker, dual_shifts


def hom_dual(E: PModule) -> PModule:
    gens, shifts = hom_dual_vectors(E)
    if not gens:
        return PModule(E.ring, 0, (), (), f"{E.label}*")
    return _submodule_presentation(E.ring, E.ambient_rank, shifts, gens, E.budget, f"{E.label}*")


def _transpose_cols(cols, nrows):
    """Rows of the matrix with the given columns, used as columns of the transpose."""
    return [tuple(c[i] for c in cols) for i in range(nrows)]


def ext_data(E: PModule, i: int):
    """Cycles ``Z`` and boundaries ``B`` in ``F_i^*`` whose quotient is ``Ext^i(E, R)``."""
    res = E.resolution
    ring = E.ring
    if i > res.length:
        return None
    shifts = [-d for d in res.degrees[i]]
    rank_i = len(shifts)
    if i < res.length:
        # d_{i+1}: F_{i+1} -> F_i; its transpose maps F_i^* -> F_{i+1}^*
        d_next = res.maps[i]
        cols = _transpose_cols(d_next, rank_i)
        row_shifts = [-d for d in res.degrees[i + 1]]
        Z = kernel(ring, len(d_next), cols, row_shifts, shifts, budget=E.budget)
    else:
        Z = []
        for k in range(rank_i):
            v = [ring.zero()] * rank_i
            v[k] = ring.one()
            Z.append(tuple(v))
    if i == 0:
        B = []
    else:
        d_i = res.maps[i - 1]  # F_i -> F_{i-1}, columns indexed by F_i
        # rows of d_i are vectors in F_i^*
        B = [tuple(col[r] for col in d_i) for r in range(len(res.degrees[i - 1]))]
    return Z, B, shifts


def ext_is_zero(E: PModule, i: int) -> bool:
    data = ext_data(E, i)
    if data is None:
        return True
    Z, B, shifts = data
    if not Z:
        return True
    if not B:
        return False
    return Submodule(E.ring, len(shifts), B, shifts, E.budget).contains_all(Z)


def ext_module(E: PModule, i: int) -> PModule:
    """``Ext^i(E, R)`` presented as ``Z / B``."""
    ring = E.ring
    data = ext_data(E, i)
    label = f"Ext^{i}({E.label})"
    if data is None or not data[0]:
        return PModule(ring, 0, (), (), label)
    Z, B, shifts = data
    return subquotient(ring, shifts, Z, B, label, E.budget)


def subquotient(ring: PolyRing, shifts, Z, B, label: str = "", budget=None) -> PModule:
    """``(Z + B) / B`` for submodules of the free module with these shifts, minimized."""
    n = len(shifts)
    k = len(Z)
    if k == 0:
        return PModule(ring, 0, (), (), label)
    cols = list(Z) + list(B)
    cs = [vector_degree(v, shifts) for v in cols]
    cs = [d if d is not None else 0 for d in cs]
    ker = gb.kernel_vectors(ring, n, cols, shifts, cs, budget)
    rel = [tuple(v[:k]) for v in ker if any(x.terms for x in v[:k])]
    return PModule(ring, k, tuple(rel), tuple(cs[:k]), label, budget).minimized


def exterior_power(E: PModule, k: int) -> PModule:
    """``wedge^k E``: basis wedges of k-subsets, relations ``phi(v) ^ e_J``."""
    ring = E.ring
    n = E.ambient_rank
    if k < 0 or k > n:
        if k > n:
            return PModule(ring, 0, (), (), f"wedge^{k}({E.label})")
        raise ValueError("negative exterior power")
    subsets = list(itertools.combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}
    degs = tuple(sum(E.degrees[i] for i in s) for s in subsets)
    zero = ring.zero()
    cols = []
    if k >= 1:
        for col in E.relations:
            for J in itertools.combinations(range(n), k - 1):
                out = [zero] * len(subsets)
                nonzero = False
                for i, f in enumerate(col):
                    if not f.terms or i in J:
                        continue
                    S = tuple(sorted(J + (i,)))
                    sign = (-1) ** sum(1 for j in J if j < i)
                    out[index[S]] = out[index[S]] + (f if sign > 0 else -f)
                    nonzero = True
                if nonzero and any(x.terms for x in out):
                    cols.append(tuple(out))
    return PModule(ring, len(subsets), tuple(cols), degs, f"wedge^{k}({E.label})", E.budget)


def is_orientable(E: PModule, check: bool = False, seed: int = 0) -> bool:
    """Always true over polynomial rings; ``check`` runs the double-dual test."""
    e = module_rank(E, seed)
    if e == 0:
        raise ValueError("orientability needs positive rank")
    if not check:
        return True
    W = exterior_power(E, e)
    D = hom_dual(hom_dual(W)).minimized
    return D.ambient_rank == 1 and D.nrels == 0


# -- invariants --------------------------------------------------------------------------


def invariant_tuple(E: PModule, seed: int = 0) -> tuple:
    """(rank, Fitting-ideal bases, Betti numbers) for isomorphism-style comparisons."""
    M = E.minimized
    fitts = tuple(tuple(fitting_ideal(M, i).sorted_gb_strings()) for i in range(M.ambient_rank + 1))
    betti = tuple(M.resolution.betti) if M.is_graded else None
    return module_rank(M, seed), fitts, betti


def apply_matrix(cols: Sequence[Sequence[Poly]], v: Sequence[Poly], nrows: int, ring) -> tuple:
    acc = [ring.zero()] * nrows
    for c, x in zip(cols, v):
        if x.terms:
            for r in range(nrows):
                if c[r].terms:
                    acc[r] = acc[r] + x * c[r]
    return tuple(acc)


def module_quotient_by_vectors(E: PModule, vectors: Sequence[Sequence[Poly]], label="") -> PModule:
    """``E / (images of vectors)`` by appending relation columns."""
    return PModule(E.ring, E.ambient_rank, E.relations + tuple(tuple(v) for v in vectors),
                   E.degrees, label or f"{E.label}/x", E.budget)


def binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0
