"""Buchberger engine for ideals and submodules of graded free modules.

Internally a vector is a list of terms ``(key, mono, coeff)`` sorted by
decreasing ``key``.  ``mono`` packs the exponent vector into 17-bit fields
(16 bits plus a guard bit) with the position index in the top field, so
monomial products are integer additions and divisibility is a single mask
test.  ``key`` is an order-preserving linear functional of the exponents
plus a per-position constant, so ``key(t * m) == key(t) + key(m)``.

The algorithm is Buchberger's with the Gebauer-Moeller update, normal pair
selection (smallest lcm) or sugar selection, full reduction of S-vectors and
a final inter-reduction.  Exceeding the pair or basis budget raises
:class:`BudgetError`.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import Poly, PolyRing

FIELD_BITS = 17
EXP_MASK = (1 << 16) - 1
ROW_BASE = 1 << 40

# When true every computed basis is re-checked against Buchberger's criterion.
VERIFY = False
VERIFY_COUNT = 0


class BudgetError(RuntimeError):
    """Raised when a Groebner computation exceeds its resource budget."""


@dataclass
class Budget:
    max_pairs: int = 2_000_000
    max_basis: int = 50_000

    def copy(self) -> "Budget":
        return Budget(self.max_pairs, self.max_basis)


DEFAULT_BUDGET = Budget()


def set_default_budget(max_pairs: int | None = None, max_basis: int | None = None) -> None:
    if max_pairs is not None:
        DEFAULT_BUDGET.max_pairs = max_pairs
    if max_basis is not None:
        DEFAULT_BUDGET.max_basis = max_basis


class ModuleOrder:
    """Term order on a free module ``R^npos`` over ``ring``.

    ``shifts`` are generator degrees added to the degree row (term over
    position, ties broken by position with lower index larger).  ``pos_rank``
    puts a block rank on top: terms in a position of higher rank beat every
    term of lower rank.  ``pot`` puts position first.
    """

    def __init__(self, ring: PolyRing, npos: int = 1, shifts: Sequence[int] | None = None,
                 pos_rank: Sequence[int] | None = None, pot: bool = False):
        self.ring = ring
        self.n = n = ring.nvars
        self.npos = npos
        self.shifts = tuple(shifts) if shifts is not None else (0,) * npos
        self.pos_rank = tuple(pos_rank) if pos_rank is not None else None
        self.pot = pot
        rows = ring._rows
        places = []  # list of (kind, data) from top
        if self.pos_rank is not None:
            places.append("rank")
        if pot:
            places.append("pos")
        for r in range(len(rows)):
            places.append(("ring", r))
        if not pot:
            places.append("pos")
        total = len(places)
        scale = {i: ROW_BASE ** (total - 1 - i) for i in range(total)}
        coeffs = [0] * n
        pconst = [0] * npos
        first_ring = True
        for i, place in enumerate(places):
            s = scale[i]
            if place == "rank":
                for p in range(npos):
                    pconst[p] += self.pos_rank[p] * s
            elif place == "pos":
                for p in range(npos):
                    pconst[p] += (npos - p) * s
            else:
                row = rows[place[1]]
                for v in range(n):
                    if row:
                        coeffs[v] += row[v] * s
                if first_ring:
                    for p in range(npos):
                        pconst[p] += self.shifts[p] * s
                    first_ring = False
        self.coeffs = tuple(coeffs)
        self.pconst = tuple(pconst)
        self.pos_shift = FIELD_BITS * n
        self.guard = sum(1 << (FIELD_BITS * i + 16) for i in range(n))
        self.ones = sum(1 << (FIELD_BITS * i) for i in range(n))
        self.exp_mask = sum(EXP_MASK << (FIELD_BITS * i) for i in range(n))
        self.weights = ring.weights
        self.degree_compatible = ring.order == "grevlex" and self.pos_rank is None and not pot

    # -- packing --------------------------------------------------------------

    def pack(self, e: Sequence[int], pos: int = 0) -> int:
        m = pos << self.pos_shift
        for i, a in enumerate(e):
            if a:
                if a > EXP_MASK:
                    raise OverflowError("exponent exceeds 2^16")
                m |= a << (FIELD_BITS * i)
        return m

    def unpack(self, m: int) -> tuple[tuple[int, ...], int]:
        e = tuple((m >> (FIELD_BITS * i)) & EXP_MASK for i in range(self.n))
        return e, m >> self.pos_shift

    def key_of(self, e: Sequence[int], pos: int = 0) -> int:
        return sum(a * c for a, c in zip(e, self.coeffs)) + self.pconst[pos]

    def mono_degree(self, m: int) -> int:
        d = 0
        for i, w in enumerate(self.weights):
            a = (m >> (FIELD_BITS * i)) & EXP_MASK
            if a:
                d += a * w
        return d

    def lcm(self, a: int, b: int) -> int:
        g = self.guard
        d = ((a | g) - (b & self.exp_mask)) & g
        sel = d >> 16
        mask = (sel << 16) - sel
        em = self.exp_mask
        return ((a & mask) | (b & ~mask & em)) & em | (a & ~em & ~g)

    def divides(self, a: int, b: int) -> bool:
        """True when monomial ``a`` divides ``b`` (positions must agree)."""
        ps = self.pos_shift
        if (a >> ps) != (b >> ps):
            return False
        g = self.guard
        return ((b | g) - (a & self.exp_mask)) & g == g

    def coprime(self, a: int, b: int) -> bool:
        g = self.guard
        em = self.exp_mask
        na = (((a & em) | g) - self.ones) & g
        nb = (((b & em) | g) - self.ones) & g
        return not (na & nb)

    # -- conversion -----------------------------------------------------------

    def encode(self, vec: Sequence[Poly] | Poly) -> list:
        if isinstance(vec, Poly):
            vec = (vec,)
        terms = []
        for pos, f in enumerate(vec):
            pc = self.pconst[pos]
            for e, c in f.terms.items():
                terms.append((sum(a * k for a, k in zip(e, self.coeffs)) + pc, self.pack(e, pos), c))
        terms.sort(reverse=True)
        return terms

    def decode(self, terms: Iterable, npos: int | None = None) -> list[Poly]:
        npos = self.npos if npos is None else npos
        out = [dict() for _ in range(npos)]
        for _k, m, c in terms:
            e, pos = self.unpack(m)
            out[pos][e] = c
        return [Poly(self.ring, d) for d in out]


# -- core reduction -------------------------------------------------------------


class _Elem:
    __slots__ = ("terms", "lkey", "lmono", "ldeg", "sugar", "pos")

    def __init__(self, terms, order: ModuleOrder, sugar: int):
        self.terms = terms
        self.lkey, self.lmono, _ = terms[0]
        self.pos = self.lmono >> order.pos_shift
        self.ldeg = order.mono_degree(self.lmono)
        self.sugar = sugar


def _monic(terms, p):
    c = terms[0][2]
    if c == 1:
        return terms
    if p:
        inv = pow(c, -1, p)
        return [(k, m, v * inv % p) for k, m, v in terms]
    inv = 1 / Fraction(c)
    return [(k, m, _norm(v * inv)) for k, m, v in terms]


def _norm(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


class _Reducer:
    """Lead-term index of reducers grouped by position."""

    def __init__(self, order: ModuleOrder):
        self.order = order
        self.by_pos: dict[int, list] = {}

    def add(self, el: _Elem):
        self.by_pos.setdefault(el.pos, []).append((el.lmono & self.order.exp_mask, el))

    def remove(self, el: _Elem):
        lst = self.by_pos.get(el.pos, [])
        self.by_pos[el.pos] = [t for t in lst if t[1] is not el]

    def find(self, m: int):
        lst = self.by_pos.get(m >> self.order.pos_shift)
        if not lst:
            return None
        g = self.order.guard
        mg = m | g
        for lm, el in lst:
            if (mg - lm) & g == g:
                return el
        return None


def _reduce(h: dict, mon: dict, reducer: _Reducer, p: int, full: bool = True):
    """Reduce the vector held in ``h``/``mon``; returns a sorted term list."""
    heap = [-k for k in h]
    heapq.heapify(heap)
    out = []
    find = reducer.find
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        k = -pop(heap)
        c = h.pop(k)
        m = mon.pop(k)
        if not c:
            continue
        el = find(m)
        if el is None:
            out.append((k, m, c))
            if not full:
                rest = sorted(((kk, mon[kk], cc) for kk, cc in h.items() if cc), reverse=True)
                out.extend(rest)
                return out
            continue
        dk = k - el.lkey
        dm = m - el.lmono
        it = iter(el.terms)
        next(it)
        if p:
            for gk, gm, gc in it:
                nk = gk + dk
                v = h.get(nk)
                if v is None:
                    h[nk] = (-c * gc) % p
                    mon[nk] = gm + dm
                    push(heap, -nk)
                else:
                    h[nk] = (v - c * gc) % p
        else:
            for gk, gm, gc in it:
                nk = gk + dk
                v = h.get(nk)
                if v is None:
                    h[nk] = _norm(-c * gc)
                    mon[nk] = gm + dm
                    push(heap, -nk)
                else:
                    h[nk] = _norm(v - c * gc)
    return out


def _as_work(terms, mult_key=0, mult_mono=0, scale=1, p=0, h=None, mon=None):
    if h is None:
        h, mon = {}, {}
    for k, m, c in terms:
        nk = k + mult_key
        v = c * scale
        old = h.get(nk)
        if old is None:
            h[nk] = v % p if p else _norm(v)
            mon[nk] = m + mult_mono
        else:
            h[nk] = (old + v) % p if p else _norm(old + v)
    return h, mon


# -- Buchberger -------------------------------------------------------------------


class GBState:
    """Incremental Buchberger state; elements may be added between runs."""

    def __init__(self, order: ModuleOrder, char: int, budget: Budget | None = None,
                 strategy: str | None = None, product_criterion: bool | None = None):
        self.order = order
        self.p = char
        self.budget = budget or DEFAULT_BUDGET
        if strategy is None:
            strategy = "normal" if order.degree_compatible else "sugar"
        self.strategy = strategy
        self.product = order.npos == 1 if product_criterion is None else product_criterion
        self.elems: list[_Elem] = []
        self.active: list[int] = []
        self.reducer = _Reducer(order)
        self.pairs: list = []  # heap of (sel, seq, i, j, lcm_mono, lcm_key)
        self._seq = itertools.count()
        self.pair_count = 0
        self.unit = False

    # selection key for a pair
    def _sel(self, lkey, sugar):
        return (lkey, sugar) if self.strategy == "normal" else (sugar, lkey)

    def add(self, terms, sugar: int | None = None) -> bool:
        """Reduce ``terms`` by the current basis and insert it if nonzero."""
        if not terms:
            return False
        if sugar is None:
            sugar = max(self.order.mono_degree(m) + self.order.shifts[m >> self.order.pos_shift]
                        for _, m, _ in terms)
        h, mon = _as_work(terms, p=self.p)
        red = _reduce(h, mon, self.reducer, self.p)
        if not red:
            return False
        self._insert(_monic(red, self.p), sugar)
        return True

    def _insert(self, terms, sugar):
        order = self.order
        el = _Elem(terms, order, sugar)
        idx = len(self.elems)
        self.elems.append(el)
        if len(self.elems) > self.budget.max_basis:
            raise BudgetError(f"basis size exceeded {self.budget.max_basis}")
        if el.lmono & order.exp_mask == 0 and order.npos == 1:
            self.unit = True
        h = el.lmono
        hpos = el.pos
        lcm = order.lcm
        divides = order.divides
        # Gebauer-Moeller update
        cands = []
        for g in self.active:
            ge = self.elems[g]
            if ge.pos != hpos:
                continue
            cands.append((g, lcm(h, ge.lmono)))
        kept = []  # (g, lcm, coprime)
        for i, (g, lc) in enumerate(cands):
            cop = self.product and order.coprime(h, self.elems[g].lmono)
            if not cop:
                if any(divides(l2, lc) for _, l2 in cands[i + 1:]) or \
                        any(divides(l2, lc) for _, l2, _ in kept):
                    continue
            kept.append((g, lc, cop))
        new_pairs = [(g, lc) for g, lc, cop in kept if not cop]
        # prune old pairs
        if self.pairs:
            survivors = []
            for item in self.pairs:
                _sel, _seq, i, j, lc, _lk = item
                if divides(h, lc):
                    li = lcm(self.elems[i].lmono, h)
                    lj = lcm(self.elems[j].lmono, h)
                    if li != lc and lj != lc:
                        continue
                survivors.append(item)
            if len(survivors) != len(self.pairs):
                heapq.heapify(survivors)
                self.pairs = survivors
        for g, lc in new_pairs:
            ge = self.elems[g]
            lk = order.key_of(order.unpack(lc)[0], hpos)
            ldeg = order.mono_degree(lc)
            sug = max(el.sugar + ldeg - el.ldeg, ge.sugar + ldeg - ge.ldeg)
            heapq.heappush(self.pairs, (self._sel(lk, sug), next(self._seq), g, idx, lc, lk))
        # drop basis elements whose lead is divisible by the new lead
        still = []
        for g in self.active:
            ge = self.elems[g]
            if ge.pos == hpos and divides(h, ge.lmono):
                self.reducer.remove(ge)
            else:
                still.append(g)
        still.append(idx)
        self.active = still
        self.reducer.add(el)

    def run(self, max_degree: int | None = None) -> None:
        """Process pairs (only those of sugar <= max_degree when given)."""
        p = self.p
        order = self.order
        while self.pairs and not self.unit:
            sel = self.pairs[0][0]
            sug = sel[1] if self.strategy == "normal" else sel[0]
            if max_degree is not None and sug > max_degree:
                if self.strategy == "sugar":
                    break
                # normal strategy: look for any pair within the bound
                inside = [it for it in self.pairs if it[0][1] <= max_degree]
                if not inside:
                    break
                item = min(inside)
                self.pairs.remove(item)
                heapq.heapify(self.pairs)
            else:
                item = heapq.heappop(self.pairs)
            self.pair_count += 1
            if self.pair_count > self.budget.max_pairs:
                raise BudgetError(f"pair budget exceeded {self.budget.max_pairs}")
            _sel, _seq, i, j, lc, lk = item
            a, b = self.elems[i], self.elems[j]
            sug = max(a.sugar + order.mono_degree(lc) - a.ldeg, b.sugar + order.mono_degree(lc) - b.ldeg)
            h, mon = _as_work(a.terms[1:], lk - a.lkey, lc - a.lmono, 1, p)
            _as_work(b.terms[1:], lk - b.lkey, lc - b.lmono, -1, p, h, mon)
            red = _reduce(h, mon, self.reducer, p)
            if red:
                self._insert(_monic(red, p), sug)

    def basis(self) -> list[list]:
        """Reduced basis (monic, tail-reduced), sorted by increasing lead."""
        p = self.p
        if self.unit:
            for g in self.active:
                el = self.elems[g]
                if el.lmono & self.order.exp_mask == 0:
                    return [el.terms[:1]]
        els = sorted((self.elems[g] for g in self.active), key=lambda e: e.lkey)
        out = []
        for el in els:
            # a tail term is never divisible by its own lead
            h, mon = _as_work(el.terms[1:], p=p)
            tail = _reduce(h, mon, self.reducer, p)
            out.append([el.terms[0]] + tail)
        for el, terms in zip(els, out):
            el.terms = terms
        return out


def buchberger(vectors: Sequence[list], order: ModuleOrder, char: int,
               budget: Budget | None = None, strategy: str | None = None,
               max_degree: int | None = None) -> list[list]:
    state = GBState(order, char, budget, strategy)
    for v in sorted((v for v in vectors if v), key=lambda t: t[0][0]):
        state.add(v)
    state.run(max_degree)
    basis = state.basis()
    if VERIFY and max_degree is None:
        verify_basis(basis, order, char)
    return basis


def verify_basis(basis: Sequence[list], order: ModuleOrder, char: int) -> None:
    """Assert that every S-vector of ``basis`` reduces to zero."""
    global VERIFY_COUNT
    VERIFY_COUNT += 1
    red = _Reducer(order)
    els = [_Elem(_monic(t, char), order, 0) for t in basis]
    for el in els:
        red.add(el)
    for a, b in itertools.combinations(els, 2):
        if a.pos != b.pos:
            continue
        lc = order.lcm(a.lmono, b.lmono)
        lk = order.key_of(order.unpack(lc)[0], a.pos)
        h, mon = _as_work(a.terms[1:], lk - a.lkey, lc - a.lmono, 1, char)
        _as_work(b.terms[1:], lk - b.lkey, lc - b.lmono, -1, char, h, mon)
        if _reduce(h, mon, red, char):
            raise AssertionError("Buchberger criterion fails: S-vector does not reduce to 0")


def reduce_terms(terms, basis_terms, order: ModuleOrder, char: int) -> list:
    red = _Reducer(order)
    for t in basis_terms:
        red.add(_Elem(_monic(t, char), order, 0))
    h, mon = _as_work(terms, p=char)
    return _reduce(h, mon, red, char)


# -- Poly-level ideals ---------------------------------------------------------------


def _sort_key(f: Poly):
    return (f.degree(), str(f))


class IdealData:
    """Ideal of a polynomial ring with a lazily computed reduced Groebner basis."""

    def __init__(self, ring: PolyRing, gens: Iterable[Poly], budget: Budget | None = None):
        self.ring = ring
        gl = []
        for g in gens:
            if not isinstance(g, Poly):
                g = ring.const(g)
            if g.ring != ring:
                raise ValueError(f"generator lives in {g.ring}, expected {ring}")
            if g.terms:
                gl.append(g)
        self.gens = tuple(gl)
        self.budget = budget
        self._gb = None
        self._order = None

    @classmethod
    def parse(cls, ring: PolyRing, texts: Iterable[str]) -> "IdealData":
        return cls(ring, [ring.parse(t) for t in texts])

    def __repr__(self):
        return f"IdealData({[str(g) for g in self.gens]})"

    @property
    def order(self) -> ModuleOrder:
        if self._order is None:
            self._order = ModuleOrder(self.ring)
        return self._order

    def gb(self) -> list[Poly]:
        if self._gb is None:
            order = self.order
            basis = buchberger([order.encode(g) for g in self.gens], order,
                               self.ring.char, self.budget)
            self._gb = [order.decode(t)[0] for t in basis]
        return self._gb

    def groebner(self) -> "IdealData":
        out = IdealData(self.ring, self.gb(), self.budget)
        out._gb = list(self.gb())
        return out

    def sorted_gb_strings(self) -> list[str]:
        return [str(f) for f in sorted(self.gb(), key=_sort_key)]

    def normal_form(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise ValueError("ring mismatch")
        order = self.order
        basis = [order.encode(g) for g in self.gb()]
        return order.decode(reduce_terms(order.encode(f), basis, order, self.ring.char))[0]

    def contains(self, f: Poly) -> bool:
        return not self.normal_form(f).terms

    def contains_ideal(self, other: "IdealData") -> bool:
        order = self.order
        basis = [order.encode(g) for g in self.gb()]
        red = _Reducer(order)
        for t in basis:
            red.add(_Elem(t, order, 0))
        for g in other.gens:
            h, mon = _as_work(order.encode(g), p=self.ring.char)
            if _reduce(h, mon, red, self.ring.char):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, IdealData):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.gb() == other.gb()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        gb = self.gb()
        return len(gb) == 1 and gb[0].is_constant()

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def __add__(self, other: "IdealData") -> "IdealData":
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        return IdealData(self.ring, self.gens + other.gens, self.budget)

    def __mul__(self, other: "IdealData") -> "IdealData":
        if self.ring != other.ring:
            raise ValueError("ring mismatch")
        return IdealData(self.ring, [a * b for a in self.gens for b in other.gens], self.budget)

    def power(self, k: int) -> "IdealData":
        out = IdealData(self.ring, [self.ring.one()])
        for _ in range(k):
            out = out * self
        return out

    def lead_monomials(self) -> list[tuple]:
        return [g.lead_exp() for g in self.gb()]

    def dimension(self) -> int:
        return dimension(self)

    def height(self) -> int | float:
        return height(self)

    def in_ring(self, ring: PolyRing) -> "IdealData":
        """Same generators viewed in a ring with identical variables (other order)."""
        if ring.vars != self.ring.vars or ring.char != self.ring.char:
            raise ValueError("target ring must share variables and field")
        return IdealData(ring, [Poly(ring, dict(g.terms)) for g in self.gens], self.budget)


def groebner_basis(I: IdealData) -> IdealData:
    return I.groebner()


def normal_form(f: Poly, I: IdealData) -> Poly:
    return I.normal_form(f)


def s_polynomial_check(I: IdealData) -> bool:
    """Buchberger's criterion on the cached basis of ``I``."""
    order = I.order
    try:
        verify_basis([order.encode(g) for g in I.gb()], order, I.ring.char)
    except AssertionError:
        return False
    return True


# -- kernels / syzygies ------------------------------------------------------------------


def kernel_vectors(ring: PolyRing, nrows: int, columns: Sequence[Sequence[Poly]],
                   row_shifts: Sequence[int] | None = None,
                   col_shifts: Sequence[int] | None = None,
                   budget: Budget | None = None) -> list[list[Poly]]:
    """Generators (a Groebner basis) of the kernel of the matrix with these columns."""
    ncols = len(columns)
    if ncols == 0:
        return []
    rs = list(row_shifts) if row_shifts is not None else [0] * nrows
    if col_shifts is None:
        cs = []
        for col in columns:
            d = [f.degree() + s for f, s in zip(col, rs) if f.terms]
            cs.append(max(d) if d else 0)
    else:
        cs = list(col_shifts)
    npos = nrows + ncols
    order = ModuleOrder(ring, npos, rs + cs, pos_rank=[1] * nrows + [0] * ncols)
    vecs = []
    zero = ring.zero()
    for j, col in enumerate(columns):
        v = list(col) + [zero] * ncols
        v[nrows + j] = ring.one()
        vecs.append(order.encode(v))
    basis = buchberger(vecs, order, ring.char, budget)
    out = []
    ps = order.pos_shift
    for t in basis:
        if (t[0][1] >> ps) >= nrows:
            full = order.decode(t)
            out.append(full[nrows:])
    return out


def syzygy_columns(ring: PolyRing, nrows: int, columns, row_shifts=None, col_shifts=None,
                   budget: Budget | None = None):
    return kernel_vectors(ring, nrows, columns, row_shifts, col_shifts, budget)


# -- ideal operations ------------------------------------------------------------------------


def _check_same(I: IdealData, J: IdealData):
    if I.ring != J.ring:
        raise ValueError(f"ring mismatch: {I.ring} vs {J.ring}")


def intersect(I: IdealData, J: IdealData) -> IdealData:
    _check_same(I, J)
    ring = I.ring
    if not I.gens or not J.gens:
        return IdealData(ring, [])
    one, zero = ring.one(), ring.zero()
    cols = [(one, one)] + [(f, zero) for f in I.gens] + [(zero, g) for g in J.gens]
    ker = kernel_vectors(ring, 2, cols, budget=I.budget)
    return IdealData(ring, [v[0] for v in ker if v[0].terms], I.budget)


def ideal_quotient(I: IdealData, J: IdealData) -> IdealData:
    """The colon ideal ``I : J``."""
    _check_same(I, J)
    ring = I.ring
    if not J.gens:
        return IdealData(ring, [ring.one()])
    if not I.gens:
        return IdealData(ring, [])
    k = len(J.gens)
    zero = ring.zero()
    cols = [tuple(J.gens)]
    for r in range(k):
        for f in I.gens:
            col = [zero] * k
            col[r] = f
            cols.append(tuple(col))
    ker = kernel_vectors(ring, k, cols, budget=I.budget)
    return IdealData(ring, [v[0] for v in ker if v[0].terms], I.budget)


def _saturate_element_bayer(I: IdealData, f: Poly) -> IdealData:
    """``I : f^oo`` for homogeneous data via a new last variable ``u = f``."""
    ring = I.ring
    name = ring.fresh_names("u_", 1, 0)[0]
    big = PolyRing(ring.vars + (name,), ring.char, "grevlex", ring.weights + (max(f.degree(), 1),))
    n = ring.nvars
    lift = list(range(n))
    gens = [g.map_vars(big, lift) for g in I.gens]
    u = big.var(n)
    gens.append(u - f.map_vars(big, lift))
    J = IdealData(big, gens, I.budget)
    images = ring.gens() + [f]
    out = []
    for g in J.gb():
        k = min(e[n] for e in g.terms)
        if k:
            g = Poly(big, {e[:n] + (e[n] - k,): c for e, c in g.terms.items()})
        out.append(g.substitute(images, ring))
    return IdealData(ring, out, I.budget)


def _saturate_element_rabinowitsch(I: IdealData, f: Poly) -> IdealData:
    ring = I.ring
    name = ring.fresh_names("w_", 1, 0)[0]
    big = PolyRing((name,) + ring.vars, ring.char, "block", (1,) + ring.weights, split=1)
    lift = [i + 1 for i in range(ring.nvars)]
    gens = [g.map_vars(big, lift) for g in I.gens]
    gens.append(big.one() - big.var(0) * f.map_vars(big, lift))
    J = IdealData(big, gens, I.budget)
    out = []
    for g in J.gb():
        if all(e[0] == 0 for e in g.terms):
            out.append(Poly(ring, {e[1:]: c for e, c in g.terms.items()}))
    return IdealData(ring, out, I.budget)


def _saturate_element_iterate(I: IdealData, f: Poly) -> IdealData:
    cur = I
    F = IdealData(I.ring, [f])
    while True:
        nxt = ideal_quotient(cur, F)
        if nxt.contains_ideal(cur) and cur.contains_ideal(nxt):
            return cur
        cur = nxt


def saturate(I: IdealData, J: IdealData | Poly, method: str = "auto") -> IdealData:
    """The saturation ``I : J^oo``.

    ``method`` is ``"bayer"`` (homogeneous data, extra last variable equal
    to the generator), ``"rabinowitsch"`` (``1 - w*g`` and elimination of
    ``w``), ``"iterate"`` (repeated colon until stable) or ``"auto"``.
    The result for several generators is the intersection of the
    per-generator saturations.
    """
    if isinstance(J, Poly):
        J = IdealData(I.ring, [J])
    _check_same(I, J)
    ring = I.ring
    if not J.gens:
        return IdealData(ring, [ring.one()])
    if not I.gens:
        return IdealData(ring, [])
    parts = []
    for g in J.gens:
        if g.is_constant():
            parts.append(I)
            continue
        m = method
        if m == "auto":
            homog = g.is_homogeneous() and I.is_homogeneous() and ring.order == "grevlex"
            m = "bayer" if homog else "rabinowitsch"
        if m == "bayer":
            parts.append(_saturate_element_bayer(I, g))
        elif m == "rabinowitsch":
            parts.append(_saturate_element_rabinowitsch(I, g))
        elif m == "iterate":
            parts.append(_saturate_element_iterate(I, g))
        else:
            raise ValueError(f"unknown saturation method {method!r}")
    out = parts[0]
    for q in parts[1:]:
        out = intersect(out, q)
    return out


def eliminate(I: IdealData, keep: Sequence[str]) -> IdealData:
    """``I`` intersected with the subring on the variables ``keep``."""
    ring = I.ring
    keep = list(keep)
    for v in keep:
        if v not in ring.vars:
            raise ValueError(f"unknown variable {v!r}")
    if len(set(keep)) != len(keep):
        raise ValueError("repeated variables in keep")
    drop = [v for v in ring.vars if v not in keep]
    keep_sorted = [v for v in ring.vars if v in keep]
    sub = PolyRing(keep_sorted, ring.char, "grevlex", [ring.weights[ring.index(v)] for v in keep_sorted])
    if not drop:
        return IdealData(sub, [g.map_vars(sub, list(range(ring.nvars))) for g in I.gens], I.budget)
    if not keep_sorted:
        return IdealData(sub, [sub.one()] if I.is_unit() else [], I.budget)
    allv = drop + keep_sorted
    w = [ring.weights[ring.index(v)] for v in allv]
    big = PolyRing(allv, ring.char, "block", w, split=len(drop))
    perm = [allv.index(v) for v in ring.vars]
    J = IdealData(big, [g.map_vars(big, perm) for g in I.gens], I.budget)
    nd = len(drop)
    out = []
    for g in J.gb():
        if all(not any(e[:nd]) for e in g.terms):
            out.append(Poly(sub, {e[nd:]: c for e, c in g.terms.items()}))
    return IdealData(sub, out, I.budget)


# -- dimension ------------------------------------------------------------------------------


class EmptyVariety(ValueError):
    """Dimension requested for the unit ideal."""


def _max_independent(supports: list[int], n: int) -> int:
    """Largest set of variables containing no lead-monomial support."""
    supports = sorted(set(supports), key=lambda s: bin(s).count("1"))
    # minimal supports only
    minimal = []
    for s in supports:
        if not any((t & s) == t for t in minimal):
            minimal.append(s)
    best = 0

    def rec(i: int, chosen: int, count: int, remaining: int):
        nonlocal best
        if count + remaining <= best:
            return
        if i == n:
            best = max(best, count)
            return
        bit = 1 << i
        new = chosen | bit
        if not any((t & new) == t for t in minimal):
            rec(i + 1, new, count + 1, remaining - 1)
        rec(i + 1, chosen, count, remaining - 1)

    rec(0, 0, 0, n)
    return best


def dimension(I: IdealData) -> int:
    if I.is_unit():
        raise EmptyVariety("the unit ideal defines the empty variety")
    n = I.ring.nvars
    sups = []
    for e in I.lead_monomials():
        s = 0
        for i, a in enumerate(e):
            if a:
                s |= 1 << i
        sups.append(s)
    return _max_independent(sups, n)


def height(I: IdealData) -> int | float:
    """Height, with ``inf`` for the unit ideal."""
    if I.is_unit():
        return float("inf")
    return I.ring.nvars - dimension(I)
