"""Exact sparse multivariate polynomials over F_p and Q.

A polynomial is a dict mapping exponent tuples to nonzero coefficients.
Coefficients over F_p are reduced residues in ``[0, p)``; over Q they are
``fractions.Fraction`` (or ``int``) values.

Monomial orders are encoded as integer weight matrices.  Because exponents
are bounded by ``MAX_EXP``, every weight matrix collapses to a single linear
functional with big-integer coefficients, so the order key of a monomial is
``sum(e_i * c_i)``.  The key is additive under multiplication, which the
Groebner engine relies on.

Polynomial text grammar (no division)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | atom ('^' INT | '**' INT)?
    atom   := INT | NAME | '(' expr ')'

``NAME`` is ``[A-Za-z_][A-Za-z0-9_]*`` and must be a ring variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

DEFAULT_PRIME = 32003
MAX_EXP = (1 << 16) - 1
# Row base for flattening weight matrices into one linear key.
KEY_BASE = 1 << 48


class ParseError(ValueError):
    """Malformed polynomial text; ``pos`` is the 0-based column."""

    def __init__(self, message: str, pos: int = 0):
        super().__init__(f"{message} (column {pos + 1})")
        self.pos = pos


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: F_p for prime ``characteristic``, Q for 0."""

    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not _is_prime(c):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    def __call__(self, value) -> int | Fraction:
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        v = Fraction(value)
        return int(v) if v.denominator == 1 else v

    def inv(self, a):
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        return 1 / Fraction(a)

    def signed(self, a):
        """Representative in the symmetric range, for printing."""
        p = self.characteristic
        if p and a > p // 2:
            return a - p
        return a


def _grevlex_rows(weights: Sequence[int], idx: Sequence[int], n: int) -> list[list[int]]:
    rows = []
    first = [0] * n
    for i in idx:
        first[i] = weights[i]
    rows.append(first)
    for i in reversed(idx[1:]):
        r = [0] * n
        r[i] = -1
        rows.append(r)
    return rows


class PolyRing:
    """Polynomial ring over a prime field (or Q) with a monomial order.

    ``order`` is ``"grevlex"`` (weighted by ``weights``), ``"lex"`` or
    ``"block"``; a block order eliminates the first ``split`` variables and
    uses weighted grevlex inside each block.
    """

    def __init__(
        self,
        vars: Sequence[str],
        char: int = DEFAULT_PRIME,
        order: str = "grevlex",
        weights: Sequence[int] | None = None,
        split: int | None = None,
    ):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"variable names must be distinct: {vars}")
        for v in vars:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.field = FieldSpec(char)
        self.char = self.field.characteristic
        self.vars = vars
        self.nvars = len(vars)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive, one per variable")
        if order not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {order!r}")
        if order == "block":
            if split is None or not 0 < split < self.nvars:
                raise ValueError("block order needs 0 < split < nvars")
        self.order = order
        self.split = split
        n = self.nvars
        if order == "grevlex":
            rows = _grevlex_rows(self.weights, list(range(n)), n)
        elif order == "lex":
            rows = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
        else:
            rows = _grevlex_rows(self.weights, list(range(split)), n)
            rows += _grevlex_rows(self.weights, list(range(split, n)), n)
        if not rows:
            rows = [[]]
        self._rows = rows
        nr = len(rows)
        self.key_coeffs = tuple(
            sum(rows[r][i] * KEY_BASE ** (nr - 1 - r) for r in range(nr)) for i in range(n)
        )
        self.degree_row_scale = KEY_BASE ** (nr - 1)
        self._index = {v: i for i, v in enumerate(vars)}

    # -- identity -------------------------------------------------------------

    def _sig(self):
        return (self.vars, self.char, self.order, self.weights, self.split)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        f = f"F_{self.char}" if self.char else "QQ"
        return f"PolyRing({f}[{', '.join(self.vars)}], {self.order})"

    # -- helpers -------------------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def mono_key(self, e: Sequence[int]) -> int:
        return sum(a * c for a, c in zip(e, self.key_coeffs))

    def mono_degree(self, e: Sequence[int]) -> int:
        return sum(a * w for a, w in zip(e, self.weights))

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str | int) -> "Poly":
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1 % self.char if self.char else 1})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, e: Sequence[int], c=1) -> "Poly":
        c = self.field(c)
        return Poly(self, {tuple(e): c} if c else {})

    def parse(self, text: str) -> "Poly":
        return parse_poly(self, text)

    def with_order(self, order: str, split: int | None = None, weights=None) -> "PolyRing":
        return PolyRing(self.vars, self.char, order, weights or self.weights, split)

    def extend(self, names: Sequence[str], front: bool = False, weights=None,
               order: str | None = None, split: int | None = None) -> "PolyRing":
        """Ring with extra variables appended (or prepended)."""
        w = tuple(weights) if weights is not None else (1,) * len(names)
        if front:
            vars, ws = tuple(names) + self.vars, w + self.weights
        else:
            vars, ws = self.vars + tuple(names), self.weights + w
        return PolyRing(vars, self.char, order or "grevlex", ws, split)

    def fresh_names(self, prefix: str, count: int, start: int = 1) -> list[str]:
        taken = set(self.vars)
        names = []
        for i in range(start, start + count):
            name = f"{prefix}{i}"
            while name in taken:
                name = "_" + name
            names.append(name)
        return names


def _combine(terms: dict, e: tuple, c, p: int) -> None:
    v = terms.get(e, 0) + c
    if p:
        v %= p
    if v:
        terms[e] = v
    else:
        terms.pop(e, None)


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, object]):
        self.ring = ring
        self.terms = terms if isinstance(terms, dict) else dict(terms)
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, pairs: Iterable[tuple[tuple, object]]) -> "Poly":
        p = ring.char
        acc: dict = {}
        for e, c in pairs:
            _combine(acc, tuple(e), ring.field(c), p)
        return cls(ring, acc)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, 0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- order-dependent data -------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        key = self.ring.mono_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead_exp(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.mono_key)

    def lead_coeff(self):
        return self.terms[self.lead_exp()]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lead_coeff())
        return self.scale(inv)

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        md = self.ring.mono_degree
        return max(md(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        md = self.ring.mono_degree
        return len({md(e) for e in self.terms}) <= 1

    def variables_used(self) -> set[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = self.ring.char
        acc = dict(self.terms)
        for e, c in other.terms.items():
            _combine(acc, e, c, p)
        return Poly(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.char
        return Poly(self.ring, {e: (-c) % p if p else -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c) -> "Poly":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        p = self.ring.char
        if p:
            return Poly(self.ring, {e: v * c % p for e, v in self.terms.items()})
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ring.zero()
        if self.degree() + other.degree() > MAX_EXP:
            raise OverflowError("exponent overflow: degree exceeds 2^16")
        p = self.ring.char
        acc: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = acc.get(e, 0) + c1 * c2
                if p:
                    v %= p
                if v:
                    acc[e] = v
                else:
                    acc.pop(e, None)
        return Poly(self.ring, acc)

    __rmul__ = __mul__

    def mul_term(self, e: Sequence[int], c=1) -> "Poly":
        p = self.ring.char
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        out = {}
        for e1, c1 in self.terms.items():
            v = c1 * c
            out[tuple(a + b for a, b in zip(e1, e))] = v % p if p else v
        return Poly(self.ring, out)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod_single(self, g: "Poly") -> tuple["Poly", "Poly"]:
        """Multivariate division by one polynomial: ``self = q*g + r``."""
        self._check(g)
        if not g.terms:
            raise ZeroDivisionError("division by zero polynomial")
        ring = self.ring
        p = ring.char
        key = ring.mono_key
        ge = g.lead_exp()
        ginv = ring.field.inv(g.terms[ge])
        h = dict(self.terms)
        q: dict = {}
        r: dict = {}
        while h:
            e = max(h, key=key)
            c = h[e]
            d = tuple(a - b for a, b in zip(e, ge))
            if min(d) < 0:
                r[e] = h.pop(e)
                continue
            f = c * ginv % p if p else c * ginv
            q[d] = f
            for e2, c2 in g.terms.items():
                _combine(h, tuple(a + b for a, b in zip(e2, d)), -f * c2, p)
        return Poly(ring, q), Poly(ring, r)

    def exact_div(self, g: "Poly") -> "Poly":
        q, r = self.divmod_single(g)
        if r.terms:
            raise ArithmeticError("polynomial division is not exact")
        return q

    # -- evaluation / substitution -------------------------------------------

    def evaluate(self, point: Sequence) -> object:
        p = self.ring.char
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, a in zip(point, e):
                if a:
                    t = t * (pow(x, a, p) if p else x ** a)
            total += t
        return total % p if p else total

    def substitute(self, images: Sequence["Poly"], target: PolyRing) -> "Poly":
        """Ring map sending variable i to ``images[i]`` (polynomials in ``target``)."""
        out = target.zero()
        powers: dict = {}
        for e, c in self.terms.items():
            t = target.const(c)
            for i, a in enumerate(e):
                if a:
                    k = (i, a)
                    if k not in powers:
                        powers[k] = images[i] ** a
                    t = t * powers[k]
            out = out + t
        return out

    def map_vars(self, target: PolyRing, index_map: Sequence[int | None]) -> "Poly":
        """Rename variables: variable i goes to target variable ``index_map[i]``.

        Variables mapped to ``None`` must not occur.
        """
        n = target.nvars
        out = {}
        for e, c in self.terms.items():
            t = [0] * n
            for i, a in enumerate(e):
                if a:
                    j = index_map[i]
                    if j is None:
                        raise ValueError(f"variable {self.ring.vars[i]} has no image")
                    t[j] += a
            out[tuple(t)] = c
        if target.char != self.ring.char:
            raise ValueError("cannot move polynomials between fields")
        return Poly(target, out)

    # -- printing -------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    ring = f.ring
    parts = []
    for e, c in f.sorted_terms():
        c = ring.field.signed(c)
        neg = c < 0
        a = -c if neg else c
        mono = "*".join(
            ring.vars[i] if k == 1 else f"{ring.vars[i]}^{k}" for i, k in enumerate(e) if k
        )
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()/]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            if op == "/":
                raise ParseError("division is not allowed in polynomial input", start)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, got {t[1] or 'end of input'!r}", t[2])

    def expr(self) -> Poly:
        f = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Poly:
        f = self.factor()
        while self.peek()[1] == "*":
            self.take()
            f = f * self.factor()
        return f

    def factor(self) -> Poly:
        t = self.peek()
        if t[1] in ("+", "-"):
            self.take()
            f = self.factor()
            return -f if t[1] == "-" else f
        f = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            k = self.take()
            if k[0] != "int":
                raise ParseError("exponent must be a non-negative integer", k[2])
            e = int(k[1])
            if e > MAX_EXP:
                raise ParseError("exponent exceeds 2^16", k[2])
            f = f ** e
        return f

    def atom(self) -> Poly:
        t = self.take()
        kind, val, pos = t
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if val == "(":
            f = self.expr()
            self.expect(")")
            return f
        raise ParseError(f"unexpected token {val or 'end of input'!r}", pos)


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    parser = _Parser(ring, text)
    if parser.peek()[0] == "end":
        raise ParseError("empty polynomial", 0)
    f = parser.expr()
    t = parser.peek()
    if t[0] != "end":
        raise ParseError(f"unexpected token {t[1]!r}", t[2])
    return f


# -- matrices ------------------------------------------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    """Matrix of polynomials stored by columns.

    ``row_degrees`` are the degrees of the target basis; a column is
    homogeneous of degree ``deg(entry_i) + row_degrees[i]`` for every nonzero
    entry.  ``col_degrees`` is ``None`` when some column is not homogeneous.
    """

    ring: PolyRing
    nrows: int
    columns: tuple[tuple[Poly, ...], ...]
    row_degrees: tuple[int, ...] = field(default=None)
    col_degrees: tuple[int, ...] | None = field(default=None)

    def __post_init__(self):
        for col in self.columns:
            if len(col) != self.nrows:
                raise ValueError("ragged matrix")
        if self.row_degrees is None:
            object.__setattr__(self, "row_degrees", (0,) * self.nrows)
        if self.col_degrees is None:
            degs = column_degrees(self.columns, self.row_degrees)
            object.__setattr__(self, "col_degrees", degs)

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence[Poly]], row_degrees=None):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        cols = tuple(tuple(rows[i][j] for i in range(nrows)) for j in range(ncols))
        return cls(ring, nrows, cols, tuple(row_degrees) if row_degrees else None)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def graded(self) -> bool:
        return self.col_degrees is not None

    def entry(self, i: int, j: int) -> Poly:
        return self.columns[j][i]

    def rows(self) -> list[list[Poly]]:
        return [[c[i] for c in self.columns] for i in range(self.nrows)]

    def transpose(self) -> "PolyMatrix":
        rd = tuple(-d for d in self.col_degrees) if self.graded else None
        cols = tuple(tuple(col[i] for col in self.columns) for i in range(self.nrows))
        return PolyMatrix(self.ring, self.ncols, cols, rd)

    def is_zero(self) -> bool:
        return all(not f for col in self.columns for f in col)

    def __str__(self):
        rows = self.rows()
        return "\n".join("[" + ", ".join(str(f) for f in r) + "]" for r in rows) or "[]"


def vector_degree(col: Sequence[Poly], row_degrees: Sequence[int]) -> int | None:
    """Degree of a homogeneous vector; ``None`` if inhomogeneous, 0 if zero."""
    deg = None
    for f, rd in zip(col, row_degrees):
        if not f.terms:
            continue
        md = f.ring.mono_degree
        for e in f.terms:
            d = md(e) + rd
            if deg is None:
                deg = d
            elif d != deg:
                return None
    return 0 if deg is None else deg


def column_degrees(columns, row_degrees) -> tuple[int, ...] | None:
    degs = []
    for col in columns:
        d = vector_degree(col, row_degrees)
        if d is None:
            return None
        degs.append(d)
    return tuple(degs)
