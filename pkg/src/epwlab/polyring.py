"""Sparse multivariate polynomials over Q, polynomial matrices and ideals.

Terms are stored in a dict ``exponent tuple -> Fraction`` with no zero
coefficients.  The serialization order is graded-lexicographic with the
declared variable order (``x0 > x1 > ...``), descending.

Hilbert functions come from Macaulay matrices; large ranks are delegated to
FLINT's exact integer matrices, small ones use the in-house elimination.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import exactnum
from .errors import BadDimension, FitFailed, NotDivisible, ZeroPolynomial
from .exactnum import QMatrix, format_rational, parse_rational


def grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Polynomial with rational coefficients in a fixed ordered variable list."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms=None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        if terms:
            for exp, c in dict(terms).items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise BadDimension(f"exponent {exp} does not match {n} variables")
                c = Fraction(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def const(cls, vars, c):
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def var(cls, vars, i):
        vars = tuple(vars)
        if isinstance(i, str):
            i = vars.index(i)
        exp = [0] * len(vars)
        exp[i] = 1
        return cls(vars, {tuple(exp): 1})

    @classmethod
    def gens(cls, vars):
        return [cls.var(vars, i) for i in range(len(tuple(vars)))]

    @classmethod
    def linear(cls, vars, coeffs, const=0):
        """Polynomial sum(coeffs[i] * vars[i]) + const."""
        vars = tuple(vars)
        n = len(vars)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        if const:
            terms[(0,) * n] = const
        return cls(vars, terms)

    @classmethod
    def _raw(cls, vars, terms):
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # basic queries
    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def coeff(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise BadDimension(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        return MultiPoly.const(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MultiPoly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            if not c:
                return MultiPoly.zero(self.vars)
            return MultiPoly._raw(self.vars, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.vars, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = MultiPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # calculus and evaluation
    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise BadDimension("point has wrong length")
        point = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def partial(self, i) -> "MultiPoly":
        if isinstance(i, str):
            i = self.vars.index(i)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return MultiPoly._raw(self.vars, t)

    def gradient(self):
        return [self.partial(i) for i in range(self.nvars)]

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable i by images[i] (all images share a variable list)."""
        if len(images) != self.nvars:
            raise BadDimension("need one image per variable")
        new_vars = images[0].vars if images else ()
        cache = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        out = MultiPoly.zero(new_vars)
        for e, c in self.terms.items():
            term = MultiPoly.const(new_vars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def with_vars(self, new_vars: Sequence[str]) -> "MultiPoly":
        """Embed into a larger variable list containing all current variables."""
        new_vars = tuple(new_vars)
        idx = [new_vars.index(v) for v in self.vars]
        t = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in zip(idx, e):
                ne[i] = k
            t[tuple(ne)] = c
        return MultiPoly._raw(new_vars, t)

    def content_scale(self) -> Fraction:
        """The scalar s such that s*p has coprime integer coefficients, positive leading coefficient."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial")
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, int(c * den))
        s = Fraction(den, g)
        if self.leading_term()[1] < 0:
            s = -s
        return s

    # serialization
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            else:
                body = format_rational(a)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly({list(self.vars)}, {str(self)!r})"

    def to_json(self) -> dict:
        return {"vars": list(self.vars),
                "terms": [{"exp": list(e), "coeff": format_rational(c)} for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj) -> "MultiPoly":
        return cls(obj["vars"], {tuple(t["exp"]): parse_rational(t["coeff"]) for t in obj["terms"]})

    @classmethod
    def parse(cls, text: str, vars: Sequence[str]) -> "MultiPoly":
        """Parse the human-readable rendering, e.g. ``5/2*x0^2*x3 - x5^6``."""
        vars = tuple(vars)
        index = {v: i for i, v in enumerate(vars)}
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        out = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            coeff = Fraction(1)
            exp = [0] * len(vars)
            for factor in body.split("*"):
                if factor in index or "^" in factor:
                    name, _, k = factor.partition("^")
                    if name not in index:
                        raise ValueError(f"unknown variable {name!r}")
                    exp[index[name]] += int(k) if k else 1
                else:
                    coeff *= Fraction(factor)
            if sign == "-":
                coeff = -coeff
            key = tuple(exp)
            out[key] = out.get(key, 0) + coeff
        return cls(vars, out)


def normalize(p: MultiPoly) -> MultiPoly:
    """Coprime integer coefficients with positive graded-lex leading coefficient."""
    return p * p.content_scale()


def exact_divide(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Quotient q with num = q*den; NotDivisible if the division leaves a remainder."""
    if den.is_zero():
        raise ZeroPolynomial("division by zero polynomial")
    den = num._coerce(den)
    if len(den.terms) == 1:
        (de, dc), = den.terms.items()
        t = {}
        for e, c in num.terms.items():
            q = tuple(a - b for a, b in zip(e, de))
            if min(q, default=0) < 0:
                raise NotDivisible(f"{num} is not divisible by {den}")
            t[q] = c / dc
        return MultiPoly._raw(num.vars, t)
    lde, ldc = den.leading_term()
    rem = dict(num.terms)
    quot = {}
    while rem:
        e = max(rem, key=grlex_key)
        c = rem[e]
        q = tuple(a - b for a, b in zip(e, lde))
        if min(q) < 0:
            raise NotDivisible(f"{num} is not divisible by {den}")
        qc = c / ldc
        quot[q] = qc
        for de, dc in den.terms.items():
            k = tuple(a + b for a, b in zip(q, de))
            v = rem.get(k, 0) - qc * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return MultiPoly._raw(num.vars, quot)


class PolyMatrix:
    """Matrix of MultiPoly entries over one shared variable list."""

    __slots__ = ("vars", "rows", "cols", "entries")

    def __init__(self, vars, rows, cols, entries):
        self.vars = tuple(vars)
        entries = [e if isinstance(e, MultiPoly) else MultiPoly.const(self.vars, e) for e in entries]
        if len(entries) != rows * cols:
            raise BadDimension("entry count mismatch")
        for e in entries:
            if e.vars != self.vars:
                raise BadDimension("entries must share the variable list")
        self.rows, self.cols, self.entries = rows, cols, tuple(entries)

    @classmethod
    def from_rows(cls, vars, rows):
        rows = [list(r) for r in rows]
        return cls(vars, len(rows), len(rows[0]) if rows else 0, [x for r in rows for x in r])

    @classmethod
    def from_qmatrix(cls, vars, m: QMatrix):
        return cls(vars, m.rows, m.cols, [MultiPoly.const(vars, x) for x in m._data])

    @classmethod
    def parse(cls, vars, rows: Sequence[Sequence[str]]):
        return cls.from_rows(vars, [[MultiPoly.parse(str(x), vars) for x in r] for r in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.vars == other.vars
                and (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries)

    def transpose(self):
        return PolyMatrix(self.vars, self.cols, self.rows,
                          [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def is_symmetric(self):
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise BadDimension("shape mismatch")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                s = MultiPoly.zero(self.vars)
                for k in range(self.cols):
                    a, b = self[i, k], other[k, j]
                    if a.terms and b.terms:
                        s = s + a * b
                out.append(s)
        return PolyMatrix(self.vars, self.rows, other.cols, out)

    def __sub__(self, other):
        return PolyMatrix(self.vars, self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __add__(self, other):
        return PolyMatrix(self.vars, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def scale(self, c):
        return PolyMatrix(self.vars, self.rows, self.cols, [a * c for a in self.entries])

    def apply(self, vec: Sequence[MultiPoly]):
        return [sum((self[i, j] * vec[j] for j in range(self.cols)), MultiPoly.zero(self.vars))
                for i in range(self.rows)]

    def evaluate(self, point) -> QMatrix:
        return QMatrix(self.rows, self.cols, [e.evaluate(point) for e in self.entries])

    def partial(self, i) -> "PolyMatrix":
        return PolyMatrix(self.vars, self.rows, self.cols, [e.partial(i) for e in self.entries])

    def submatrix(self, rows, cols):
        return PolyMatrix(self.vars, len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def minor_matrix(self, del_rows, del_cols):
        rows = [i for i in range(self.rows) if i not in set(del_rows)]
        cols = [j for j in range(self.cols) if j not in set(del_cols)]
        return self.submatrix(rows, cols)

    def with_vars(self, new_vars):
        return PolyMatrix(new_vars, self.rows, self.cols, [e.with_vars(new_vars) for e in self.entries])

    def to_json(self):
        return {"vars": list(self.vars), "rows": self.rows, "cols": self.cols,
                "entries": [e.to_json()["terms"] for e in self.entries]}

    @classmethod
    def from_json(cls, obj):
        vars = obj["vars"]
        ents = []
        for e in obj["entries"]:
            if isinstance(e, str):
                ents.append(MultiPoly.parse(e, vars))
            else:
                ents.append(MultiPoly(vars, {tuple(t["exp"]): parse_rational(t["coeff"]) for t in e}))
        return cls(vars, int(obj["rows"]), int(obj["cols"]), ents)


# --- determinants -----------------------------------------------------------

def _packed_entries(m: PolyMatrix):
    """Integer rows (per-row denominators cleared) with exponents packed into ints."""
    maxdeg = 0
    for i in range(m.rows):
        maxdeg += max((e.degree() for e in m.row(i)), default=0) if any(e.terms for e in m.row(i)) else 0
    bits = max(1, maxdeg.bit_length()) + 1
    n = len(m.vars)
    shifts = [bits * k for k in range(n)]
    rows, scale = [], Fraction(1)
    for i in range(m.rows):
        den = 1
        for e in m.row(i):
            for c in e.terms.values():
                den = den * c.denominator // math.gcd(den, c.denominator)
        scale *= den
        prow = []
        for e in m.row(i):
            d = {}
            for exp, c in e.terms.items():
                d[sum(k << s for k, s in zip(exp, shifts))] = int(c * den)
            prow.append(d)
        rows.append(prow)
    return rows, scale, bits


def _unpack(key, n, bits):
    mask = (1 << bits) - 1
    return tuple((key >> (bits * k)) & mask for k in range(n))


def poly_det(m: PolyMatrix) -> MultiPoly:
    """Determinant by Laplace expansion memoized over column subsets.

    Rows are consumed top to bottom; after k rows the table maps each
    k-subset of columns (as a bitmask) to the minor on those columns.
    """
    if m.rows != m.cols:
        raise BadDimension("determinant of a non-square matrix")
    d = m.rows
    n = len(m.vars)
    if d == 0:
        return MultiPoly.const(m.vars, 1)
    rows, scale, bits = _packed_entries(m)
    level = {0: {0: 1}}
    for k in range(d):
        row = rows[k]
        nxt = {}
        for mask, minor in level.items():
            if not minor:
                continue
            for j in range(d):
                if mask >> j & 1:
                    continue
                entry = row[j]
                if not entry:
                    continue
                # expanding along the newest row: the sign counts used columns right of j
                higher = bin(mask >> (j + 1)).count("1")
                sign = -1 if higher & 1 else 1
                newmask = mask | (1 << j)
                acc = nxt.get(newmask)
                if acc is None:
                    acc = nxt[newmask] = {}
                for ke, ce in entry.items():
                    cs = ce * sign
                    for km, cm in minor.items():
                        key = ke + km
                        v = acc.get(key, 0) + cs * cm
                        if v:
                            acc[key] = v
                        else:
                            del acc[key]
        level = nxt
    full = level.get((1 << d) - 1, {})
    terms = {_unpack(k, n, bits): Fraction(c) / scale for k, c in full.items()}
    return MultiPoly(m.vars, terms)


def minor(m: PolyMatrix, del_rows, del_cols) -> MultiPoly:
    return poly_det(m.minor_matrix(del_rows, del_cols))


def adjugate(m: PolyMatrix) -> PolyMatrix:
    """Cofactor matrix: entry (i, j) is (-1)^(i+j) times the minor deleting row j, column i."""
    if m.rows != m.cols:
        raise BadDimension("adjugate of a non-square matrix")
    d = m.rows
    if d == 1:
        return PolyMatrix(m.vars, 1, 1, [MultiPoly.const(m.vars, 1)])
    out = []
    for i in range(d):
        for j in range(d):
            c = minor(m, [j], [i])
            out.append(c if (i + j) % 2 == 0 else -c)
    return PolyMatrix(m.vars, d, d, out)


def numeric_adjugate(m: QMatrix) -> QMatrix:
    d = m.rows
    if d == 1:
        return QMatrix(1, 1, [1])
    out = []
    for i in range(d):
        for j in range(d):
            rows = [r for r in range(d) if r != j]
            cols = [c for c in range(d) if c != i]
            v = exactnum.det_exact(m.submatrix(rows, cols))
            out.append(v if (i + j) % 2 == 0 else -v)
    return QMatrix(d, d, out)


# --- ideals and Hilbert functions ------------------------------------------

@dataclass
class Ideal:
    vars: tuple
    gens: list
    projective: bool = True

    def __post_init__(self):
        self.vars = tuple(self.vars)
        self.gens = list(self.gens)
        for g in self.gens:
            if g.vars != self.vars:
                raise BadDimension("generator variables differ from ideal variables")
            if self.projective and not g.is_homogeneous():
                raise BadDimension(f"non-homogeneous generator {g} in a projective ideal")

    def evaluate(self, point):
        return [g.evaluate(point) for g in self.gens]

    def vanishes_at(self, point) -> bool:
        return not any(self.evaluate(point))

    def to_json(self):
        return {"vars": list(self.vars), "gens": [g.to_json() for g in self.gens]}

    @classmethod
    def from_json(cls, obj):
        gens = [MultiPoly.from_json(g) for g in obj["gens"]]
        vars = obj.get("vars") or (gens[0].vars if gens else ())
        return cls(vars, gens)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


@dataclass
class HilbertProfile:
    values: list = field(default_factory=list)
    fitted_dim: int | None = None
    fitted_degree: int | None = None


def monomials(n: int, d: int):
    """Exponent tuples of degree d in n variables, graded-lex descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def coefficient_matrix(polys: Sequence[MultiPoly], monos=None):
    """Rows of coefficients of the given polynomials over a monomial list."""
    if monos is None:
        seen = set()
        for p in polys:
            seen.update(p.terms)
        monos = sorted(seen, key=grlex_key, reverse=True)
    index = {e: i for i, e in enumerate(monos)}
    rows = []
    for p in polys:
        r = [Fraction(0)] * len(monos)
        for e, c in p.terms.items():
            r[index[e]] = c
        rows.append(r)
    return QMatrix(len(rows), len(monos), [x for r in rows for x in r]), monos


def span_rank(polys: Sequence[MultiPoly]) -> int:
    if not polys:
        return 0
    return exactnum.rank(coefficient_matrix(polys)[0])


def same_span(p1: Sequence[MultiPoly], p2: Sequence[MultiPoly]) -> bool:
    m, monos = coefficient_matrix(list(p1) + list(p2))
    a = m.select_rows(range(len(p1)))
    b = m.select_rows(range(len(p1), len(p1) + len(p2)))
    return exactnum.same_rowspace(a, b)


# Matrices with at most this many entries are ranked in pure Python.
SMALL_RANK_ENTRIES = 4000


def integer_rank(rows: list, ncols: int) -> int:
    """Exact rank of an integer matrix given as lists."""
    if not rows or not ncols:
        return 0
    if len(rows) * ncols <= SMALL_RANK_ENTRIES:
        return exactnum._bareiss([list(r) for r in rows], ncols)[0]
    import flint
    m = flint.fmpz_mat(rows)
    # fraction-free elimination is markedly faster along the shorter side
    return (m.transpose() if len(rows) > ncols else m).rank()


def macaulay_rows(I: Ideal, d: int):
    n = len(I.vars)
    monos = monomials(n, d)
    index = {e: i for i, e in enumerate(monos)}
    rows = []
    for g in I.gens:
        if g.is_zero():
            continue
        dg = g.degree()
        if dg > d:
            continue
        den = 1
        for c in g.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        gi = [(e, int(c * den)) for e, c in g.terms.items()]
        for m in monomials(n, d - dg):
            r = [0] * len(monos)
            for e, c in gi:
                r[index[tuple(a + b for a, b in zip(e, m))]] = c
            rows.append(r)
    return rows, len(monos)


def hilbert_function(I: Ideal, d: int) -> int:
    """Monomials of degree d minus the rank of the degree-d Macaulay matrix."""
    if d < 0:
        return 0
    rows, nmon = macaulay_rows(I, d)
    return nmon - integer_rank(rows, nmon)


def _interpolate(points):
    """Coefficients (low to high) of the polynomial through the given (x, y) pairs."""
    n = len(points)
    m = QMatrix.from_rows([[Fraction(x) ** k for k in range(n)] for x, _ in points], n)
    return exactnum.solve_right(m, [Fraction(y) for _, y in points])


def hilbert_fit(I: Ideal, window: Iterable[int] = range(2, 7)) -> tuple:
    """(dimension, degree) of the projective scheme from HF interpolated on the window."""
    window = list(window)
    pts = [(d, hilbert_function(I, d)) for d in window]
    return _fit_profile(pts)


def _fit_profile(pts):
    coeffs = _interpolate(pts)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise FitFailed("Hilbert function vanishes on the window (empty scheme)")
    dim = len(coeffs) - 1
    if dim >= len(pts) - 1:
        raise FitFailed(f"no redundant point confirms the fit on {pts}")
    deg = coeffs[-1] * math.factorial(dim)
    if deg.denominator != 1 or deg <= 0:
        raise FitFailed(f"leading coefficient {coeffs[-1]} is not a valid degree")
    return dim, int(deg)


def hilbert_profile(I: Ideal, window: Iterable[int] = range(2, 7)) -> HilbertProfile:
    pts = [(d, hilbert_function(I, d)) for d in window]
    prof = HilbertProfile(values=pts)
    try:
        prof.fitted_dim, prof.fitted_degree = _fit_profile(pts)
    except FitFailed:
        pass
    return prof


@dataclass(frozen=True)
class Empty:
    degree: int


class Inconclusive:
    def __repr__(self):
        return "Inconclusive"

    def __eq__(self, other):
        return isinstance(other, Inconclusive)

    def __hash__(self):
        return 0


def is_empty_projective(I: Ideal, dmax: int = 6):
    """Empty(d) if HF(d) = 0 for some d <= dmax, else Inconclusive."""
    for d in range(0, dmax + 1):
        if hilbert_function(I, d) == 0:
            return Empty(d)
    return Inconclusive()


def single_point_degree(I: Ideal, dmax: int = 6):
    """Smallest d >= max generator degree with HF(d) = HF(d+1) = 1, or None.

    By Gotzmann persistence this certifies that the projective scheme is a
    single reduced point.
    """
    start = max((g.degree() for g in I.gens), default=1)
    prev = hilbert_function(I, start)
    for d in range(start, dmax + 1):
        cur = hilbert_function(I, d + 1)
        if prev == 1 and cur == 1:
            return d
        prev = cur
    return None


def jacobian(I: Ideal) -> PolyMatrix:
    return PolyMatrix(I.vars, len(I.gens), len(I.vars), [g.partial(i) for g in I.gens for i in range(len(I.vars))])


def jacobian_rank_at(I: Ideal, point) -> int:
    return exactnum.rank(jacobian(I).evaluate(point))


def rational_roots(coeffs: Sequence) -> list:
    """Rational roots of a univariate polynomial given low-to-high coefficients."""
    import flint
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    p = flint.fmpz_poly([int(c * den) for c in coeffs])
    roots = []
    for fac, _ in p.factor()[1]:
        if fac.degree() == 1:
            a, b = int(fac[1]), int(fac[0])
            roots.append(Fraction(-b, a))
    return sorted(set(roots))
