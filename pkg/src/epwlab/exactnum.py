"""Exact rational linear algebra and a reproducible random source.

Matrices are immutable tables of ``fractions.Fraction``.  Ranks and
determinants use fraction-free (Bareiss) elimination on integer rows;
kernels and solutions come from a reduced row echelon form.  In every
elimination the pivot is the first nonzero entry of the current column,
scanning rows in order, so results are reproducible.
"""
from __future__ import annotations

import hashlib
import math
import random
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadDimension, NotInvertible

Rational = Fraction


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or an int / Fraction) into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators; return (int rows, scales)."""
    out, scales = [], []
    for row in rows:
        m = 1
        for x in row:
            d = x.denominator if isinstance(x, Fraction) else 1
            m = m * d // math.gcd(m, d)
        out.append([int(x * m) for x in row])
        scales.append(m)
    return out, scales


def _bareiss(rows, ncols):
    """In-place fraction-free elimination; return (rank, sign, last pivot)."""
    nrows = len(rows)
    r = 0
    prev = 1
    sign = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and rows[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            sign = -sign
        piv = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[c]
            if a == 0:
                for j in range(c + 1, ncols):
                    row[j] = row[j] * piv // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * piv - a * prow[j]) // prev
            row[c] = 0
        prev = piv
        r += 1
    return r, sign, prev


class QMatrix:
    """Dense matrix over Q with row-major Fraction entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        data = tuple(Fraction(x) for x in entries)
        if rows < 0 or cols < 0:
            raise BadDimension("negative dimension")
        if len(data) != rows * cols:
            raise BadDimension(f"expected {rows * cols} entries, got {len(data)}")
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise BadDimension("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise BadDimension("ragged rows")
        return cls(len(rows), cols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self._data[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.shape == other.shape
                and self._data == other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols}, {[format_rational(x) for x in self._data]})"

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows,
                       [self._data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)])

    T = property(transpose)

    def __add__(self, other):
        if self.shape != other.shape:
            raise BadDimension("shape mismatch")
        return QMatrix(self.rows, self.cols, [a + b for a, b in zip(self._data, other._data)])

    def __sub__(self, other):
        if self.shape != other.shape:
            raise BadDimension("shape mismatch")
        return QMatrix(self.rows, self.cols, [a - b for a, b in zip(self._data, other._data)])

    def __neg__(self):
        return QMatrix(self.rows, self.cols, [-a for a in self._data])

    def scale(self, c) -> "QMatrix":
        c = Fraction(c)
        return QMatrix(self.rows, self.cols, [c * a for a in self._data])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise BadDimension(f"cannot multiply {self.shape} by {other.shape}")
        cols_o = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols_o:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return QMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence) -> list:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise BadDimension("vector length mismatch")
        return [sum((a * Fraction(b) for a, b in zip(self.row(i), vec) if a and b), Fraction(0))
                for i in range(self.rows)]

    def vec_mul(self, vec: Sequence) -> list:
        """Row vector times matrix."""
        if len(vec) != self.rows:
            raise BadDimension("vector length mismatch")
        out = [Fraction(0)] * self.cols
        for i, c in enumerate(vec):
            if c:
                c = Fraction(c)
                for j, a in enumerate(self.row(i)):
                    if a:
                        out[j] += c * a
        return out

    def vstack(self, other: "QMatrix") -> "QMatrix":
        if self.rows and other.rows and self.cols != other.cols:
            raise BadDimension("column mismatch")
        cols = self.cols if self.rows else other.cols
        return QMatrix(self.rows + other.rows, cols, self._data + other._data)

    def hstack(self, other: "QMatrix") -> "QMatrix":
        if self.rows != other.rows:
            raise BadDimension("row mismatch")
        return QMatrix.from_rows([list(self.row(i)) + list(other.row(i)) for i in range(self.rows)],
                                 self.cols + other.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        return QMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def select_rows(self, rows: Sequence[int]) -> "QMatrix":
        return self.submatrix(rows, range(self.cols))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_zero(self) -> bool:
        return not any(self._data)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [format_rational(x) for x in self._data]}

    @classmethod
    def from_json(cls, obj: dict) -> "QMatrix":
        return cls(int(obj["rows"]), int(obj["cols"]), [parse_rational(x) for x in obj["entries"]])


def rank(m: QMatrix) -> int:
    """Exact rank by fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows, _ = _integer_rows(m.to_rows())
    return _bareiss(rows, m.cols)[0]


def det_exact(m: QMatrix) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    if m.rows != m.cols:
        raise BadDimension("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    rows, scales = _integer_rows(m.to_rows())
    r, sign, last = _bareiss(rows, n)
    if r < n:
        return Fraction(0)
    return Fraction(sign * last, math.prod(scales))


def rref(m: QMatrix):
    """Reduced row echelon form; return (rows as lists, pivot columns)."""
    a = m.to_rows()
    pivots = []
    r = 0
    for c in range(m.cols):
        p = r
        while p < m.rows and a[p][c] == 0:
            p += 1
        if p == m.rows:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        prow = a[r]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], prow)]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a[:r], pivots


def kernel_basis(m: QMatrix) -> QMatrix:
    """Rows form a basis of the right kernel {x : m x = 0}."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        out.append(v)
    return QMatrix(len(out), m.cols, [x for v in out for x in v])


def left_kernel(m: QMatrix) -> QMatrix:
    """Rows y with y m = 0."""
    return kernel_basis(m.transpose())


def row_basis(m: QMatrix) -> QMatrix:
    """A basis (in reduced echelon form) of the row space."""
    red, _ = rref(m)
    return QMatrix(len(red), m.cols, [x for r in red for x in r])


def rowspace_intersection(m1: QMatrix, m2: QMatrix) -> QMatrix:
    """Basis of rowspace(m1) ∩ rowspace(m2)."""
    if m1.cols != m2.cols:
        raise BadDimension("column mismatch")
    b1, b2 = row_basis(m1), row_basis(m2)
    if b1.rows == 0 or b2.rows == 0:
        return QMatrix(0, m1.cols)
    coeffs = left_kernel(b1.vstack(b2))
    vecs = [b1.vec_mul(coeffs.row(i)[:b1.rows]) for i in range(coeffs.rows)]
    if not vecs:
        return QMatrix(0, m1.cols)
    return row_basis(QMatrix.from_rows(vecs, m1.cols))


def same_rowspace(m1: QMatrix, m2: QMatrix) -> bool:
    r1, r2 = rank(m1), rank(m2)
    return r1 == r2 and rank(m1.vstack(m2)) == r1


def in_rowspace(m: QMatrix, vec: Sequence) -> bool:
    v = QMatrix(1, m.cols, vec)
    return rank(m.vstack(v)) == rank(m)


def solve_right(m: QMatrix, b: Sequence):
    """One solution x of m x = b, or None when inconsistent."""
    aug = m.hstack(QMatrix(m.rows, 1, b))
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return x


def solve_left(m: QMatrix, b: Sequence):
    """One solution y of y m = b, or None."""
    return solve_right(m.transpose(), b)


def inverse(m: QMatrix) -> QMatrix:
    if m.rows != m.cols:
        raise BadDimension("inverse of a non-square matrix")
    n = m.rows
    red, pivots = rref(m.hstack(QMatrix.identity(n)))
    if pivots[:n] != list(range(n)):
        raise NotInvertible("matrix is singular")
    return QMatrix(n, n, [x for r in red for x in r[n:]])


def complement_rows(m: QMatrix) -> QMatrix:
    """Standard basis vectors completing the row space of m to the whole space."""
    b = row_basis(m)
    _, pivots = rref(b)
    pivots = set(pivots)
    rows = [[1 if j == i else 0 for j in range(m.cols)] for i in range(m.cols) if i not in pivots]
    return QMatrix(len(rows), m.cols, [x for r in rows for x in r])


def primitive_vector(vec: Sequence) -> list:
    """Scale a nonzero rational vector to coprime integers with positive first nonzero entry."""
    vec = [Fraction(x) for x in vec]
    nz = [x for x in vec if x]
    if not nz:
        return [Fraction(0)] * len(vec)
    den = 1
    for x in nz:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    sgn = 1 if next(x for x in ints if x) > 0 else -1
    return [Fraction(sgn * x // g) for x in ints]


def integer_rows(m: QMatrix) -> QMatrix:
    """Same row space, each row scaled to primitive integers."""
    return QMatrix.from_rows([primitive_vector(m.row(i)) for i in range(m.rows)], m.cols)


def proportional(u: Sequence, v: Sequence) -> bool:
    """True when u and v span the same line (both nonzero)."""
    return any(u) and any(v) and primitive_vector(u) == primitive_vector(v)


class SeededRng:
    """Reproducible random source built on ``random.Random``.

    ``split()`` derives an independent child stream from the seed and a
    counter, so consumers that split in the same order see the same draws.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed) & (2 ** 64 - 1)
        self._rng = random.Random(self.seed)
        self._children = 0

    def split(self) -> "SeededRng":
        self._children += 1
        h = hashlib.sha256(f"{self.seed}:{self._children}".encode()).digest()
        return SeededRng(int.from_bytes(h[:8], "big"))

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return self._rng.randint(lo, hi)

    def nonzero_integer(self, height: int) -> int:
        while True:
            x = self._rng.randint(-height, height)
            if x:
                return x

    def vector(self, n: int, height: int = 10) -> list:
        return [Fraction(self._rng.randint(-height, height)) for _ in range(n)]

    def nonzero_vector(self, n: int, height: int = 10) -> list:
        while True:
            v = self.vector(n, height)
            if any(v):
                return v

    def matrix(self, rows: int, cols: int, height: int = 10) -> QMatrix:
        return QMatrix(rows, cols, [self._rng.randint(-height, height) for _ in range(rows * cols)])

    def rational(self, height: int = 10) -> Fraction:
        return Fraction(self._rng.randint(-height, height), self._rng.randint(1, height))

    def choice(self, seq):
        return self._rng.choice(seq)

    def symmetric(self, n: int, height: int = 10) -> QMatrix:
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = self._rng.randint(-height, height)
        return QMatrix.from_rows(m, n)
