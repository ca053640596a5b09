"""Exterior algebra of Q^5 and Q^6 in the lexicographic subset basis.

A k-vector is stored by its coordinates on e_I, I running over k-subsets of
range(n) in lexicographic order (012 < 013 < ... < 345).  The six-dimensional
space carries indices 0..5; the five-dimensional space V0 uses 0..4 for its
own chosen basis.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from . import exactnum
from .errors import BadDimension, GradeOverflow, ZeroVector
from .exactnum import QMatrix, format_rational, parse_rational


@lru_cache(maxsize=None)
def subsets(n: int, k: int) -> tuple:
    return tuple(itertools.combinations(range(n), k))


@lru_cache(maxsize=None)
def subset_index(n: int, k: int) -> dict:
    return {s: i for i, s in enumerate(subsets(n, k))}


def merge_sign(a: Sequence[int], b: Sequence[int]) -> int:
    """Sign of e_a ^ e_b relative to e_(a u b); 0 if they overlap."""
    if set(a) & set(b):
        return 0
    inv = sum(1 for x in a for y in b if x > y)
    return -1 if inv & 1 else 1


@lru_cache(maxsize=None)
def _wedge_table(n: int, k: int, l: int):
    """For each (i, j) basis pair: (target index, sign) or None."""
    sa, sb = subsets(n, k), subsets(n, l)
    idx = subset_index(n, k + l)
    table = {}
    for i, a in enumerate(sa):
        for j, b in enumerate(sb):
            s = merge_sign(a, b)
            if s:
                table[(i, j)] = (idx[tuple(sorted(a + b))], s)
    return table


class AltK:
    """A homogeneous element of the exterior algebra of Q^n."""

    __slots__ = ("ambient", "grade", "coords")

    def __init__(self, ambient: int, grade: int, coords: Sequence):
        if ambient not in (5, 6):
            raise BadDimension("ambient dimension must be 5 or 6")
        if not 0 <= grade <= ambient:
            raise GradeOverflow(f"grade {grade} out of range for ambient {ambient}")
        coords = tuple(Fraction(x) for x in coords)
        if len(coords) != len(subsets(ambient, grade)):
            raise BadDimension("wrong number of coordinates")
        self.ambient, self.grade, self.coords = ambient, grade, coords

    @classmethod
    def zero(cls, ambient, grade):
        return cls(ambient, grade, [0] * len(subsets(ambient, grade)))

    @classmethod
    def basis(cls, ambient, indices: Sequence[int], coeff=1):
        """coeff * e_{i1} ^ ... ^ e_{ik}, indices in any order."""
        idx = tuple(indices)
        if len(set(idx)) < len(idx):
            return cls.zero(ambient, len(idx))
        srt = tuple(sorted(idx))
        perm_inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
        c = [0] * len(subsets(ambient, len(idx)))
        c[subset_index(ambient, len(idx))[srt]] = -coeff if perm_inv & 1 else coeff
        return cls(ambient, len(idx), c)

    @classmethod
    def vector(cls, coords: Sequence):
        return cls(len(coords), 1, coords)

    def __add__(self, other):
        self._check(other)
        return AltK(self.ambient, self.grade, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return AltK(self.ambient, self.grade, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AltK(self.ambient, self.grade, [-a for a in self.coords])

    def __mul__(self, c):
        c = Fraction(c)
        return AltK(self.ambient, self.grade, [c * a for a in self.coords])

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        return (isinstance(other, AltK) and self.ambient == other.ambient
                and self.grade == other.grade and self.coords == other.coords)

    def __hash__(self):
        return hash((self.ambient, self.grade, self.coords))

    def __repr__(self):
        terms = [f"{format_rational(c)}*e{''.join(map(str, s))}"
                 for c, s in zip(self.coords, subsets(self.ambient, self.grade)) if c]
        return f"AltK({self.ambient},{self.grade}: {' + '.join(terms) or '0'})"

    def is_zero(self):
        return not any(self.coords)

    def _check(self, other):
        if (self.ambient, self.grade) != (other.ambient, other.grade):
            raise BadDimension("mismatched exterior powers")

    def to_json(self):
        return {"ambient": self.ambient, "grade": self.grade,
                "coords": [format_rational(x) for x in self.coords]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["ambient"]), int(obj["grade"]), [parse_rational(x) for x in obj["coords"]])


def wedge(a: AltK, b: AltK) -> AltK:
    if a.ambient != b.ambient:
        raise BadDimension("different ambient spaces")
    n, k, l = a.ambient, a.grade, b.grade
    if k + l > n:
        raise GradeOverflow(f"grade {k + l} exceeds ambient dimension {n}")
    out = [Fraction(0)] * len(subsets(n, k + l))
    table = _wedge_table(n, k, l)
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j, y in enumerate(b.coords):
            if y:
                hit = table.get((i, j))
                if hit:
                    out[hit[0]] += hit[1] * x * y
    return AltK(n, k + l, out)


def wedge_all(*items: AltK) -> AltK:
    out = items[0]
    for x in items[1:]:
        out = wedge(out, x)
    return out


def vol6(a: AltK) -> Fraction:
    if a.ambient != 6 or a.grade != 6:
        raise BadDimension("vol6 needs a top-degree element of the 6-dimensional space")
    return a.coords[0]


def vol5(a: AltK) -> Fraction:
    if a.ambient != 5 or a.grade != 5:
        raise BadDimension("vol5 needs a top-degree element of the 5-dimensional space")
    return a.coords[0]


def symp(a: AltK, b: AltK) -> Fraction:
    """The symplectic pairing vol6(a ^ b) on 3-vectors of Q^6."""
    if a.ambient != 6 or a.grade != 3 or b.ambient != 6 or b.grade != 3:
        raise BadDimension("symp pairs 3-vectors of the 6-dimensional space")
    return vol6(wedge(a, b))


@lru_cache(maxsize=None)
def symp_matrix() -> QMatrix:
    """Gram matrix J of symp on the lex basis of the third exterior power of Q^6."""
    s = subsets(6, 3)
    entries = [merge_sign(a, b) for a in s for b in s]
    return QMatrix(20, 20, entries)


@lru_cache(maxsize=None)
def pairing_matrix() -> QMatrix:
    """10x10 matrix P with dual_pair_5(a, w) = a^T P w (2-vectors against 3-vectors of V0)."""
    s2, s3 = subsets(5, 2), subsets(5, 3)
    return QMatrix(10, 10, [merge_sign(a, b) for a in s2 for b in s3])


def dual_pair_5(a: AltK, w: AltK) -> Fraction:
    if a.ambient != 5 or w.ambient != 5 or a.grade != 2 or w.grade != 3:
        raise BadDimension("dual_pair_5 pairs a 2-vector with a 3-vector of V0")
    return vol5(wedge(a, w))


def wedge_matrix(v: AltK, k: int) -> QMatrix:
    """Matrix of x -> v ^ x from grade k to grade k + v.grade (acting on row vectors: x M)."""
    n = v.ambient
    rows = []
    for s in subsets(n, k):
        rows.append(list(wedge(v, AltK.basis(n, s)).coords))
    return QMatrix.from_rows(rows, len(subsets(n, k + v.grade)))


def F_basis(v: AltK) -> QMatrix:
    """Rows spanning F_v = {a in third exterior power : v ^ a = 0}."""
    if v.grade != 1 or v.ambient != 6:
        raise BadDimension("F_v needs a vector of Q^6")
    if v.is_zero():
        raise ZeroVector("F_v is undefined for v = 0")
    # rows x with x W = 0  <=>  W^T x^T = 0
    return exactnum.kernel_basis(wedge_matrix(v, 3).transpose())


def contract(f: Sequence, a: AltK) -> AltK:
    """Interior product of a linear form f (coordinates on the dual basis) with a."""
    n, k = a.ambient, a.grade
    if k == 0:
        raise GradeOverflow("cannot contract a scalar")
    out = [Fraction(0)] * len(subsets(n, k - 1))
    idx = subset_index(n, k - 1)
    for c, s in zip(a.coords, subsets(n, k)):
        if not c:
            continue
        for pos, i in enumerate(s):
            if f[i]:
                rest = s[:pos] + s[pos + 1:]
                sgn = -1 if pos & 1 else 1
                out[idx[rest]] += sgn * Fraction(f[i]) * c
    return AltK(n, k - 1, out)


def contract_multi(dual_subset: Sequence[int], a: AltK) -> AltK:
    """Contract a by the dual basis multivector e*_{j1} ... e*_{jm}, innermost last."""
    out = a
    n = a.ambient
    for j in reversed(tuple(dual_subset)):
        f = [0] * n
        f[j] = 1
        out = contract(f, out)
    return out


class Subspace:
    """A linear subspace of Q^n given by independent basis rows."""

    def __init__(self, basis: QMatrix):
        self.basis = exactnum.row_basis(basis) if exactnum.rank(basis) < basis.rows else basis

    @property
    def dim(self):
        return self.basis.rows

    @property
    def ambient(self):
        return self.basis.cols

    def vectors(self):
        return [AltK.vector(self.basis.row(i)) for i in range(self.dim)]

    def contains(self, vec: Sequence) -> bool:
        return exactnum.in_rowspace(self.basis, vec)

    def intersect(self, other: "Subspace") -> "Subspace":
        return Subspace(exactnum.rowspace_intersection(self.basis, other.basis))

    def __eq__(self, other):
        return isinstance(other, Subspace) and exactnum.same_rowspace(self.basis, other.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def top_wedge(self) -> AltK:
        return wedge_all(*self.vectors())


def support(a: AltK) -> Subspace:
    """Smallest subspace U with a in the k-th exterior power of U."""
    if a.is_zero():
        raise ZeroVector("support of zero")
    n, k = a.ambient, a.grade
    vecs = [contract_multi(s, a).coords for s in subsets(n, k - 1)]
    m = QMatrix.from_rows(vecs, n)
    return Subspace(exactnum.row_basis(m))


def is_decomposable(a: AltK) -> bool:
    return support(a).dim == a.grade


def embed(u: Sequence, frame: Sequence[Sequence]) -> list:
    """Coordinates of sum_i u[i] * frame[i]."""
    n = len(frame[0])
    out = [Fraction(0)] * n
    for c, f in zip(u, frame):
        if c:
            for j, x in enumerate(f):
                out[j] += c * x
    return out


def power_matrix(frame: Sequence[Sequence], k: int) -> QMatrix:
    """Matrix whose rows are the k-th exterior powers of the frame's basis subsets.

    Row I is frame[i1] ^ ... ^ frame[ik] in the ambient lex basis, so a
    k-vector with frame coordinates c maps to c @ power_matrix(frame, k).
    """
    vecs = [AltK.vector(list(f)) for f in frame]
    rows = [list(wedge_all(*[vecs[i] for i in s]).coords) if k else [1] for s in subsets(len(frame), k)]
    return QMatrix.from_rows(rows, len(subsets(len(frame[0]), k)))
