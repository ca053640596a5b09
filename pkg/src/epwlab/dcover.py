"""Double covers attached to symmetric polynomial matrices.

For a symmetric d x d matrix M the cover is cut out by the entries of M xi
and of xi xi^T - M^c, where M^c is the adjugate.  This module builds that
ideal, the product table, the associativity witnesses, corank strata,
first-order germ data and the pointwise smoothness test, together with the
universal corank-3 model and its flop.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exactnum, polyring
from .errors import NotSymmetric
from .exactnum import QMatrix, SeededRng
from .polyring import Ideal, MultiPoly, PolyMatrix


class SymDet:
    """A symmetric matrix of polynomials."""

    def __init__(self, M: PolyMatrix):
        if not M.is_symmetric():
            raise NotSymmetric("matrix is not symmetric")
        self.M = M

    @classmethod
    def parse(cls, vars, rows):
        return cls(PolyMatrix.parse(vars, rows))

    @classmethod
    def generic(cls, d: int, prefix: str = "m"):
        """Symmetric matrix with independent variables m_ij (i <= j)."""
        names = [f"{prefix}{i}{j}" for i in range(d) for j in range(i, d)]
        idx = {}
        for n, (i, j) in zip(names, [(i, j) for i in range(d) for j in range(i, d)]):
            idx[(i, j)] = idx[(j, i)] = n
        rows = [[MultiPoly.var(names, idx[(i, j)]) for j in range(d)] for i in range(d)]
        return cls(PolyMatrix.from_rows(names, rows))

    @property
    def vars(self):
        return self.M.vars

    @property
    def d(self):
        return self.M.rows

    def evaluate(self, point) -> QMatrix:
        return self.M.evaluate(point)


@dataclass
class CoverIdeal:
    ideal: Ideal
    xi: tuple

    def to_json(self):
        return {"xi": list(self.xi), **self.ideal.to_json()}


def xi_names(d: int):
    return tuple(f"xi{i + 1}" for i in range(d))


def cover_ideal(S: SymDet) -> CoverIdeal:
    """Entries of M xi followed by the upper-triangular entries of xi xi^T - M^c."""
    if not S.M.is_symmetric():
        raise NotSymmetric("matrix is not symmetric")
    d = S.d
    xi = xi_names(d)
    allv = tuple(S.vars) + xi
    M = S.M.with_vars(allv)
    adj = polyring.adjugate(S.M).with_vars(allv)
    x = [MultiPoly.var(allv, n) for n in xi]
    gens = M.apply(x)
    for i in range(d):
        for j in range(i, d):
            gens.append(x[i] * x[j] - adj[i, j])
    return CoverIdeal(Ideal(allv, gens, projective=False), xi)


def cramer_holds(M: PolyMatrix) -> bool:
    """M M^c = M^c M = det(M) Id, symbolically."""
    adj = polyring.adjugate(M)
    det = polyring.poly_det(M)
    d = M.rows
    ident = PolyMatrix(M.vars, d, d, [det if i == j else MultiPoly.zero(M.vars)
                                       for i in range(d) for j in range(d)])
    return M @ adj == ident and adj @ M == ident


def det_in_cover_ideal(S: SymDet) -> bool:
    """det M = g_1 xi_1 - sum_k M_1k h_k1, with g = M xi and h = xi xi^T - M^c."""
    cov = cover_ideal(S)
    d = S.d
    allv = cov.ideal.vars
    g = cov.ideal.gens[:d]
    h = {}
    it = iter(cov.ideal.gens[d:])
    for i in range(d):
        for j in range(i, d):
            h[(i, j)] = h[(j, i)] = next(it)
    M = S.M.with_vars(allv)
    xi1 = MultiPoly.var(allv, cov.xi[0])
    combo = g[0] * xi1
    for k in range(d):
        combo = combo - M[0, k] * h[(k, 0)]
    return combo == polyring.poly_det(S.M).with_vars(allv)


def product_table(S: SymDet) -> PolyMatrix:
    """Multiplication table of the odd part modulo det M: the adjugate."""
    table = polyring.adjugate(S.M)
    if not table.is_symmetric():
        raise NotSymmetric("adjugate of a symmetric matrix must be symmetric")
    return table


# --- associativity --------------------------------------------------------

# With the minor signs of _witness_sign alone, M X = -(M^c_ij e_k - M^c_jk e_i)
# for every d tested, so the witness carries a global factor -1.
RELATION_SIGN = -1


def _witness_sign(i, j, k, h):
    if h == j:
        return 0
    s = i + k + j + h if h < j else i + k + j + h - 1
    return RELATION_SIGN * (-1 if s % 2 else 1)


def _witness(minor_fn, zero, d, i, j, k):
    if i == k:
        return [zero] * d
    if i > k:
        return [-x for x in _witness(minor_fn, zero, d, k, j, i)]
    X = []
    for h in range(d):
        s = _witness_sign(i, j, k, h)
        X.append(minor_fn([i, k], [j, h]) * s if s else zero)
    return X


def associativity_witness(S: SymDet, i: int, j: int, k: int):
    """(X, residual) with residual = (M^c_ij e_k - M^c_jk e_i) - M X (0-based indices)."""
    d = S.d
    for t in (i, j, k):
        if not 0 <= t < d:
            raise IndexError(f"index {t} out of range for d = {d}")
    zero = MultiPoly.zero(S.vars)
    if d == 2:
        minor_fn = lambda rows, cols: MultiPoly.const(S.vars, 1)
    else:
        minor_fn = lambda rows, cols: polyring.minor(S.M, rows, cols)
    X = _witness(minor_fn, zero, d, i, j, k)
    adj = polyring.adjugate(S.M)
    lhs = [zero] * d
    lhs[k] = lhs[k] + adj[i, j]
    lhs[i] = lhs[i] - adj[j, k]
    MX = S.M.apply(X)
    return X, [a - b for a, b in zip(lhs, MX)]


def associativity_residual_at(M: QMatrix, i: int, j: int, k: int, adj: QMatrix | None = None,
                              cache: dict | None = None) -> list:
    """Numeric residual of the associativity relation for a rational symmetric matrix.

    ``cache`` may be shared between calls on the same M to reuse minors.
    """
    d = M.rows
    adj = adj if adj is not None else polyring.numeric_adjugate(M)
    cache = cache if cache is not None else {}

    def minor_fn(rows, cols):
        if d == 2:
            return Fraction(1)
        key = (tuple(rows), tuple(cols))
        if key not in cache:
            r = [a for a in range(d) if a not in rows]
            c = [b for b in range(d) if b not in cols]
            cache[key] = exactnum.det_exact(M.submatrix(r, c))
        return cache[key]

    X = _witness(minor_fn, Fraction(0), d, i, j, k)
    lhs = [Fraction(0)] * d
    lhs[k] += adj[i, j]
    lhs[i] -= adj[j, k]
    MX = M.apply(X)
    return [a - b for a, b in zip(lhs, MX)]


# --- strata and germs -----------------------------------------------------

def corank_stratum_ideal(S: SymDet, c: int) -> Ideal:
    """All (d+1-c)-minors of M."""
    d = S.d
    if not 1 <= c <= d:
        raise ValueError("corank must lie between 1 and d")
    s = d + 1 - c
    gens, seen = [], set()
    for rows in itertools.combinations(range(d), s):
        for cols in itertools.combinations(range(d), s):
            key = tuple(sorted((rows, cols)))
            if key in seen:
                continue
            seen.add(key)
            m = polyring.poly_det(S.M.submatrix(rows, cols))
            if not m.is_zero() and m not in gens:
                gens.append(m)
    return Ideal(S.vars, gens, projective=False)


@dataclass
class GermData:
    point: tuple
    K_basis: QMatrix
    delta: QMatrix  # rows: coordinate directions; columns: monomials of Sym^2 K^dual

    @property
    def corank(self):
        return self.K_basis.rows


def sym2_pairs(k: int):
    return [(a, b) for a in range(k) for b in range(a, k)]


def restrict_form(B: QMatrix, K: QMatrix) -> list:
    """Coefficients of x -> x^T B x on span(K) in the monomial basis t_a t_b (a <= b)."""
    R = K @ B @ K.transpose()
    return [R[a, b] if a == b else R[a, b] + R[b, a] for a, b in sym2_pairs(K.rows)]


def germ_reduce(S: SymDet, p: Sequence) -> GermData:
    p = tuple(Fraction(x) for x in p)
    K = exactnum.kernel_basis(S.evaluate(p))
    k = K.rows
    rows = []
    for m in range(len(S.vars)):
        if k == 0:
            rows.append([])
            continue
        rows.append(restrict_form(S.M.partial(m).evaluate(p), K))
    delta = QMatrix(len(rows), k * (k + 1) // 2, [x for r in rows for x in r])
    return GermData(p, K, delta)


class Smoothness(enum.Enum):
    SmoothOnCover = "SmoothOnCover"
    SingularOnCover = "SingularOnCover"
    NotOnY = "NotOnY"
    Indeterminate = "Indeterminate"


def det_gradient_at(S: SymDet, p) -> list:
    """Gradient of det M at p via d(det M) = tr(M^c dM)."""
    Mp = S.evaluate(p)
    adj = polyring.numeric_adjugate(Mp)
    out = []
    for m in range(len(S.vars)):
        dM = S.M.partial(m).evaluate(p)
        prod = adj @ dM
        out.append(sum((prod[i, i] for i in range(prod.rows)), Fraction(0)))
    return out


def smoothness_test(S: SymDet, p: Sequence) -> Smoothness:
    Mp = S.evaluate(p)
    corank = S.d - exactnum.rank(Mp)
    if corank == 0:
        return Smoothness.NotOnY
    if corank == 1:
        return Smoothness.SmoothOnCover if any(det_gradient_at(S, p)) else Smoothness.Indeterminate
    if corank == 2:
        g = germ_reduce(S, p)
        return Smoothness.SmoothOnCover if exactnum.rank(g.delta) == 3 else Smoothness.SingularOnCover
    return Smoothness.SingularOnCover


# --- universal corank-3 model -------------------------------------------------

UNIVERSAL_VARS = tuple(f"e{i}{j}" for i in range(1, 4) for j in range(1, 4))


def _generic_square():
    return PolyMatrix(UNIVERSAL_VARS, 3, 3, MultiPoly.gens(UNIVERSAL_VARS))


def axis_vector(xi: PolyMatrix) -> list:
    """Antisymmetric 3x3 matrix -> vector (xi_23, xi_31, xi_12), contraction with the volume."""
    return [xi[1, 2], xi[2, 0], xi[0, 1]]


def universal_quadrics():
    """(2x2 minors of the generic 3x3 matrix, components of the cover equations at (e+e^T, e-e^T)).

    The cover equations are alpha.x and x x^T + adj(alpha); the plus sign comes
    from identifying the antisymmetric part with its axis vector.
    """
    E = _generic_square()
    minors = []
    for rows in itertools.combinations(range(3), 2):
        for cols in itertools.combinations(range(3), 2):
            minors.append(polyring.poly_det(E.submatrix(rows, cols)))
    alpha = E + E.transpose()
    x = axis_vector(E - E.transpose())
    adj = polyring.adjugate(alpha)
    comps = alpha.apply(x)
    for i in range(3):
        for j in range(3):
            comps.append(x[i] * x[j] + adj[i, j])
    return minors, comps


def universal_model_check() -> bool:
    minors, comps = universal_quadrics()
    monos = polyring.monomials(len(UNIVERSAL_VARS), 2)
    a, _ = polyring.coefficient_matrix(minors, monos)
    b, _ = polyring.coefficient_matrix(comps, monos)
    return exactnum.rank(a) == 9 and exactnum.rank(b) == 9 and exactnum.rank(a.vstack(b)) == 9


def tau_universal(mu: QMatrix):
    """mu -> (mu + mu^T, axis vector of mu - mu^T)."""
    s = mu + mu.transpose()
    a = mu - mu.transpose()
    return s, (a[1, 2], a[2, 0], a[0, 1])


def on_universal_cover(alpha: QMatrix, x: Sequence) -> bool:
    """alpha.x = 0 and x x^T + adj(alpha) = 0."""
    if any(alpha.apply(x)):
        return False
    adj = polyring.numeric_adjugate(alpha)
    return all(x[i] * x[j] + adj[i, j] == 0 for i in range(3) for j in range(3))


def flop_identity_check(rng: SeededRng, trials: int = 50, height: int = 10) -> bool:
    """Pointwise check of the small resolutions, the involution and their flop."""
    for _ in range(trials):
        a = rng.nonzero_vector(3, height)
        b = rng.nonzero_vector(3, height)
        mu = QMatrix(3, 1, a) @ QMatrix(1, 3, b)
        mut = mu.transpose()
        s, x = tau_universal(mu)
        # the image of tau lies on the cover, over sigma(mu)
        if not on_universal_cover(s, x) or s != mu + mut:
            return False
        # phi(alpha, x) = (alpha, -x) and phi(tau(mu)) = tau(mu^T)
        s2, x2 = tau_universal(mut)
        if s2 != s or list(x2) != [-c for c in x]:
            return False
        # ([b], a b^T) in X+ maps to ([b], b a^T) in X-: the new point is
        # again of the form a' b'^T with a' proportional to b
        image = QMatrix(3, 1, b) @ QMatrix(1, 3, a)
        if image != mut:
            return False
        if exactnum.rank(QMatrix(3, 1, b).hstack(image)) != 1:
            return False
        # projections commute with the flop: pi_-(image) = phi(pi_+(source))
        if tau_universal(image) != (s, tuple(-c for c in x)):
            return False
        # symmetric rank-one matrices are fixed by the involution
        sym = QMatrix(3, 1, a) @ QMatrix(1, 3, a)
        ss, sx = tau_universal(sym)
        if any(sx) or tau_universal(sym.transpose()) != (ss, sx):
            return False
    return True
