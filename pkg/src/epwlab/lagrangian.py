"""Lagrangian subspaces of the third exterior power of Q^6 and their constructors.

A Lagrangian is stored as a 10x20 basis matrix.  The graph construction
uses a decomposition V = [v0] + V0: for a symmetric 10x10 matrix Q, the
subspace {v0 ^ a + q(a)} with q = P^T Q is Lagrangian, where P is the
matrix of the pairing between 2-vectors and 3-vectors of V0.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exactnum, exterior, polyring
from .errors import BadDimension, NotSymmetric, SearchExhausted
from .exactnum import QMatrix, SeededRng
from .exterior import AltK, Subspace


@dataclass(frozen=True)
class Lagrangian:
    basis: QMatrix

    def __post_init__(self):
        if self.basis.shape != (10, 20):
            raise BadDimension(f"a Lagrangian basis is 10x20, got {self.basis.shape}")

    def contains(self, vec: Sequence) -> bool:
        return exactnum.in_rowspace(self.basis, vec)

    def to_json(self):
        return {"basis": self.basis.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(QMatrix.from_json(obj["basis"]))

    def sha256(self) -> str:
        text = json.dumps(self.basis.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


@dataclass(frozen=True)
class Decomposition:
    """V = [v0] + V0 with an explicit basis u_1..u_5 of V0."""
    v0: tuple
    V0_basis: QMatrix

    def __post_init__(self):
        object.__setattr__(self, "v0", tuple(Fraction(x) for x in self.v0))
        if len(self.v0) != 6 or self.V0_basis.shape != (5, 6):
            raise BadDimension("a decomposition needs v0 in Q^6 and 5 basis vectors")
        if exactnum.rank(self.frame()) != 6:
            raise BadDimension("v0 and the V0 basis must span Q^6")

    @classmethod
    def standard(cls):
        return cls((1, 0, 0, 0, 0, 0), QMatrix.identity(6).select_rows(range(1, 6)))

    def frame(self) -> QMatrix:
        """6x6 matrix with rows v0, u_1, ..., u_5."""
        return QMatrix(1, 6, self.v0).vstack(self.V0_basis)

    def v0_vec(self) -> AltK:
        return AltK.vector(self.v0)

    def u_rows(self):
        return [self.V0_basis.row(i) for i in range(5)]

    def lift(self, k: int) -> QMatrix:
        """Rows: images of the V0 basis k-vectors in the k-th exterior power of Q^6."""
        return _lift(self, k)

    def v0_wedge_lift2(self) -> QMatrix:
        """Row a is v0 ^ (image of the a-th basis 2-vector of V0)."""
        return _v0_lift2(self)

    def top_scale(self) -> Fraction:
        """vol6(v0 ^ u_1 ^ ... ^ u_5)."""
        return exactnum.det_exact(self.frame())

    def split(self, vec: Sequence):
        """(t, c) with vec = t v0 + sum c_m u_m."""
        sol = exactnum.solve_left(self.frame(), vec)
        return sol[0], sol[1:]

    def to_V(self, c: Sequence) -> list:
        """Vector of Q^6 with V0-coordinates c."""
        return exterior.embed(c, self.u_rows())

    def to_json(self):
        return {"v0": [exactnum.format_rational(x) for x in self.v0], "V0_basis": self.V0_basis.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls([exactnum.parse_rational(x) for x in obj["v0"]], QMatrix.from_json(obj["V0_basis"]))


_LIFT_CACHE = {}


def _lift(D, k):
    key = (D, k, "lift")
    if key not in _LIFT_CACHE:
        _LIFT_CACHE[key] = exterior.power_matrix(D.u_rows(), k)
    return _LIFT_CACHE[key]


def _v0_lift2(D):
    key = (D, "v0lift")
    if key not in _LIFT_CACHE:
        v0 = D.v0_vec()
        lift2 = D.lift(2)
        rows = [list(exterior.wedge(v0, AltK(6, 2, lift2.row(i))).coords) for i in range(10)]
        _LIFT_CACHE[key] = QMatrix.from_rows(rows, 20)
    return _LIFT_CACHE[key]


@dataclass(frozen=True)
class ThetaCertificate:
    W: QMatrix  # 3x6

    def generator(self) -> AltK:
        return exterior.wedge_all(*[AltK.vector(self.W.row(i)) for i in range(3)])

    def to_json(self):
        return {"type": "theta", "W": self.W.to_json()}

    @classmethod
    def from_json(cls, obj):
        return cls(QMatrix.from_json(obj["W"]))


@dataclass(frozen=True)
class DeltaCertificate:
    v0: tuple
    K: QMatrix  # 3x10, coordinates on the lex basis of 2-vectors of V0
    emptiness_degree: int | None = None
    D: Decomposition | None = None

    def to_json(self):
        out = {"type": "delta", "v0": AltK.vector(self.v0).to_json(), "K": self.K.to_json(),
               "emptiness_degree": self.emptiness_degree}
        if self.D is not None:
            out["decomposition"] = self.D.to_json()
        return out

    @classmethod
    def from_json(cls, obj):
        D = Decomposition.from_json(obj["decomposition"]) if "decomposition" in obj else None
        return cls(AltK.from_json(obj["v0"]).coords, QMatrix.from_json(obj["K"]),
                   obj.get("emptiness_degree"), D)


# --- tests ----------------------------------------------------------------

def isotropy_defect(M: QMatrix):
    """First pair (i, j) of rows with nonzero symplectic pairing, or None."""
    G = M @ exterior.symp_matrix() @ M.transpose()
    for i in range(M.rows):
        for j in range(i + 1, M.rows):
            if G[i, j]:
                return (i, j)
    return None


def is_lagrangian(M) -> bool:
    if isinstance(M, Lagrangian):
        M = M.basis
    if M.shape != (10, 20):
        return False
    return exactnum.rank(M) == 10 and isotropy_defect(M) is None


def theta_check(A: Lagrangian, W) -> bool:
    """True iff the third exterior power of W lies in A."""
    Wm = W.basis if isinstance(W, Subspace) else W
    if exactnum.rank(Wm) != 3:
        raise BadDimension("W must be 3-dimensional")
    cert = ThetaCertificate(Wm)
    return A.contains(cert.generator().coords)


def intersection_dim(A: Lagrangian, v: Sequence) -> int:
    return exactnum.rowspace_intersection(A.basis, exterior.F_basis(AltK.vector(v))).rows


# --- constructors -------------------------------------------------------------

def graph_lagrangian(D: Decomposition, Q: QMatrix) -> Lagrangian:
    """The graph {v0 ^ a + q(a)} of the map q = P^T Q from 2-vectors to 3-vectors of V0."""
    if Q.shape != (10, 10) or not Q.is_symmetric():
        raise NotSymmetric("Q must be a symmetric 10x10 matrix")
    T = exterior.pairing_matrix().transpose() @ Q
    basis = D.v0_wedge_lift2() + T.transpose() @ D.lift(3)
    return Lagrangian(basis)


def wedge3_of(rows: Sequence[Sequence]) -> Lagrangian:
    """The third exterior power of a 5-dimensional subspace."""
    return Lagrangian(exterior.power_matrix([list(r) for r in rows], 3))


def pathological(v0: Sequence) -> Lagrangian:
    """A = F_{v0}, whose sextic vanishes identically."""
    return Lagrangian(exterior.F_basis(AltK.vector(v0)))


def random_decomposition(rng: SeededRng, height: int = 10, v0=None) -> Decomposition:
    while True:
        vv = list(v0) if v0 is not None else rng.nonzero_vector(6, height)
        B = rng.matrix(5, 6, height)
        if exactnum.rank(QMatrix(1, 6, vv).vstack(B)) == 6:
            return Decomposition(vv, B)


def symmetric_with_kernel(K: QMatrix, S: QMatrix) -> QMatrix:
    """Symmetric Q whose kernel is exactly rowspace(K), given an invertible symmetric block S."""
    n = K.cols
    C = exactnum.complement_rows(K)
    B = exactnum.row_basis(K).vstack(C) if exactnum.rank(K) < K.rows else K.vstack(C)
    r = n - C.rows
    G = QMatrix.zeros(r, r).hstack(QMatrix.zeros(r, n - r)).vstack(
        QMatrix.zeros(n - r, r).hstack(S))
    Binv = exactnum.inverse(B)
    return _integral_symmetric(Binv @ G @ Binv.transpose())


def _integral_symmetric(Q: QMatrix) -> QMatrix:
    """Rescale by a positive integer to clear denominators."""
    den = 1
    for x in Q._data:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return Q.scale(den)


def random_invertible_symmetric(rng: SeededRng, n: int, height: int = 10) -> QMatrix:
    while True:
        S = rng.symmetric(n, height)
        if exactnum.det_exact(S):
            return S


def random_lagrangian(rng: SeededRng, height: int = 10) -> Lagrangian:
    """Graph of a random symmetric integer matrix over a random decomposition."""
    D = random_decomposition(rng, height)
    Q = rng.symmetric(10, height)
    return graph_lagrangian(D, Q)


def grassmann_conics(K: QMatrix, names=("t0", "t1", "t2")) -> polyring.Ideal:
    """The quadrics a ^ a = 0 restricted to the span of K's rows (2-vectors of V0)."""
    k = K.rows
    names = tuple(names[:k]) if len(names) >= k else tuple(f"t{i}" for i in range(k))
    rows = [AltK(5, 2, K.row(i)) for i in range(k)]
    gens = []
    prods = {}
    for i in range(k):
        for j in range(i, k):
            prods[(i, j)] = exterior.wedge(rows[i], rows[j]).coords
    for c in range(5):
        terms = {}
        for (i, j), w in prods.items():
            if w[c]:
                e = [0] * k
                e[i] += 1
                e[j] += 1
                terms[tuple(e)] = w[c] * (1 if i == j else 2)
        gens.append(polyring.MultiPoly(names, terms))
    return polyring.Ideal(names, gens)


def random_plane(rng: SeededRng, height: int, within: QMatrix | None = None, dim: int = 3) -> QMatrix:
    """Random dim-dimensional subspace of Q^10 (optionally inside rowspace(within))."""
    while True:
        if within is None:
            K = rng.matrix(dim, 10, height)
        else:
            K = exactnum.integer_rows(rng.matrix(dim, within.rows, height) @ within)
        if exactnum.rank(K) == dim:
            return K


def build_delta_lagrangian(rng: SeededRng, height: int = 10, retries: int = 50, dmax: int = 6):
    """A graph Lagrangian with a corank-3 point at e0 whose kernel plane misses the Grassmannian."""
    D = Decomposition.standard()
    for _ in range(retries):
        K = random_plane(rng, height)
        cert = polyring.is_empty_projective(grassmann_conics(K), dmax)
        if not isinstance(cert, polyring.Empty):
            continue
        Q = symmetric_with_kernel(K, random_invertible_symmetric(rng, 7, height))
        A = graph_lagrangian(D, Q)
        return A, DeltaCertificate(D.v0, K, cert.degree, D)
    raise SearchExhausted("no kernel plane with an emptiness certificate found")


def isotropic_completion(rows: Sequence[Sequence], rng: SeededRng, height: int = 10) -> Lagrangian:
    """A random Lagrangian containing the given isotropic vectors."""
    J = exterior.symp_matrix()
    S = exactnum.row_basis(QMatrix.from_rows([list(r) for r in rows], 20)) if rows else QMatrix(0, 20)
    if S.rows and isotropy_defect(S) is not None:
        raise ValueError("the given vectors are not isotropic")
    while S.rows < 10:
        perp = exactnum.kernel_basis(S @ J) if S.rows else QMatrix.identity(20)
        x = exactnum.primitive_vector(perp.vec_mul(rng.vector(perp.rows, height)))
        if not any(x) or (S.rows and exactnum.in_rowspace(S, x)):
            continue
        S = S.vstack(QMatrix(1, 20, x))
    return Lagrangian(exactnum.integer_rows(S))


def build_sigma_lagrangian(rng: SeededRng, height: int = 10):
    """A random Lagrangian containing the decomposable vector w1 ^ w2 ^ w3."""
    while True:
        W = rng.matrix(3, 6, height)
        if exactnum.rank(W) == 3:
            break
    cert = ThetaCertificate(W)
    A = isotropic_completion([cert.generator().coords], rng, height)
    return A, cert


def lagrangian_through_points(rng: SeededRng, points: Sequence[Sequence], multiplicities=None,
                              height: int = 10) -> Lagrangian:
    """Random Lagrangian meeting F_p nontrivially at every given point p.

    multiplicities[i] vectors are taken from F_{p_i}, so the corank at p_i is
    at least that number.
    """
    J = exterior.symp_matrix()
    mult = multiplicities or [1] * len(points)
    chosen = QMatrix(0, 20)
    for p, m in zip(points, mult):
        F = exterior.F_basis(AltK.vector(p))
        for _ in range(m):
            cand = F if chosen.rows == 0 else exactnum.rowspace_intersection(
                F, exactnum.kernel_basis(chosen @ J))
            for _ in range(100):
                x = exactnum.primitive_vector(cand.vec_mul(rng.vector(cand.rows, height)))
                if any(x) and (chosen.rows == 0 or not exactnum.in_rowspace(chosen, x)):
                    break
            else:
                raise SearchExhausted("cannot extend the isotropic set")
            chosen = chosen.vstack(QMatrix(1, 20, x))
    if chosen.rows > 10:
        raise BadDimension("too many forced vectors")
    return isotropic_completion([chosen.row(i) for i in range(chosen.rows)], rng, height)


def _gram_kernel_graph(D, K, alpha0, y0, rng, height):
    """Symmetric Q with kernel K and Q alpha0 = y0 (requires y0 orthogonal to K and alpha0)."""
    C = exactnum.complement_rows(K.vstack(QMatrix(1, 10, alpha0)))
    B = K.vstack(QMatrix(1, 10, alpha0)).vstack(C)
    n = 10
    while True:
        G = [[Fraction(0)] * n for _ in range(n)]
        for j in range(4, n):
            v = sum(a * b for a, b in zip(y0, B.row(j)))
            G[3][j] = G[j][3] = v
        S = rng.symmetric(n - 4, height)
        for a in range(n - 4):
            for b in range(n - 4):
                G[4 + a][4 + b] = S[a, b]
        Gm = QMatrix.from_rows(G, n)
        if exactnum.rank(Gm) == 7:
            break
    Binv = exactnum.inverse(B)
    return Binv @ Gm @ Binv.transpose()


def build_sigma_delta_lagrangian(rng: SeededRng, height: int = 10, retries: int = 50, dmax: int = 6):
    """A Lagrangian with a corank-3 point at e0 and a Theta-plane W not through e0.

    W = <e0 + u1, u2, u3>; the graph map sends u2 ^ u3 to u1 ^ u2 ^ u3, and the
    kernel plane is chosen orthogonal to u1 ^ u2 ^ u3.
    """
    D = Decomposition.standard()
    P = exterior.pairing_matrix()
    for _ in range(retries):
        u = rng.matrix(3, 5, height)
        if exactnum.rank(u) < 3:
            continue
        us = [AltK.vector(u.row(i)) for i in range(3)]
        alpha0 = exterior.wedge(us[1], us[2]).coords
        beta0 = exterior.wedge_all(*us).coords
        y0 = P.apply(beta0)
        orth = exactnum.kernel_basis(QMatrix(1, 10, y0))
        K = random_plane(rng, height, within=orth)
        if exactnum.rank(K.vstack(QMatrix(1, 10, alpha0))) < 4:
            continue
        cert = polyring.is_empty_projective(grassmann_conics(K), dmax)
        if not isinstance(cert, polyring.Empty):
            continue
        Q = _gram_kernel_graph(D, K, alpha0, y0, rng, height)
        A = graph_lagrangian(D, Q)
        W = QMatrix.from_rows([[1] + list(u.row(0)), [0] + list(u.row(1)), [0] + list(u.row(2))], 6)
        return A, DeltaCertificate(D.v0, K, cert.degree, D), ThetaCertificate(W)
    raise SearchExhausted("no Sigma-Delta instance found")


def build_single_point_lagrangian(rng: SeededRng, height: int = 10, retries: int = 50, dmax: int = 6):
    """Corank-3 point at e0 whose kernel plane meets the Grassmannian in one reduced point.

    The point is kappa0 = u1 ^ u2 (first two basis vectors of V0).  Returns
    (A, DeltaCertificate, kappa0 coordinates, certificate degree).
    """
    D = Decomposition.standard()
    kappa0 = AltK.basis(5, (0, 1)).coords
    for _ in range(retries):
        K = QMatrix(1, 10, kappa0).vstack(rng.matrix(2, 10, height))
        if exactnum.rank(K) < 3:
            continue
        d = polyring.single_point_degree(grassmann_conics(K), dmax)
        if d is None:
            continue
        Q = symmetric_with_kernel(K, random_invertible_symmetric(rng, 7, height))
        A = graph_lagrangian(D, Q)
        return A, DeltaCertificate(D.v0, K, None, D), kappa0, d
    raise SearchExhausted("no single-point kernel plane found")


def build_tangent_contact_lagrangian(rng: SeededRng, height: int = 10):
    """Corank-3 point whose kernel plane is tangent to the Grassmannian at u1 ^ u2."""
    D = Decomposition.standard()
    e = lambda i, j: AltK.basis(5, (i, j))
    kappa0 = e(0, 1)
    tangent = e(0, 2) + e(1, 3)
    while True:
        third = rng.matrix(1, 10, height)
        K = QMatrix.from_rows([kappa0.coords, tangent.coords], 10).vstack(third)
        if exactnum.rank(K) == 3:
            break
    Q = symmetric_with_kernel(K, random_invertible_symmetric(rng, 7, height))
    return graph_lagrangian(D, Q), DeltaCertificate(D.v0, K, None, D)


# --- graph data relative to a decomposition ------------------------------------

def is_transverse_to_wedge3(A: Lagrangian, D: Decomposition) -> bool:
    """True iff A meets the third exterior power of V0 only in 0."""
    return exactnum.rank(A.basis.vstack(D.lift(3))) == 20


def graph_map(A: Lagrangian, D: Decomposition) -> QMatrix:
    """10x10 matrix T with v0 ^ a + T a in A for every 2-vector a of V0 (columns = images)."""
    from .errors import NotTransverse
    if not is_transverse_to_wedge3(A, D):
        raise NotTransverse("A meets the third exterior power of V0")
    M = A.basis.vstack(D.lift(3).scale(-1))
    cols = []
    for j in range(10):
        sol = exactnum.solve_left(M, D.v0_wedge_lift2().row(j))
        cols.append(sol[10:])
    return QMatrix.from_rows(cols, 10).transpose()


def kill_lift(A: Lagrangian, D: Decomposition, beta: Sequence):
    """Some 2-vector a of V0 with v0 ^ a + beta in A (beta in V0 coordinates), or None."""
    M = A.basis.vstack(D.v0_wedge_lift2().scale(-1))
    sol = exactnum.solve_left(M, D.lift(3).vec_mul(beta))
    return None if sol is None else sol[10:]


def kernel_plane(A: Lagrangian, D: Decomposition) -> QMatrix:
    """The 2-vectors k of V0 with v0 ^ k in A, as a 3x10 basis."""
    from .errors import NotTransverse, WrongCorank
    if not is_transverse_to_wedge3(A, D):
        raise NotTransverse("A meets the third exterior power of V0")
    inter = exactnum.rowspace_intersection(A.basis, exterior.F_basis(D.v0_vec()))
    if inter.rows != 3:
        raise WrongCorank(f"corank at v0 is {inter.rows}, expected 3")
    rows = [exactnum.solve_left(D.v0_wedge_lift2(), inter.row(i)) for i in range(3)]
    return exactnum.integer_rows(QMatrix.from_rows(rows, 10))
