"""The K3 surface and quintic del Pezzo threefold attached to a corank-3 point.

Given a Lagrangian A, a point v0 with dim(A meet F_{v0}) = 3 and a complement
V0, the kernel plane K lives in the 2-vectors of V0.  Everything below is
computed in the 7-dimensional frame y0..y6 given by a fixed basis of the
annihilator Ann K inside the 3-vectors of V0:

* W_K = P(Ann K) meet Gr(3, V0), cut out by the five restricted Pluecker quadrics;
* the quadric r(b, b') = vol6(v0 ^ a ^ b'), where v0 ^ a + b lies in A;
* S = W_K meet V(r).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import dcover, exactnum, exterior, lagrangian, polyring
from .errors import (AsymmetryDetected, BadCertificate, ContainsV0, Degenerate, DegenerateK,
                     LineInWK, NotAConic, NotAPlane, NotInvertible, NotOnS, SearchExhausted)
from .exactnum import QMatrix, SeededRng
from .exterior import AltK
from .lagrangian import Decomposition, Lagrangian
from .polyring import Ideal, MultiPoly

YVARS = tuple(f"y{i}" for i in range(7))


def ann_basis(K: QMatrix) -> QMatrix:
    """Basis of the 3-vectors of V0 orthogonal to K under the volume pairing.

    The basis depends only on the row space of K (reduced echelon form), so
    every construction from the same plane uses the same frame.
    """
    return exactnum.integer_rows(exactnum.kernel_basis(K @ exterior.pairing_matrix()))


def quadric(B: QMatrix, vars=YVARS) -> MultiPoly:
    """The quadratic form x -> x^T B x."""
    n = B.rows
    terms = {}
    for a in range(n):
        for b in range(a, n):
            c = B[a, b] if a == b else B[a, b] + B[b, a]
            if c:
                e = [0] * n
                e[a] += 1
                e[b] += 1
                terms[tuple(e)] = c
    return MultiPoly(vars, terms)


def pluecker_bilinear(f: Sequence, N: QMatrix) -> QMatrix:
    """Matrix of (w, w') -> vol5((f contracted into w) ^ w') on the rows of N."""
    vecs = [AltK(5, 3, N.row(i)) for i in range(N.rows)]
    con = [exterior.contract(f, w) for w in vecs]
    return QMatrix.from_rows([[exterior.vol5(exterior.wedge(c, w)) for w in vecs] for c in con], N.rows)


def pluecker_quadrics(N: QMatrix | None = None, vars=None) -> list:
    """The five quadrics q_f (f over the dual basis of V0) restricted to the span of N's rows."""
    if N is None:
        N = QMatrix.identity(10)
    vars = vars or (YVARS if N.rows == 7 else tuple(f"z{i}" for i in range(N.rows)))
    out = []
    for m in range(5):
        f = [1 if i == m else 0 for i in range(5)]
        out.append(quadric(pluecker_bilinear(f, N), vars))
    return out


def wk_ideal(K: QMatrix, annK: QMatrix | None = None) -> Ideal:
    N = annK if annK is not None else ann_basis(K)
    gens = pluecker_quadrics(N)
    if polyring.span_rank(gens) != 5:
        raise DegenerateK("restricted Pluecker quadrics are dependent")
    return Ideal(YVARS, gens)


def r_form(A: Lagrangian, D: Decomposition, annK: QMatrix | None = None) -> QMatrix:
    """Symmetric 7x7 matrix of r on the annK basis."""
    if annK is None:
        annK = ann_basis(lagrangian.kernel_plane(A, D))
    v0 = D.v0_vec()
    alphas = []
    for i in range(annK.rows):
        a = lagrangian.kill_lift(A, D, annK.row(i))
        if a is None:
            raise NotOnS("annihilator vector has no lift into A")
        alphas.append(AltK(6, 2, D.lift(2).vec_mul(a)))
    betas = [AltK(6, 3, D.lift(3).vec_mul(annK.row(i))) for i in range(annK.rows)]
    R = QMatrix.from_rows([[exterior.vol6(exterior.wedge_all(v0, a, b)) for b in betas] for a in alphas],
                          annK.rows)
    if not R.is_symmetric():
        raise AsymmetryDetected("r is not symmetric; A is not Lagrangian")
    if exactnum.det_exact(R) == 0:
        raise Degenerate("r is degenerate")
    return R


@dataclass
class K3Data:
    A: Lagrangian
    D: Decomposition
    K: QMatrix
    annK: QMatrix
    wk_ideal: Ideal
    r_form: QMatrix
    s_ideal: Ideal

    @property
    def v0(self):
        return self.D.v0

    @property
    def r_quadric(self) -> MultiPoly:
        return self.s_ideal.gens[-1]

    def to_vector(self, y: Sequence) -> AltK:
        """The 3-vector of V0 with frame coordinates y."""
        return AltK(5, 3, self.annK.vec_mul(y))

    def to_frame(self, w: AltK):
        """Frame coordinates of a 3-vector of V0, or None if it is not in Ann K."""
        return exactnum.solve_left(self.annK, w.coords)

    def to_json(self):
        return {"K": self.K.to_json(), "annK": self.annK.to_json(),
                "wk_ideal": self.wk_ideal.to_json(), "r_form": self.r_form.to_json(),
                "s_ideal": self.s_ideal.to_json(),
                "frame": {"vars": list(YVARS), "decomposition": self.D.to_json()}}


def s_ideal_from(wk: Ideal, R: QMatrix) -> Ideal:
    gens = list(wk.gens) + [quadric(R)]
    if polyring.span_rank(gens) != 6:
        raise Degenerate("the r-quadric lies in the span of the Pluecker quadrics")
    return Ideal(YVARS, gens)


def k3_data(A: Lagrangian, D: Decomposition) -> K3Data:
    K = lagrangian.kernel_plane(A, D)
    N = ann_basis(K)
    wk = wk_ideal(K, N)
    R = r_form(A, D, N)
    return K3Data(A, D, K, N, wk, R, s_ideal_from(wk, R))


def s_ideal(A: Lagrangian, D: Decomposition) -> Ideal:
    return k3_data(A, D).s_ideal


def kernel_plane(A: Lagrangian, D: Decomposition) -> QMatrix:
    return lagrangian.kernel_plane(A, D)


# --- change of complement ------------------------------------------------------

def transport_matrix(D: Decomposition, D2: Decomposition) -> QMatrix:
    """5x5 matrix of psi: V0 -> V0', u -> u + f(u) v0, in the two bases."""
    if exactnum.rank(QMatrix.from_rows([D.v0, D2.v0], 6)) != 1:
        raise ValueError("decompositions must share the point v0")
    rows = []
    for u in D.u_rows():
        t, c = D2.split(u)
        rows.append(c)
    return QMatrix.from_rows(rows, 5)


@dataclass
class IndependenceResult:
    spans_equal: bool
    r_difference_in_pluecker_span: bool

    def __bool__(self):
        return self.spans_equal and self.r_difference_in_pluecker_span


def decomposition_independence(A: Lagrangian, D: Decomposition, D2: Decomposition) -> IndependenceResult:
    """Transport the K3 data of D2 back along the third exterior power of psi and compare."""
    d1, d2 = k3_data(A, D), k3_data(A, D2)
    C3 = exterior.power_matrix(transport_matrix(D, D2).to_rows(), 3)
    L = []
    for i in range(7):
        img = C3.vec_mul(d1.annK.row(i))
        sol = exactnum.solve_left(d2.annK, img)
        if sol is None:
            return IndependenceResult(False, False)
        L.append(sol)
    Lm = QMatrix.from_rows(L, 7)
    images = [MultiPoly.linear(YVARS, Lm.col(b)) for b in range(7)]
    pulled = [g.substitute(images) for g in d2.s_ideal.gens]
    equal = polyring.same_span(pulled, d1.s_ideal.gens)
    diff = pulled[-1] - d1.r_quadric
    in_span = polyring.span_rank(d1.wk_ideal.gens + [diff]) == 5
    return IndependenceResult(equal, in_span)


# --- points --------------------------------------------------------------------

def theta_point(data: K3Data, W: QMatrix) -> list:
    """The frame point [u1 ^ u2 ^ u3] of a plane W = <v0 + u1, u2, u3> with its cube in A."""
    D = data.D
    if exactnum.rank(W.vstack(QMatrix(1, 6, D.v0))) == 3:
        raise ContainsV0("v0 lies in W")
    gen = exterior.wedge_all(*[AltK.vector(W.row(i)) for i in range(3)])
    coords = exactnum.solve_left(exterior.power_matrix(D.frame().to_rows(), 3), gen.coords)
    # frame index 0 is v0; keep the subsets avoiding it, shifted into V0 indices
    idx5 = exterior.subset_index(5, 3)
    beta = [Fraction(0)] * 10
    for c, s in zip(coords, exterior.subsets(6, 3)):
        if 0 not in s:
            beta[idx5[tuple(i - 1 for i in s)]] = c
    y = data.to_frame(AltK(5, 3, beta))
    if y is None:
        raise NotOnS("the theta point is not orthogonal to K")
    y = exactnum.primitive_vector(y)
    if not data.s_ideal.vanishes_at(y):
        raise NotOnS("the theta point does not satisfy the K3 equations")
    return y


class Tangency:
    Transverse = "Transverse"
    Tangent = "Tangent"


def tangency_check(data: K3Data, y: Sequence) -> str:
    """Compare the tangent space of W_K with that of the r-quadric at a point of S."""
    if not any(y) or not data.s_ideal.vanishes_at(y):
        raise NotOnS("point is not on S")
    w = data.to_vector(y)
    U = exterior.support(w)
    if U.dim != 3:
        raise NotOnS("point is not decomposable")
    us = U.vectors()
    two = [exterior.wedge(us[a], us[b]) for a, b in itertools.combinations(range(3), 2)]
    P = exterior.pairing_matrix()
    rows = [P.vec_mul(t.coords) for t in two]  # functionals w -> vol5(t ^ w)
    M1 = QMatrix.from_rows([data.annK.apply(r) for r in rows], 7)
    ry = data.r_form.vec_mul(y)
    tangent = exactnum.kernel_basis(M1.vstack(QMatrix(1, 7, ry)))
    return Tangency.Transverse if tangent.rows == 3 else Tangency.Tangent


def pellegrini(K: QMatrix, R: QMatrix, check_certificate: bool = True, dmax: int = 6) -> Lagrangian:
    """A Lagrangian with kernel plane K at e0 whose r-form on the annK frame is R."""
    if not R.is_symmetric() or exactnum.det_exact(R) == 0:
        raise NotInvertible("R must be symmetric and invertible")
    if check_certificate:
        conics = lagrangian.grassmann_conics(K)
        if not isinstance(polyring.is_empty_projective(conics, dmax), polyring.Empty) \
                and polyring.single_point_degree(conics, dmax) is None:
            raise BadCertificate("P(K) is neither disjoint from nor simply tangent to the Grassmannian")
    P = exterior.pairing_matrix()
    N = ann_basis(K)
    Kb = exactnum.row_basis(K)
    B = Kb.vstack(exactnum.complement_rows(Kb))
    zcols = []
    for a in range(7):
        z = B.apply(P.apply(N.row(a)))
        zcols.append(z[3:])
    Z = QMatrix.from_rows(zcols, 7).transpose()
    S = Z @ exactnum.inverse(R) @ Z.transpose()
    G = QMatrix.zeros(3, 10).vstack(QMatrix.zeros(7, 3).hstack(S))
    Binv = exactnum.inverse(B)
    Q = Binv @ G @ Binv.transpose()
    A = lagrangian.graph_lagrangian(Decomposition.standard(), Q)
    return Lagrangian(exactnum.integer_rows(A.basis))


# --- rational points of W_K ------------------------------------------------------

def _conic_data(K: QMatrix, u1: Sequence):
    """Planes through u1 orthogonal to K: (3 x 10 basis H of 3-vectors, 3x3 conic matrix)."""
    u = AltK.vector(list(u1))
    comp = exactnum.complement_rows(QMatrix(1, 5, u1))
    cs = [AltK.vector(comp.row(i)) for i in range(4)]
    etas = [exterior.wedge(cs[a], cs[b]) for a, b in itertools.combinations(range(4), 2)]
    omegas = [exterior.wedge(u, e) for e in etas]
    P = exterior.pairing_matrix()
    cond = QMatrix.from_rows([[sum(a * b for a, b in zip(P.apply(w.coords), K.row(r))) for w in omegas]
                              for r in range(K.rows)], 6)
    H = exactnum.kernel_basis(cond)
    if H.rows != 3:
        return None
    hs = [sum((e * c for e, c in zip(etas, H.row(i))), AltK.zero(5, 2)) for i in range(3)]
    # the conic: eta ^ eta, a multiple of c1^c2^c3^c4
    prods = [[exterior.wedge(hs[i], hs[j]).coords for j in range(3)] for i in range(3)]
    k = next((c for c in range(5) if any(prods[i][j][c] for i in range(3) for j in range(3))), None)
    if k is None:
        return None
    C = QMatrix.from_rows([[prods[i][j][k] for j in range(3)] for i in range(3)], 3)
    W = QMatrix.from_rows([exterior.wedge(u, h).coords for h in hs], 10)
    return W, C


def _box(height):
    """Integer triples up to sign and scaling, by increasing height."""
    for h in range(1, height + 1):
        for s in itertools.product(range(-h, h + 1), repeat=3):
            if max(abs(x) for x in s) != h:
                continue
            nz = next(x for x in s if x)
            if nz > 0 and math.gcd(*s) == 1:
                yield s


def _conic_value(C, s):
    return sum(C[i, j] * s[i] * s[j] for i in range(3) for j in range(3))


def _integer_conic(C: QMatrix):
    den = math.lcm(*[x.denominator for x in C._data])
    c = [[int(C[i, j] * den) for j in range(3)] for i in range(3)]
    g = math.gcd(*[x for r in c for x in r]) or 1
    return [[x // g for x in r] for r in c]


def _small_conic_point(C: QMatrix, height: int):
    """First rational point of x^T C x = 0 of height at most `height`, or None."""
    c = _integer_conic(C)
    a, b, cc = c[0][0], c[1][1], c[2][2]
    d, e, f = 2 * c[0][1], 2 * c[0][2], 2 * c[1][2]
    for x, y, z in _box(height):
        if a * x * x + b * y * y + cc * z * z + d * x * y + e * x * z + f * y * z == 0:
            return [x, y, z]
    return None


def _conic_point(C: QMatrix, height: int):
    """A rational point of the conic: small search first, then Legendre descent via sympy."""
    s = _small_conic_point(C, height)
    if s is not None:
        return s
    from sympy import symbols
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic
    x, y, z = symbols("x y z", integer=True)
    c = _integer_conic(C)
    eq = (c[0][0] * x**2 + c[1][1] * y**2 + c[2][2] * z**2
          + 2 * c[0][1] * x * y + 2 * c[0][2] * x * z + 2 * c[1][2] * y * z)
    sol = diop_ternary_quadratic(eq)
    if not sol or sol[0] is None:
        return None
    pt = [int(v) for v in sol]
    return exactnum.primitive_vector(pt) if any(pt) else None


def _next_conic_point(C: QMatrix, s0: Sequence, rng: SeededRng, height: int):
    """Second intersection of the conic with a random line through s0."""
    for _ in range(20):
        d = rng.nonzero_vector(3, height)
        qd = _conic_value(C, d)
        bsd = sum(C[i, j] * s0[i] * d[j] for i in range(3) for j in range(3))
        if qd == 0 or bsd == 0:
            continue
        t = -2 * bsd / qd
        return exactnum.primitive_vector([a + t * b for a, b in zip(s0, d)])
    return None


def wk_rational_points(K: QMatrix, rng: SeededRng, count: int, height: int = 20, retries: int = 200,
                       per_conic: int = 2, annK: QMatrix | None = None) -> list:
    """Rational points of W_K (frame coordinates), found on conics of planes through a vector u1."""
    N = annK if annK is not None else ann_basis(K)
    wk = wk_ideal(K, N)
    found, supports = [], []
    for _ in range(retries):
        if len(found) >= count:
            break
        if supports:
            U = rng.choice(supports[:4])
            u1 = exactnum.primitive_vector(U.vec_mul(rng.vector(3, 5)))
            if not any(u1):
                continue
        else:
            u1 = rng.nonzero_vector(5, 10)
        data = _conic_data(K, u1)
        if data is None:
            continue
        W3, C = data
        if exactnum.det_exact(C) == 0:
            continue
        s0 = None
        if supports:
            for prev in found:
                w = N.vec_mul(prev)
                sol = exactnum.solve_left(W3, w)
                if sol is not None:
                    s0 = sol
                    break
        if s0 is None:
            s0 = _conic_point(C, height)
        if s0 is None:
            continue
        for _ in range(per_conic):
            s = _next_conic_point(C, s0, rng, 5)
            if s is None:
                break
            y = exactnum.solve_left(N, W3.vec_mul(s))
            if y is None:
                continue
            y = exactnum.primitive_vector(y)
            if not wk.vanishes_at(y):
                raise AssertionError("constructed point is not on W_K")
            if y not in found:
                found.append(y)
                supports.append(exterior.support(AltK(5, 3, N.vec_mul(y))).basis)
        if not supports:
            y = exactnum.primitive_vector(exactnum.solve_left(N, W3.vec_mul(s0)))
            found.append(y)
            supports.append(exterior.support(AltK(5, 3, N.vec_mul(y))).basis)
    if len(found) < count:
        raise SearchExhausted(f"found {len(found)} of {count} rational points")
    return found[:count]


def _height(y):
    return max(abs(x) for x in y)


def support_overlap(annK: QMatrix, y1: Sequence, y2: Sequence) -> int:
    U1 = exterior.support(AltK(5, 3, annK.vec_mul(y1)))
    U2 = exterior.support(AltK(5, 3, annK.vec_mul(y2)))
    return U1.intersect(U2).dim


# --- instances with prescribed points on S -----------------------------------------

def quadric_through(points: Sequence[Sequence], rng: SeededRng, avoid: Sequence[MultiPoly] = (),
                    height: int = 10, tries: int = 50) -> QMatrix:
    """Random invertible symmetric 7x7 R with y^T R y = 0 at every point, outside span(avoid)."""
    pairs = dcover.sym2_pairs(7)
    rows = [[y[a] * y[b] * (1 if a == b else 2) for a, b in pairs] for y in points]
    sols = exactnum.kernel_basis(QMatrix.from_rows(rows, len(pairs))) if rows else QMatrix.identity(len(pairs))
    for _ in range(tries):
        c = sols.vec_mul(rng.vector(sols.rows, height))
        M = [[Fraction(0)] * 7 for _ in range(7)]
        for (a, b), x in zip(pairs, c):
            M[a][b] = M[b][a] = x
        R = QMatrix.from_rows(M, 7)
        if exactnum.det_exact(R) == 0:
            continue
        if avoid and polyring.span_rank(list(avoid) + [quadric(R)]) == polyring.span_rank(list(avoid)):
            continue
        return R
    raise SearchExhausted("no admissible quadric through the points")


def designed_instance(rng: SeededRng, npoints: int = 6, height: int = 10):
    """(A, data, points): a corank-3 Lagrangian whose K3 surface contains the given rational points.

    The kernel plane and points of W_K are sampled first; the r-quadric is then
    chosen through the points and the Lagrangian rebuilt from (K, r).
    """
    _, cert = lagrangian.build_delta_lagrangian(rng, height)
    K = cert.K
    N = ann_basis(K)
    pts = sorted(wk_rational_points(K, rng, 2 * npoints, annK=N), key=_height)[:npoints]
    R = quadric_through(pts, rng, wk_ideal(K, N).gens, height)
    A = pellegrini(K, R)
    data = k3_data(A, Decomposition.standard())
    return A, data, pts


# --- appendix geometry ------------------------------------------------------------

@dataclass
class SingularReport:
    ker_nu_dim: int
    fano_sing: list | None
    sing_jacobian_rank: int | None
    sample_ranks: list = field(default_factory=list)
    theta_points: list = field(default_factory=list)

    @property
    def ok(self):
        return (self.ker_nu_dim == 1 and self.sing_jacobian_rank is not None and self.sing_jacobian_rank < 3
                and all(r == 3 for r in self.sample_ranks))


def singfano_check(K: QMatrix, kappa0: Sequence, rng: SeededRng | None = None, samples: int = 20) -> SingularReport:
    """Predict the singular point of W_K when P(K) touches the Grassmannian at kappa0."""
    k0 = AltK(5, 2, kappa0)
    if not exactnum.in_rowspace(K, kappa0) or k0.is_zero() or not exterior.wedge(k0, k0).is_zero():
        raise BadCertificate("kappa0 must be a decomposable vector of K")
    # nu(kappa)(v) = vol5(v ^ kappa0 ^ kappa)
    nu = QMatrix.from_rows(
        [[exterior.vol5(exterior.wedge_all(AltK.basis(5, (m,)), k0, AltK(5, 2, K.row(i)))) for m in range(5)]
         for i in range(K.rows)], 5)
    ker = exactnum.left_kernel(nu)
    if ker.rows != 1 or not exactnum.proportional(K.vec_mul(ker.row(0)), kappa0):
        return SingularReport(ker.rows, None, None)
    U = exactnum.kernel_basis(nu)  # annihilator of the image: a 3-plane containing supp kappa0
    if U.rows != 3:
        return SingularReport(ker.rows, None, None)
    w = exterior.wedge_all(*[AltK.vector(U.row(i)) for i in range(3)])
    N = ann_basis(K)
    y = exactnum.solve_left(N, w.coords)
    if y is None:
        raise BadCertificate("predicted point is not orthogonal to K")
    y = exactnum.primitive_vector(y)
    wk = wk_ideal(K, N)
    rank_sing = polyring.jacobian_rank_at(wk, y)
    ranks = []
    if rng is not None and samples:
        for p in wk_rational_points(K, rng, samples, annK=N):
            if not exactnum.proportional(p, y):
                ranks.append(polyring.jacobian_rank_at(wk, p))
    return SingularReport(1, y, rank_sing, ranks)


def baseweb(K: QMatrix, v: Sequence, annK: QMatrix | None = None):
    """(R_L, conic): the plane Ann K meet {w : v ^ w = 0} and W_K restricted to it."""
    N = annK if annK is not None else ann_basis(K)
    vv = AltK.vector(list(v))
    if vv.is_zero():
        raise ValueError("v must be nonzero")
    M = QMatrix.from_rows([exterior.wedge(vv, AltK(5, 3, N.row(a))).coords for a in range(7)], 5)
    R = exactnum.integer_rows(exactnum.left_kernel(M))
    if R.rows != 3:
        raise NotAPlane(f"R_L has dimension {R.rows}")
    zvars = ("z0", "z1", "z2")
    images = [MultiPoly.linear(zvars, R.col(a)) for a in range(7)]
    restricted = [g.substitute(images) for g in wk_ideal(K, N).gens]
    if polyring.span_rank(restricted) != 1:
        raise NotAConic(f"restricted span has dimension {polyring.span_rank(restricted)}")
    conic = next(polyring.normalize(g) for g in restricted if not g.is_zero())
    return R, conic


def conic_through(K: QMatrix, p1: Sequence, p2: Sequence, annK: QMatrix | None = None):
    """(v, R_L, conic) for the unique conic of W_K through two points."""
    N = annK if annK is not None else ann_basis(K)
    if exactnum.proportional(p1, p2) or not any(p1) or not any(p2):
        raise ValueError("need two distinct points")
    v = []
    for m in range(5):
        f = [1 if i == m else 0 for i in range(5)]
        B = pluecker_bilinear(f, N)
        v.append(sum(p1[a] * (B[a, b] + B[b, a]) * p2[b] for a in range(7) for b in range(7)))
    if not any(v):
        raise LineInWK("the line through the points lies in W_K")
    v = exactnum.primitive_vector(v)
    R, conic = baseweb(K, v, N)
    for p in (p1, p2):
        z = exactnum.solve_left(R, p)
        if z is None or conic.evaluate(z) != 0:
            raise AssertionError("point does not lie on the recovered conic")
    return v, R, conic


def conic_rational_points(conic: MultiPoly, rng: SeededRng, count: int, height: int = 20,
                          start: Sequence | None = None) -> list:
    """Rational points of a plane conic: a known or small-height one, the rest by projection."""
    C = QMatrix.from_rows([[conic.coeff(tuple(2 if k == i else 0 for k in range(3))) if i == j
                            else conic.coeff(tuple(1 if k in (i, j) else 0 for k in range(3))) / 2
                            for j in range(3)] for i in range(3)], 3)
    s0 = list(start) if start is not None else _conic_point(C, height)
    if s0 is None:
        return []
    pts = [exactnum.primitive_vector(s0)]
    for _ in range(4 * count):
        if len(pts) >= count:
            break
        s = _next_conic_point(C, s0, rng, 5)
        if s is not None and all(not exactnum.proportional(s, p) for p in pts):
            pts.append(s)
    return pts
