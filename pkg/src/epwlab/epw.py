"""EPW sextics, corank strata and first-order data at corank-3 points.

The sextic of a Lagrangian A is extracted from a chart: on {x_k != 0} the
vectors v ^ e_i ^ e_j with i, j != k frame F_v, and the 10x10 matrix of the
pairing between that frame and A has determinant x_k^4 times the sextic.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import dcover, exactnum, exterior, lagrangian, polyring
from .errors import BadSupports, NotInF, NotOnS, WrongCorank, ZeroDeterminant, ZeroVector
from .exactnum import QMatrix
from .exterior import AltK
from .lagrangian import Decomposition, Lagrangian
from .polyring import MultiPoly, PolyMatrix

XVARS = tuple(f"x{i}" for i in range(6))
WVARS = tuple(f"w{i}" for i in range(1, 6))


@dataclass(frozen=True)
class EPWSextic:
    poly: MultiPoly
    chart: int
    lagrangian_sha256: str

    def __call__(self, p: Sequence) -> Fraction:
        return self.poly.evaluate(p)

    def to_json(self):
        return {**self.poly.to_json(), "chart": self.chart, "lagrangian_sha256": self.lagrangian_sha256}

    @classmethod
    def from_json(cls, obj):
        return cls(MultiPoly.from_json(obj), int(obj["chart"]), obj["lagrangian_sha256"])


def chart_matrix(A: Lagrangian, k: int) -> PolyMatrix:
    """M(x)[a][(i, j)] = vol6(v ^ e_i ^ e_j ^ alpha_a), v = sum x_m e_m, pairs avoiding k."""
    if not 0 <= k < 6:
        raise ValueError("chart index must be in 0..5")
    pairs = [(i, j) for i in range(6) for j in range(i + 1, 6) if k not in (i, j)]
    idx3 = exterior.subset_index(6, 3)
    rows = []
    for a in range(10):
        alpha = A.basis.row(a)
        row = []
        for i, j in pairs:
            coeffs = []
            for m in range(6):
                if m in (i, j):
                    coeffs.append(0)
                    continue
                rest = tuple(sorted(set(range(6)) - {m, i, j}))
                trip = (m, i, j)
                inv = sum(1 for s in range(3) for t in range(s + 1, 3) if trip[s] > trip[t])
                sgn_trip = -1 if inv & 1 else 1
                srt = tuple(sorted(trip))
                coeffs.append(sgn_trip * exterior.merge_sign(srt, rest) * alpha[idx3[rest]])
            row.append(MultiPoly.linear(XVARS, coeffs))
        rows.append(row)
    return PolyMatrix.from_rows(XVARS, rows)


def sextic(A: Lagrangian, chart: int = 0) -> EPWSextic:
    """The normalized degree-6 equation of the EPW sextic of A."""
    M = chart_matrix(A, chart)
    det = polyring.poly_det(M)
    if det.is_zero():
        raise ZeroDeterminant("determinant vanishes identically")
    xk4 = MultiPoly.var(XVARS, chart) ** 4
    q = polyring.exact_divide(det, xk4)
    return EPWSextic(polyring.normalize(q), chart, A.sha256())


def sextic_all_charts(A: Lagrangian, charts=range(6)):
    """Sextics from several charts and whether they agree."""
    results = [sextic(A, k) for k in charts]
    agree = all(r.poly == results[0].poly for r in results)
    return results, agree


def sextic_value_at(A: Lagrangian, p: Sequence) -> Fraction:
    """det of the chart matrix at p divided by p_k^4, k the first nonzero coordinate.

    This is a nonzero constant multiple of the normalized sextic at p, so it
    decides vanishing without expanding the polynomial.
    """
    k = next((i for i, x in enumerate(p) if x), None)
    if k is None:
        raise ZeroVector("the zero vector is not a point")
    M = chart_matrix(A, k).evaluate(p)
    return exactnum.det_exact(M) / Fraction(p[k]) ** 4


def corank_at(A: Lagrangian, p: Sequence) -> int:
    return lagrangian.intersection_dim(A, p)


def restrict_to_line(poly: MultiPoly, p: Sequence, q: Sequence) -> list:
    """Coefficients (low to high) of t -> poly(p + t q)."""
    t = ("t",)
    images = [MultiPoly.linear(t, [Fraction(b)], Fraction(a)) for a, b in zip(p, q)]
    f = poly.substitute(images)
    deg = max(f.degree(), 0)
    return [f.coeff((e,)) for e in range(deg + 1)]


def line_points(S: EPWSextic, p: Sequence, q: Sequence) -> list:
    """Rational points of the sextic on the line through p and q."""
    coeffs = restrict_to_line(S.poly, p, q)
    pts = [[Fraction(a) + r * Fraction(b) for a, b in zip(p, q)] for r in polyring.rational_roots(coeffs)]
    # the point q itself (t = infinity) when the top coefficient drops
    if len(coeffs) < 7 and S(q) == 0:
        pts.append([Fraction(b) for b in q])
    return pts


@dataclass
class StratumEntry:
    point: tuple
    corank: int
    sextic_value: Fraction | None

    def to_json(self):
        return {"point": [exactnum.format_rational(x) for x in self.point], "corank": self.corank,
                "sextic_value": None if self.sextic_value is None else exactnum.format_rational(self.sextic_value)}


def stratum_report(A: Lagrangian, points, S: EPWSextic | None = None) -> list:
    out = []
    for p in points:
        p = tuple(Fraction(x) for x in p)
        out.append(StratumEntry(p, corank_at(A, p), None if S is None else S(p)))
    return out


# --- Pluecker forms and the maps tau, theta -----------------------------------

def _beta_lift(v0: AltK, alpha: Sequence):
    """Some 2-vector b of Q^6 with v0 ^ b = alpha, or None."""
    return exactnum.solve_left(exterior.wedge_matrix(v0, 2), alpha)


def pluecker_form(v0: Sequence, v: Sequence, alpha) -> Fraction:
    """vol6(v0 ^ v ^ b ^ b) where alpha = v0 ^ b."""
    v0v = AltK.vector(v0)
    coords = alpha.coords if isinstance(alpha, AltK) else alpha
    if not exterior.wedge(v0v, AltK(6, 3, coords)).is_zero():
        raise NotInF("alpha is not divisible by v0")
    b = _beta_lift(v0v, coords)
    return _pluecker_value(v0v, AltK.vector(v), AltK(6, 2, b))


def _pluecker_value(v0: AltK, v: AltK, b: AltK) -> Fraction:
    return exterior.vol6(exterior.wedge_all(v0, v, b, b))


def corank_three_kernel(A: Lagrangian, v0: Sequence) -> QMatrix:
    """Basis of A intersected with F_{v0}; WrongCorank unless it is 3-dimensional."""
    inter = exactnum.rowspace_intersection(A.basis, exterior.F_basis(AltK.vector(v0)))
    if inter.rows != 3:
        raise WrongCorank(f"corank at v0 is {inter.rows}, expected 3")
    return inter


@dataclass
class TauMap:
    matrix: QMatrix  # 5x6
    K_basis: QMatrix  # 3x20

    def to_json(self):
        return {"matrix": self.matrix.to_json(), "K_basis": self.K_basis.to_json(),
                "monomials": ["k1^2", "k1*k2", "k1*k3", "k2^2", "k2*k3", "k3^2"]}


def tau_map(A: Lagrangian, D: Decomposition, K_basis: QMatrix | None = None) -> TauMap:
    """Matrix of v -> (restriction of the Pluecker form of v to K) on the V0 basis."""
    K = K_basis if K_basis is not None else corank_three_kernel(A, D.v0)
    v0 = D.v0_vec()
    lifts = [AltK(6, 2, _beta_lift(v0, K.row(i))) for i in range(3)]
    rows = []
    for u in D.u_rows():
        uv = AltK.vector(u)
        q = lambda b: _pluecker_value(v0, uv, b)
        diag = [q(b) for b in lifts]
        row = []
        for a, b in dcover.sym2_pairs(3):
            row.append(diag[a] if a == b else q(lifts[a] + lifts[b]) - diag[a] - diag[b])
        rows.append(row)
    return TauMap(QMatrix.from_rows(rows, 6), K)


class Orbit(enum.Enum):
    OpenOrbit = "OpenOrbit"
    ClosedOrbit = "ClosedOrbit"
    NonInjective = "NonInjective"
    Anomalous = "Anomalous"


@dataclass
class AlohaResult:
    kind: Orbit
    annihilator_rank: int | None = None
    annihilator: QMatrix | None = None

    def __str__(self):
        if self.kind is Orbit.Anomalous:
            return f"Anomalous({self.annihilator_rank})"
        return self.kind.value


def annihilator_form(tau: TauMap) -> QMatrix:
    """The symmetric 3x3 tensor in Sym^2 K killed by every tau(v)."""
    a = exactnum.kernel_basis(tau.matrix)
    if a.rows != 1:
        raise WrongCorank(f"annihilator has dimension {a.rows}")
    c = a.row(0)
    return QMatrix.from_rows([[c[0], c[1], c[2]], [c[1], c[3], c[4]], [c[2], c[4], c[5]]], 3)


def aloha_classify(A: Lagrangian, D: Decomposition) -> AlohaResult:
    tau = tau_map(A, D)
    if exactnum.rank(tau.matrix) < 5:
        return AlohaResult(Orbit.NonInjective)
    S = annihilator_form(tau)
    r = exactnum.rank(S)
    kind = {3: Orbit.OpenOrbit, 1: Orbit.ClosedOrbit}.get(r, Orbit.Anomalous)
    return AlohaResult(kind, r, S)


def theta_restriction(A: Lagrangian, D: Decomposition, K_basis: QMatrix | None = None) -> QMatrix:
    """55x6 matrix restricting quadratic forms on A (monomials y_a y_b) to K."""
    K = K_basis if K_basis is not None else corank_three_kernel(A, D.v0)
    coords = [exactnum.solve_left(A.basis, K.row(i)) for i in range(3)]
    rows = []
    for a, b in dcover.sym2_pairs(10):
        row = []
        for i, j in dcover.sym2_pairs(3):
            if i == j:
                row.append(coords[i][a] * coords[i][b])
            else:
                row.append(coords[i][a] * coords[j][b] + coords[j][a] * coords[i][b])
        rows.append(row)
    return QMatrix.from_rows(rows, 6)


def delta_tangent(A: Lagrangian, D: Decomposition) -> QMatrix:
    """Kernel of (q, v) -> theta(q) - tau(v) on quadratic forms on A plus V0 (60-dimensional)."""
    K = corank_three_kernel(A, D.v0)
    theta = theta_restriction(A, D, K)
    tau = tau_map(A, D, K).matrix
    return exactnum.left_kernel(theta.vstack(tau.scale(-1)))


# --- the symmetric matrix of the family near v0 --------------------------------

def gamma_symdet(A: Lagrangian, D: Decomposition) -> dcover.SymDet:
    """Symmetric matrix Q - Phi(w) whose kernel at w is A meet F_{v0 + w}.

    Rows and columns are indexed by the basis 2-vectors a of V0 (through the
    graph a -> v0 ^ a + q(a) of A); Q_ab = vol6(v0 ^ a ^ q(b)) and
    Phi(w)_ab = vol6(v0 ^ w ^ a ^ b) for w in V0.
    """
    T = lagrangian.graph_map(A, D)
    v0 = D.v0_vec()
    lift2, lift3 = D.lift(2), D.lift(3)
    etas = [AltK(6, 2, lift2.row(i)) for i in range(10)]
    images = [AltK(6, 3, lift3.vec_mul(T.col(j))) for j in range(10)]
    v0eta = [exterior.wedge(v0, e) for e in etas]
    Q = [[exterior.vol6(exterior.wedge(v0eta[a], images[b])) for b in range(10)] for a in range(10)]
    us = [AltK.vector(u) for u in D.u_rows()]
    entries = []
    for a in range(10):
        for b in range(10):
            coeffs = [-exterior.vol6(exterior.wedge_all(v0, u, etas[a], etas[b])) for u in us]
            entries.append(MultiPoly.linear(WVARS, coeffs, Q[a][b]))
    return dcover.SymDet(PolyMatrix(WVARS, 10, 10, entries))


def affine_point(D: Decomposition, w: Sequence) -> list:
    """v0 + sum w_m u_m."""
    return [a + b for a, b in zip(D.v0, D.to_V(w))]


# --- belcalcolo spot-check ---------------------------------------------------

@dataclass
class GmapResult:
    point: tuple
    ok: bool
    c: Fraction
    c_swapped: Fraction
    corank: int
    sextic_value: Fraction | None


def _adapted_pair(beta: AltK, beta2: AltK):
    """Basis v1..v5 of V0 (V0 coordinates) with beta = v1^v2^v3, beta2 = v1^v4^v5."""
    U, U2 = exterior.support(beta), exterior.support(beta2)
    if U.dim != 3 or U2.dim != 3:
        raise NotOnS("points must be decomposable")
    inter = U.intersect(U2)
    if inter.dim != 1:
        raise BadSupports(f"supports meet in dimension {inter.dim}, expected 1")
    v1 = list(inter.basis.row(0))

    def complete(Usp, b):
        rows = [v1]
        for i in range(Usp.dim):
            r = list(Usp.basis.row(i))
            if exactnum.rank(QMatrix.from_rows(rows + [r], 5)) > len(rows):
                rows.append(r)
        w2, w3 = rows[1], rows[2]
        prod = exterior.wedge_all(*[AltK.vector(x) for x in (v1, w2, w3)])
        lam = next(x / y for x, y in zip(b.coords, prod.coords) if y)
        return [lam * x for x in w2], w3

    v2, v3 = complete(U, beta)
    v4, v5 = complete(U2, beta2)
    return v1, v2, v3, v4, v5


def gmap_point_check(A: Lagrangian, D: Decomposition, beta: AltK, beta2: AltK,
                     S: EPWSextic | None = None) -> GmapResult:
    """The point [c v0 + v1] attached to two points of the K3 surface, and whether it lies on Y_A."""
    K = lagrangian.kernel_plane(A, D)
    for b in (beta, beta2):
        if any(exterior.dual_pair_5(AltK(5, 2, K.row(i)), b) for i in range(3)):
            raise NotOnS("point is not orthogonal to the kernel plane")
    v1, v2, v3, v4, v5 = _adapted_pair(beta, beta2)
    v0 = D.v0_vec()
    lifted = [AltK.vector(D.to_V(x)) for x in (v1, v2, v3, v4, v5)]
    s0 = exterior.vol6(exterior.wedge_all(v0, *lifted))
    if s0 == 0:
        raise BadSupports("supports do not span V0")
    v1 = [x * s0 for x in v1]
    alpha = lagrangian.kill_lift(A, D, beta.coords)
    alpha2 = lagrangian.kill_lift(A, D, beta2.coords)
    if alpha is None or alpha2 is None:
        raise NotOnS("no lift into A")

    def r(a, b):
        a6 = AltK(6, 2, D.lift(2).vec_mul(a))
        b6 = AltK(6, 3, D.lift(3).vec_mul(b.coords))
        return exterior.vol6(exterior.wedge_all(v0, a6, b6))

    if r(alpha, beta) or r(alpha2, beta2):
        raise NotOnS("point does not lie on the r-quadric")
    c, c2 = r(alpha, beta2), r(alpha2, beta)
    point = tuple(c * a + b for a, b in zip(D.v0, D.to_V(v1)))
    k = corank_at(A, point)
    val = sextic_value_at(A, point) if S is None else S(point)
    ok = k >= 1 and val == 0
    return GmapResult(point, ok, c, c2, k, val)
