"""The verification battery behind ``epw-lab verify``.

Each check runs one acceptance criterion from its own random stream (derived
from the suite seed and the check id) and returns a pass/fail verdict with a
short detail string.  Library calls go through module attributes so that
tests can monkeypatch a kernel and watch the matching check fail.
"""
from __future__ import annotations

import hashlib
import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

from . import dcover, epw, exactnum, exterior, k3, lagrangian, polyring
from .errors import EPWLabError, SearchExhausted, ZeroDeterminant
from .exactnum import QMatrix, SeededRng
from .exterior import AltK
from .lagrangian import Decomposition
from .polyring import MultiPoly

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

RANGODUE_GOLDEN = ("x*xi1 + y*xi2", "y*xi1 + z*xi2", "xi1^2 - z", "xi1*xi2 + y", "xi2^2 - x")


@dataclass
class Check:
    id: str
    suite: str
    criterion: int
    run: Callable[[SeededRng], tuple]
    title: str
    limit_s: float | None = None  # wall-clock budget; exceeding it fails the check


@dataclass
class CheckResult:
    id: str
    status: str
    detail: str
    millis: int
    criterion: int = 0

    def to_json(self):
        return {"id": self.id, "status": self.status, "detail": self.detail, "millis": self.millis}


@dataclass
class VerifyReport:
    suite: str
    seed: int
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_json(self):
        return {"suite": self.suite, "seed": self.seed, "checks": [c.to_json() for c in self.checks]}

    def to_text(self) -> str:
        lines = [f"suite {self.suite} (seed {self.seed})"]
        for c in self.checks:
            lines.append(f"  {c.status.upper():12s} {c.id:28s} {c.millis:8d} ms  {c.detail}")
        return "\n".join(lines)


def check_rng(seed: int, check_id: str) -> SeededRng:
    h = hashlib.sha256(f"{seed}:{check_id}".encode()).digest()
    return SeededRng(int.from_bytes(h[:8], "big"))


# --- individual checks ------------------------------------------------------

def rangodue_matrix() -> dcover.SymDet:
    return dcover.SymDet.parse(("x", "y", "z"), [["x", "y"], ["y", "z"]])


def check_rangodue(rng):
    t0 = time.perf_counter()
    cov = dcover.cover_ideal(rangodue_matrix())
    got = {polyring.normalize(g) for g in cov.ideal.gens}
    want = {polyring.normalize(MultiPoly.parse(s, cov.ideal.vars)) for s in RANGODUE_GOLDEN}
    secs = time.perf_counter() - t0
    return got == want and secs < 1, f"{len(got)} generators, equal={got == want}, {secs:.3f}s"


def check_cramer(rng):
    out = []
    for d in (3, 4):
        S = dcover.SymDet.generic(d)
        out.append((d, dcover.cramer_holds(S.M), dcover.det_in_cover_ideal(S)))
    ok = all(a and b for _, a, b in out)
    return ok, "; ".join(f"d={d}: adjugate {a}, det in ideal {b}" for d, a, b in out)


def check_associativity(rng, points: int = 20):
    bad = []
    for d in (3, 4):
        S = dcover.SymDet.generic(d)
        for i, j, k in itertools.product(range(d), repeat=3):
            _, res = dcover.associativity_witness(S, i, j, k)
            if any(not r.is_zero() for r in res):
                bad.append((d, i, j, k))
    nbad10 = 0
    for _ in range(points):
        M = rng.symmetric(10)
        adj = polyring.numeric_adjugate(M)
        cache = {}
        for i, j, k in itertools.product(range(10), repeat=3):
            if any(dcover.associativity_residual_at(M, i, j, k, adj, cache)):
                nbad10 += 1
    return not bad and not nbad10, f"symbolic failures {len(bad)}, d=10 failures {nbad10} over {points} points"


def check_universal(rng):
    minors, comps = dcover.universal_quadrics()
    monos = polyring.monomials(len(dcover.UNIVERSAL_VARS), 2)
    a, _ = polyring.coefficient_matrix(minors, monos)
    b, _ = polyring.coefficient_matrix(comps, monos)
    ra, rb, rab = exactnum.rank(a), exactnum.rank(b), exactnum.rank(a.vstack(b))
    return (ra, rb, rab) == (9, 9, 9), f"ranks minors={ra}, cover={rb}, combined={rab} over {len(monos)} monomials"


def check_flop(rng):
    ok = dcover.flop_identity_check(rng, 50)
    return ok, "50 random rank-one points"


def check_sextic_charts(rng, count: int = 10):
    fails = []
    for n in range(count):
        A = lagrangian.random_lagrangian(rng)
        try:
            s0, s5 = epw.sextic(A, 0), epw.sextic(A, 5)
        except EPWLabError as e:
            fails.append(f"#{n}: {type(e).__name__}")
            continue
        p0, p5 = s0.poly, s5.poly
        if not (p0.is_homogeneous() and p0.degree() == 6 and p5.degree() == 6 and p0 == p5):
            fails.append(f"#{n}: charts disagree")
    return not fails, f"{count - len(fails)}/{count} agree" + (f" ({', '.join(fails)})" if fails else "")


def check_degenerate(rng):
    A = lagrangian.wedge3_of(Decomposition.standard().u_rows())
    x0_6 = MultiPoly.var(epw.XVARS, 0) ** 6
    ok1 = epw.sextic(A, 0).poly == x0_6
    try:
        epw.sextic(lagrangian.pathological((1, 0, 0, 0, 0, 0)), 0)
        ok2 = False
    except ZeroDeterminant:
        ok2 = True
    return ok1 and ok2, f"wedge3(V0) -> x0^6: {ok1}; F_e0 -> ZeroDeterminant: {ok2}"


def check_vanishing(rng, instances: int = 5, npoints: int = 50):
    mismatches, on_y, total = 0, 0, 0
    for _ in range(instances):
        forced = [rng.nonzero_vector(6) for _ in range(9)]
        A = lagrangian.lagrangian_through_points(rng, forced, [1] * 8 + [2])
        S = epw.sextic(A, 0)
        pts = forced + [rng.nonzero_vector(6) for _ in range(npoints - len(forced))]
        for p in pts:
            zero = S(p) == 0
            k = epw.corank_at(A, p)
            on_y += zero
            total += 1
            if zero != (k >= 1):
                mismatches += 1
    return mismatches == 0, f"{total} points, {on_y} on the sextic, {mismatches} mismatches"


def check_delta_battery(rng, seeds: int = 5):
    rows = []
    for _ in range(seeds):
        A, cert = lagrangian.build_delta_lagrangian(rng)
        D = cert.D
        k = epw.corank_at(A, D.v0)
        tau = epw.tau_map(A, D)
        orbit = epw.aloha_classify(A, D)
        tan = epw.delta_tangent(A, D).rows
        ok = (k == 3 and cert.emptiness_degree is not None and cert.emptiness_degree <= 4
              and exactnum.rank(tau.matrix) == 5 and orbit.kind is epw.Orbit.OpenOrbit and tan == 54)
        rows.append((ok, f"corank {k}, cert d={cert.emptiness_degree}, tau rank {exactnum.rank(tau.matrix)}, "
                         f"{orbit}, tangent {tan}"))
    return all(r[0] for r in rows), "; ".join(r[1] for r in rows)


def condition_c_holds(K: QMatrix, kappa0) -> bool:
    """K meets u1 ^ V0 + u2 ^ V0 only in kappa0 = u1 ^ u2."""
    U = exterior.support(AltK(5, 2, kappa0)).vectors()
    span = [exterior.wedge(u, AltK.basis(5, (m,))).coords for u in U for m in range(5)]
    inter = exactnum.rowspace_intersection(K, QMatrix.from_rows(span, 10))
    return inter.rows == 1 and exactnum.proportional(inter.row(0), kappa0)


def check_closed_orbit(rng):
    A, cert, kappa0, d = lagrangian.build_single_point_lagrangian(rng)
    cond = condition_c_holds(cert.K, kappa0)
    res = epw.aloha_classify(A, cert.D)
    ok = cond and res.kind is epw.Orbit.ClosedOrbit and res.annihilator_rank == 1
    return ok, f"single-point certificate d={d}, contact condition {cond}, {res} (annihilator rank {res.annihilator_rank})"


def _k3_numerics_one(A, D):
    data = k3.k3_data(A, D)
    wk, s = data.wk_ideal, data.s_ideal
    wk_n = polyring.span_rank(wk.gens)
    s_n = polyring.span_rank(s.gens)
    wk_fit = polyring.hilbert_fit(wk)
    s_fit = polyring.hilbert_fit(s)
    hf1 = polyring.hilbert_function(s, 1)
    R = data.r_form
    ok = (wk_n == 5 and wk_fit == (3, 5) and s_n == 6 and hf1 == 7 and s_fit == (2, 10)
          and R.is_symmetric() and exactnum.det_exact(R) != 0)
    return ok, f"wk {wk_n} gens fit {wk_fit}; s {s_n} gens HF(1)={hf1} fit {s_fit}"


def check_k3_numerics(rng, instances: int = 2):
    rows = []
    for _ in range(instances):
        A, cert = lagrangian.build_delta_lagrangian(rng)
        t0 = time.perf_counter()
        ok, detail = _k3_numerics_one(A, cert.D)
        secs = time.perf_counter() - t0
        rows.append((ok and secs < 120, f"{detail} ({secs:.1f}s)"))
    return all(r[0] for r in rows), "; ".join(r[1] for r in rows)


def check_pellegrini(rng, instances: int = 2):
    rows = []
    for _ in range(instances):
        A, cert = lagrangian.build_delta_lagrangian(rng)
        data = k3.k3_data(A, cert.D)
        A2 = k3.pellegrini(data.K, data.r_form)
        data2 = k3.k3_data(A2, Decomposition.standard())
        same = polyring.same_span(data.s_ideal.gens, data2.s_ideal.gens)
        lag = lagrangian.is_lagrangian(A2.basis)
        k = epw.corank_at(A2, (1, 0, 0, 0, 0, 0))
        rows.append((same and lag and k == 3, f"spans equal {same}, Lagrangian {lag}, corank {k}"))
    return all(r[0] for r in rows), "; ".join(r[1] for r in rows)


def check_independence(rng, instances: int = 2, alternatives: int = 5):
    good, total = 0, 0
    for _ in range(instances):
        A, cert = lagrangian.build_delta_lagrangian(rng)
        for _ in range(alternatives):
            D2 = lagrangian.random_decomposition(rng, v0=cert.D.v0)
            res = k3.decomposition_independence(A, cert.D, D2)
            good += bool(res)
            total += 1
    return good == total, f"{good}/{total} alternative complements agree"


def check_belcalcolo(rng, npoints: int = 6, want: int = 3):
    A, data, pts = k3.designed_instance(rng, npoints)
    results = []
    for p, q in itertools.combinations(pts, 2):
        if k3.support_overlap(data.annK, p, q) != 1:
            continue
        r = epw.gmap_point_check(A, data.D, data.to_vector(p), data.to_vector(q))
        results.append(r.ok and r.c == r.c_swapped and r.sextic_value == 0)
        if len(results) >= 2 * want:
            break
    ok = len(results) >= want and all(results)
    return ok, f"{sum(results)}/{len(results)} pairs land on the sextic with symmetric c"


def check_appendix(rng, nv: int = 10, nround: int = 5, samples: int = 20):
    A, cert = lagrangian.build_delta_lagrangian(rng)
    data = k3.k3_data(A, cert.D)
    planes = 0
    for _ in range(nv):
        R, conic = k3.baseweb(data.K, rng.nonzero_vector(5), data.annK)
        planes += R.rows == 3 and conic.degree() == 2
    pts = k3.wk_rational_points(data.K, rng, 3, annK=data.annK)
    rounds = 0
    for n in range(nround):
        U = exterior.support(data.to_vector(pts[n % len(pts)])).basis
        v = exactnum.primitive_vector(U.vec_mul(rng.nonzero_vector(3, 5)))
        R, conic = k3.baseweb(data.K, v, data.annK)
        z0 = exactnum.solve_left(R, pts[n % len(pts)])
        zs = k3.conic_rational_points(conic, rng, 2, start=z0)
        p1, p2 = [exactnum.primitive_vector(R.vec_mul(z)) for z in zs]
        v2, _, _ = k3.conic_through(data.K, p1, p2, data.annK)
        rounds += exactnum.proportional(v, v2)
    _, scert, kappa0, _ = lagrangian.build_single_point_lagrangian(rng)
    rep = k3.singfano_check(scert.K, kappa0, rng, samples)
    ok = planes == nv and rounds == nround and rep.ok and len(rep.sample_ranks) == samples
    return ok, (f"baseweb conics {planes}/{nv}; conic roundtrips {rounds}/{nround}; "
                f"ker nu dim {rep.ker_nu_dim}, singular point Jacobian rank {rep.sing_jacobian_rank}, "
                f"{sum(r == 3 for r in rep.sample_ranks)}/{len(rep.sample_ranks)} samples smooth")


def check_smoothness(rng, seeds: int = 3):
    verdicts = []
    for _ in range(seeds):
        A, cert = lagrangian.build_delta_lagrangian(rng)
        germ = epw.gamma_symdet(A, cert.D)
        verdicts.append(dcover.smoothness_test(germ, [0] * 5))
    origin = dcover.smoothness_test(rangodue_matrix(), [0, 0, 0])
    ok = all(v is dcover.Smoothness.SingularOnCover for v in verdicts) and origin is dcover.Smoothness.SmoothOnCover
    return ok, f"corank-3 points: {[v.value for v in verdicts]}; rangodue origin: {origin.value}"


CHECKS = [
    Check("rangodue-golden", "dcover", 1, check_rangodue, "cover ideal of [[x,y],[y,z]]", 1),
    Check("cramer-identity", "dcover", 2, check_cramer, "adjugate identity for generic 3x3 and 4x4", 10),
    Check("associativity", "dcover", 3, check_associativity, "associativity witnesses", 60),
    Check("universal-model", "dcover", 4, check_universal, "universal corank-3 quadric spans", 5),
    Check("flop-identities", "dcover", 5, check_flop, "small resolutions and flop", 5),
    Check("sextic-charts", "epw", 6, check_sextic_charts, "sextic degree and chart agreement", 180),
    Check("degenerate-sextics", "epw", 7, check_degenerate, "degenerate Lagrangians", 30),
    Check("vanishing-corank", "epw", 8, check_vanishing, "sextic vanishing versus corank"),
    Check("delta-battery", "epw", 9, check_delta_battery, "corank-3 construction battery", 120),
    Check("closed-orbit", "epw", 10, check_closed_orbit, "closed orbit instance"),
    Check("k3-numerics", "k3", 11, check_k3_numerics, "Hilbert data of W_K and S"),
    Check("pellegrini-roundtrip", "k3", 12, check_pellegrini, "inverse construction roundtrip"),
    Check("decomposition-independence", "k3", 13, check_independence, "independence of the complement"),
    Check("belcalcolo", "k3", 14, check_belcalcolo, "pairs of K3 points land on the sextic"),
    Check("appendix-geometry", "k3", 15, check_appendix, "planes, conics and the singular point of W_K", 180),
    Check("smoothness-classifier", "dcover", 16, check_smoothness, "smoothness classifier"),
]

SUITES = ("all", "dcover", "epw", "k3")

# budget for the whole battery
SUITE_LIMIT_S = 15 * 60


def get_check(check_id: str) -> Check:
    for c in CHECKS:
        if c.id == check_id:
            return c
    raise KeyError(check_id)


def run_check(check: Check, seed: int = 0) -> CheckResult:
    t0 = time.perf_counter()
    try:
        ok, detail = check.run(check_rng(seed, check.id))
        status = PASS if ok else FAIL
    except SearchExhausted as e:
        status, detail = INCONCLUSIVE, f"search exhausted: {e}"
    except Exception as e:  # a crash is a failed check, reported rather than raised
        status, detail = FAIL, f"{type(e).__name__}: {e}"
    millis = int((time.perf_counter() - t0) * 1000)
    if status == PASS and check.limit_s is not None and millis > check.limit_s * 1000:
        status, detail = FAIL, f"{detail} (over the {check.limit_s} s budget)"
    return CheckResult(check.id, status, str(detail), millis, check.criterion)


def run_suite(suite: str = "all", seed: int = 0) -> VerifyReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    chosen = [c for c in CHECKS if suite == "all" or c.suite == suite]
    report = VerifyReport(suite, seed)
    for c in sorted(chosen, key=lambda c: c.id):
        report.checks.append(run_check(c, seed))
    return report
