import pytest
from hypothesis import given, settings, strategies as st

from epwlab import exactnum, exterior, k3, lagrangian, polyring
from epwlab.errors import ContainsV0, NotInvertible, NotOnS, SearchExhausted
from epwlab.exactnum import QMatrix, SeededRng
from epwlab.exterior import AltK
from epwlab.lagrangian import Decomposition

seeds = st.integers(0, 10**6)


@pytest.fixture(scope="module")
def designed():
    return k3.designed_instance(SeededRng(11), npoints=4)


@pytest.fixture(scope="module")
def sigma_delta():
    A, dcert, tcert = lagrangian.build_sigma_delta_lagrangian(SeededRng(6))
    return k3.k3_data(A, dcert.D), tcert


def test_annihilator_orthogonal_to_K(delta_k3):
    d = delta_k3
    assert d.annK.shape == (7, 10) and exactnum.rank(d.annK) == 7
    assert (d.K @ exterior.pairing_matrix() @ d.annK.transpose()).is_zero()


def test_frame_depends_only_on_rowspace(delta_k3):
    K = delta_k3.K
    mixed = QMatrix.from_rows([[2, 1, 0], [0, 1, 0], [1, 1, 1]], 3) @ K
    assert k3.ann_basis(mixed) == delta_k3.annK


def test_ideal_sizes(delta_k3):
    d = delta_k3
    assert len(d.wk_ideal.gens) == 5 and polyring.span_rank(d.wk_ideal.gens) == 5
    assert len(d.s_ideal.gens) == 6 and polyring.span_rank(d.s_ideal.gens) == 6
    assert d.r_form.is_symmetric() and exactnum.det_exact(d.r_form) != 0
    assert d.r_quadric == k3.quadric(d.r_form)


def test_pluecker_quadrics_vanish_on_decomposables():
    qs = k3.pluecker_quadrics()
    rng = SeededRng(0)
    for _ in range(5):
        w = exterior.wedge_all(*[AltK.vector(rng.vector(5, 4)) for _ in range(3)])
        assert all(q.evaluate(w.coords) == 0 for q in qs)
    # e012 + e013 is decomposable, e012 + e034 is not
    assert not any(q.evaluate((AltK.basis(5, (0, 1, 2)) + AltK.basis(5, (0, 1, 3))).coords) for q in qs)
    assert any(q.evaluate((AltK.basis(5, (0, 1, 2)) + AltK.basis(5, (0, 3, 4))).coords) for q in qs)


def test_r_form_independent_of_lift(delta_k3):
    # alpha_a is only defined up to K; shifting by K leaves r unchanged
    d = delta_k3
    D = d.D
    v0 = D.v0_vec()
    betas = [AltK(6, 3, D.lift(3).vec_mul(d.annK.row(i))) for i in range(7)]
    for i in range(3):
        k = AltK(6, 2, D.lift(2).vec_mul(d.K.row(i)))
        assert all(exterior.vol6(exterior.wedge_all(v0, k, b)) == 0 for b in betas)
    for a in range(7):
        alpha = lagrangian.kill_lift(d.A, D, d.annK.row(a))
        shifted = [x + y for x, y in zip(alpha, d.K.vec_mul([1, -2, 3]))]
        lhs = [exterior.vol6(exterior.wedge_all(v0, AltK(6, 2, D.lift(2).vec_mul(shifted)), b)) for b in betas]
        assert lhs == list(d.r_form.row(a))


def test_independence_same_decomposition(delta_instance):
    A, cert = delta_instance
    res = k3.decomposition_independence(A, cert.D, cert.D)
    assert res and res.spans_equal and res.r_difference_in_pluecker_span
    assert k3.transport_matrix(cert.D, cert.D) == QMatrix.identity(5)


@settings(max_examples=3)
@given(seeds)
def test_independence_random_complement(seed):
    A, cert = lagrangian.build_delta_lagrangian(SeededRng(3))
    D2 = lagrangian.random_decomposition(SeededRng(seed), 5, v0=cert.D.v0)
    assert k3.decomposition_independence(A, cert.D, D2)


def test_transport_needs_common_point(delta_instance):
    _, cert = delta_instance
    D2 = lagrangian.random_decomposition(SeededRng(1), 5, v0=[0, 1, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        k3.transport_matrix(cert.D, D2)


def test_theta_point_is_tangent(sigma_delta):
    data, tcert = sigma_delta
    y = k3.theta_point(data, tcert.W)
    assert data.s_ideal.vanishes_at(y)
    assert k3.tangency_check(data, y) == k3.Tangency.Tangent
    assert polyring.jacobian_rank_at(data.s_ideal, y) == 3


def test_theta_point_rejects_v0(sigma_delta):
    data, _ = sigma_delta
    W = QMatrix.from_rows([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
    with pytest.raises(ContainsV0):
        k3.theta_point(data, W)


def test_theta_point_not_on_S(delta_k3):
    W = QMatrix.from_rows([[1, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]])
    with pytest.raises(NotOnS):
        k3.theta_point(delta_k3, W)


def test_designed_points_transverse(designed):
    A, data, pts = designed
    assert len(pts) == 4
    for y in pts:
        assert data.s_ideal.vanishes_at(y)
        assert k3.tangency_check(data, y) == k3.Tangency.Transverse
        assert polyring.jacobian_rank_at(data.s_ideal, y) == 4


def test_tangency_rejects_points_off_S(delta_k3):
    basis = [[int(i == j) for j in range(7)] for i in range(7)]
    y = next(e for e in basis if not delta_k3.s_ideal.vanishes_at(e))
    with pytest.raises(NotOnS):
        k3.tangency_check(delta_k3, y)


def test_pellegrini_roundtrip(delta_k3):
    d = delta_k3
    A2 = k3.pellegrini(d.K, d.r_form)
    assert lagrangian.is_lagrangian(A2)
    d2 = k3.k3_data(A2, Decomposition.standard())
    assert exactnum.same_rowspace(d2.K, d.K)
    assert d2.r_form == d.r_form


def test_pellegrini_rejects_singular_R(delta_k3):
    with pytest.raises(NotInvertible):
        k3.pellegrini(delta_k3.K, QMatrix.zeros(7, 7))


@settings(max_examples=5)
@given(seeds)
def test_wk_points_satisfy_ideal(seed):
    _, cert = lagrangian.build_delta_lagrangian(SeededRng(3))
    N = k3.ann_basis(cert.K)
    wk = k3.wk_ideal(cert.K, N)
    for y in k3.wk_rational_points(cert.K, SeededRng(seed), 3, annK=N):
        assert wk.vanishes_at(y)
        assert exterior.is_decomposable(AltK(5, 3, N.vec_mul(y)))


def test_wk_points_have_line_overlaps(delta_k3):
    d = delta_k3
    pts = k3.wk_rational_points(d.K, SeededRng(0), 20, annK=d.annK)
    assert len(pts) == 20
    assert any(k3.support_overlap(d.annK, p, q) == 1 for i, p in enumerate(pts) for q in pts[i + 1:])


def test_wk_points_search_exhausted(delta_k3):
    with pytest.raises(SearchExhausted):
        k3.wk_rational_points(delta_k3.K, SeededRng(0), 5, retries=0, annK=delta_k3.annK)


def test_baseweb_scaling_invariance(delta_k3):
    d = delta_k3
    v = [1, 2, -1, 0, 3]
    R1, c1 = k3.baseweb(d.K, v, d.annK)
    R2, c2 = k3.baseweb(d.K, [-3 * x for x in v], d.annK)
    assert exactnum.same_rowspace(R1, R2)
    assert c1.degree() == 2 and c2.degree() == 2
    if R1 == R2:
        assert c1 == c2


def test_baseweb_rejects_zero(delta_k3):
    with pytest.raises(ValueError):
        k3.baseweb(delta_k3.K, [0] * 5, delta_k3.annK)


def test_conic_through_recovers_v(delta_k3):
    d = delta_k3
    rng = SeededRng(8)
    p = k3.wk_rational_points(d.K, rng, 1, annK=d.annK)[0]
    U = exterior.support(d.to_vector(p)).basis
    v = exactnum.primitive_vector(U.vec_mul([1, 2, -1]))
    R, conic = k3.baseweb(d.K, v, d.annK)
    z0 = exactnum.solve_left(R, p)
    zs = k3.conic_rational_points(conic, rng, 2, start=z0)
    assert len(zs) == 2 and all(conic.evaluate(z) == 0 for z in zs)
    p1, p2 = [exactnum.primitive_vector(R.vec_mul(z)) for z in zs]
    v2, _, _ = k3.conic_through(d.K, p1, p2, d.annK)
    assert exactnum.proportional(v, v2)


def test_conic_through_same_point(delta_k3):
    d = delta_k3
    p = k3.wk_rational_points(d.K, SeededRng(9), 1, annK=d.annK)[0]
    with pytest.raises(ValueError):
        k3.conic_through(d.K, p, [2 * x for x in p], d.annK)


def test_singular_point_of_wk():
    rng = SeededRng(4)
    _, cert, kappa0, _ = lagrangian.build_single_point_lagrangian(rng)
    rep = k3.singfano_check(cert.K, kappa0, rng, samples=5)
    assert rep.ker_nu_dim == 1 and rep.sing_jacobian_rank < 3
    assert rep.sample_ranks == [3] * len(rep.sample_ranks) and rep.ok


def test_support_overlap(designed):
    _, data, pts = designed
    assert k3.support_overlap(data.annK, pts[0], pts[0]) == 3
    assert all(1 <= k3.support_overlap(data.annK, pts[0], q) <= 3 for q in pts[1:])


def test_json_layout(delta_k3):
    doc = delta_k3.to_json()
    assert doc["frame"]["vars"] == list(k3.YVARS)
    assert len(doc["s_ideal"]["gens"]) == 6
