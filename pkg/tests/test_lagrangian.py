import pytest
from hypothesis import given, settings, strategies as st

from epwlab import exactnum, exterior, lagrangian
from epwlab.errors import BadDimension, NotSymmetric, NotTransverse
from epwlab.exactnum import QMatrix, SeededRng
from epwlab.exterior import AltK
from epwlab.lagrangian import Decomposition, Lagrangian

seeds = st.integers(0, 10**6)


def sym_from(values, n=10):
    it = iter(values)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = next(it)
    return QMatrix.from_rows(rows, n)


sym10 = st.lists(st.integers(-3, 3), min_size=55, max_size=55).map(sym_from)


@given(sym10)
def test_graph_is_lagrangian(Q):
    A = lagrangian.graph_lagrangian(Decomposition.standard(), Q)
    assert lagrangian.is_lagrangian(A)


@given(sym10)
def test_corank_at_v0_equals_corank_of_Q(Q):
    A = lagrangian.graph_lagrangian(Decomposition.standard(), Q)
    assert lagrangian.intersection_dim(A, [1, 0, 0, 0, 0, 0]) == 10 - exactnum.rank(Q)


@settings(max_examples=10)
@given(seeds, sym10)
def test_graph_map_recovers_Q(seed, Q):
    D = lagrangian.random_decomposition(SeededRng(seed), 5)
    A = lagrangian.graph_lagrangian(D, Q)
    assert lagrangian.graph_map(A, D) == exterior.pairing_matrix().transpose() @ Q


def test_asymmetric_Q_rejected():
    Q = QMatrix.from_rows([[1 if (i, j) == (0, 1) else 0 for j in range(10)] for i in range(10)], 10)
    with pytest.raises(NotSymmetric):
        lagrangian.graph_lagrangian(Decomposition.standard(), Q)


def test_non_lagrangian_detected():
    # e012 and e345 pair nontrivially
    subs = exterior.subsets(6, 3)[:9] + ((3, 4, 5),)
    rows = [list(AltK.basis(6, s).coords) for s in subs]
    M = QMatrix.from_rows(rows, 20)
    assert lagrangian.isotropy_defect(M) is not None
    assert not lagrangian.is_lagrangian(M)


def test_basis_shape_enforced():
    with pytest.raises(BadDimension):
        Lagrangian(QMatrix.zeros(9, 20))


def test_decomposition_must_span():
    with pytest.raises(BadDimension):
        Decomposition((1, 0, 0, 0, 0, 0), QMatrix.identity(6).select_rows(range(5)))


@settings(max_examples=10)
@given(seeds)
def test_random_lagrangian(seed):
    A = lagrangian.random_lagrangian(SeededRng(seed))
    assert lagrangian.is_lagrangian(A)


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6).filter(any))
def test_pathological(v):
    A = lagrangian.pathological(v)
    assert lagrangian.is_lagrangian(A)
    assert lagrangian.intersection_dim(A, v) == 10


def test_wedge3_is_lagrangian_and_theta():
    rows = QMatrix.identity(6).select_rows(range(1, 6))
    A = lagrangian.wedge3_of([rows.row(i) for i in range(5)])
    assert lagrangian.is_lagrangian(A)
    assert lagrangian.theta_check(A, rows.select_rows([0, 2, 4]))
    assert not lagrangian.is_transverse_to_wedge3(A, Decomposition.standard())
    with pytest.raises(NotTransverse):
        lagrangian.graph_map(A, Decomposition.standard())


@settings(max_examples=5)
@given(seeds)
def test_sigma_lagrangian_contains_theta(seed):
    A, cert = lagrangian.build_sigma_lagrangian(SeededRng(seed))
    assert lagrangian.is_lagrangian(A)
    assert lagrangian.theta_check(A, cert.W)
    for i in range(3):
        assert lagrangian.intersection_dim(A, cert.W.row(i)) >= 1


def test_theta_check_needs_plane():
    A = lagrangian.random_lagrangian(SeededRng(0))
    with pytest.raises(BadDimension):
        lagrangian.theta_check(A, QMatrix.from_rows([[1, 0, 0, 0, 0, 0]] * 3))


def test_delta_lagrangian(delta_instance):
    A, cert = delta_instance
    assert lagrangian.is_lagrangian(A)
    assert lagrangian.intersection_dim(A, cert.v0) == 3
    assert exactnum.same_rowspace(lagrangian.kernel_plane(A, cert.D), cert.K)
    assert cert.emptiness_degree is not None


@settings(max_examples=5)
@given(seeds)
def test_points_forced_with_multiplicity(seed):
    rng = SeededRng(seed)
    pts = [rng.nonzero_vector(6, 5) for _ in range(3)]
    A = lagrangian.lagrangian_through_points(rng, pts, [1, 2, 1])
    assert lagrangian.is_lagrangian(A)
    assert [lagrangian.intersection_dim(A, p) >= m for p, m in zip(pts, [1, 2, 1])] == [True] * 3


def test_kill_lift(delta_instance):
    A, cert = delta_instance
    D = cert.D
    T = lagrangian.graph_map(A, D)
    beta = T.apply([1, 0, 0, 0, 0, 0, 0, 0, 0, 0])
    a = lagrangian.kill_lift(A, D, beta)
    vec = [x + y for x, y in zip(D.v0_wedge_lift2().vec_mul(a), D.lift(3).vec_mul(beta))]
    assert A.contains(vec)


def test_certificates_roundtrip(delta_instance):
    _, cert = delta_instance
    again = lagrangian.DeltaCertificate.from_json(cert.to_json())
    assert again.K == cert.K and again.D == cert.D and tuple(again.v0) == tuple(cert.v0)
    W = QMatrix.from_rows([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
    assert lagrangian.ThetaCertificate.from_json(lagrangian.ThetaCertificate(W).to_json()).W == W


def test_sha256_stable():
    A = lagrangian.random_lagrangian(SeededRng(7))
    assert A.sha256() == Lagrangian.from_json(A.to_json()).sha256()
    assert A.sha256() == lagrangian.random_lagrangian(SeededRng(7)).sha256()
