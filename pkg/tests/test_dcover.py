import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_golden
from epwlab import dcover, exactnum, polyring
from epwlab.dcover import Smoothness, SymDet
from epwlab.errors import NotSymmetric
from epwlab.exactnum import QMatrix, SeededRng
from epwlab.polyring import MultiPoly

XYZ = ("x", "y", "z")
seeds = st.integers(0, 10**6)


def random_symdet(rng, d, vars=XYZ, height=3, homogeneous=False):
    rows = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            c = rng.vector(len(vars), height)
            rows[i][j] = rows[j][i] = MultiPoly.linear(vars, c, 0 if homogeneous else rng.integer(-height, height))
    return SymDet(polyring.PolyMatrix.from_rows(vars, rows))


def test_rangodue_golden():
    m = load_golden("rangodue_matrix.json")
    cov = dcover.cover_ideal(SymDet.parse(tuple(m["vars"]), m["rows"]))
    g = load_golden("rangodue_cover.json")
    assert list(cov.ideal.vars) == g["vars"] and list(cov.xi) == g["xi"]
    assert [str(p) for p in cov.ideal.gens] == g["gens"]


def test_one_by_one():
    cov = dcover.cover_ideal(SymDet.parse(("x",), [["x"]]))
    assert [str(g) for g in cov.ideal.gens] == ["x*xi1", "xi1^2 - 1"]


def test_diagonal_two_by_two():
    cov = dcover.cover_ideal(SymDet.parse(("x", "y"), [["x", "0"], ["0", "y"]]))
    assert [str(g) for g in cov.ideal.gens] == ["x*xi1", "y*xi2", "xi1^2 - y", "xi1*xi2", "xi2^2 - x"]


def test_asymmetric_rejected():
    with pytest.raises(NotSymmetric):
        SymDet.parse(XYZ, [["x", "y"], ["z", "x"]])


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_cramer_generic(d):
    assert dcover.cramer_holds(SymDet.generic(d).M)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_det_in_cover_ideal_generic(d):
    assert dcover.det_in_cover_ideal(SymDet.generic(d))


@settings(max_examples=10)
@given(seeds, st.integers(1, 4))
def test_product_table_is_adjugate(seed, d):
    S = random_symdet(SeededRng(seed), d)
    T = dcover.product_table(S)
    assert T.is_symmetric()
    assert dcover.cramer_holds(S.M)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_associativity_symbolic(d):
    S = SymDet.generic(d)
    zero = MultiPoly.zero(S.vars)
    for i, j, k in itertools.product(range(d), repeat=3):
        _, res = dcover.associativity_witness(S, i, j, k)
        assert all(r == zero for r in res), (i, j, k)


@settings(max_examples=10)
@given(seeds, st.integers(2, 6))
def test_associativity_numeric(seed, d):
    M = SeededRng(seed).symmetric(d, 5)
    cache = {}
    adj = polyring.numeric_adjugate(M)
    for i, j, k in itertools.product(range(d), repeat=3):
        assert not any(dcover.associativity_residual_at(M, i, j, k, adj, cache))


def test_associativity_sign_matters(monkeypatch):
    monkeypatch.setattr(dcover, "RELATION_SIGN", 1)
    M = SeededRng(1).symmetric(4, 5)
    assert any(dcover.associativity_residual_at(M, 0, 1, 2))


def test_corank_strata_two_by_two():
    S = SymDet.parse(XYZ, [["x", "y"], ["y", "z"]])
    I1 = dcover.corank_stratum_ideal(S, 1)
    assert [str(g) for g in I1.gens] == ["x*z - y^2"]
    I2 = dcover.corank_stratum_ideal(S, 2)
    assert polyring.same_span(I2.gens, list(MultiPoly.gens(XYZ)))


def test_germ_block_diagonal():
    # diag(x, y, 1 + z): corank 2 at the origin with germ rows dx -> t0^2, dy -> t1^2
    S = SymDet.parse(XYZ, [["x", "0", "0"], ["0", "y", "0"], ["0", "0", "1 + z"]])
    g = dcover.germ_reduce(S, [0, 0, 0])
    assert g.corank == 2
    assert g.delta == QMatrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 0, 0]])


@settings(max_examples=10)
@given(seeds)
def test_germ_consistent_under_block_sum(seed):
    # adding an invertible constant block does not change the germ of the kernel
    rng = SeededRng(seed)
    S = random_symdet(rng, 2, homogeneous=True)
    p = [0, 0, 0]
    base = dcover.germ_reduce(S, p)
    rows = [[S.M[i, j] for j in range(2)] + [MultiPoly.zero(XYZ)] for i in range(2)]
    rows.append([MultiPoly.zero(XYZ)] * 2 + [MultiPoly.const(XYZ, 5)])
    big = dcover.germ_reduce(SymDet(polyring.PolyMatrix.from_rows(XYZ, rows)), p)
    assert big.corank == base.corank
    assert exactnum.rank(big.delta) == exactnum.rank(base.delta)


def test_smoothness_examples():
    S = SymDet.parse(XYZ, [["x", "y"], ["y", "z"]])
    assert dcover.smoothness_test(S, [1, 0, 1]) is Smoothness.NotOnY
    assert dcover.smoothness_test(S, [1, 0, 0]) is Smoothness.SmoothOnCover
    assert dcover.smoothness_test(S, [0, 0, 0]) is Smoothness.SmoothOnCover
    sq = SymDet.parse(XYZ, [["x^2", "0"], ["0", "1"]])
    assert dcover.smoothness_test(sq, [0, 0, 0]) is Smoothness.Indeterminate
    cone = SymDet.parse(XYZ, [["x", "0"], ["0", "x"]])
    assert dcover.smoothness_test(cone, [0, 0, 0]) is Smoothness.SingularOnCover
    zero3 = SymDet.parse(XYZ, [["x", "y", "z"], ["y", "x", "0"], ["z", "0", "x"]])
    assert dcover.smoothness_test(zero3, [0, 0, 0]) is Smoothness.SingularOnCover


@settings(max_examples=10)
@given(seeds)
def test_det_gradient_matches_symbolic(seed):
    rng = SeededRng(seed)
    S = random_symdet(rng, 3)
    det = polyring.poly_det(S.M)
    p = rng.vector(3, 4)
    assert dcover.det_gradient_at(S, p) == [g.evaluate(p) for g in det.gradient()]


def test_universal_model_matches_golden():
    g = load_golden("universal_model_spans.json")
    minors, comps = dcover.universal_quadrics()
    monos = [tuple(m) for m in g["monomials"]]
    assert monos == polyring.monomials(9, 2)
    golden = QMatrix.from_rows([[exactnum.parse_rational(x) for x in r] for r in g["rref"]], len(monos))
    assert golden.rows == g["rank"] == 9
    a, _ = polyring.coefficient_matrix(minors, monos)
    b, _ = polyring.coefficient_matrix(comps, monos)
    assert exactnum.same_rowspace(a, golden)
    assert exactnum.same_rowspace(b, golden)
    assert dcover.universal_model_check()


def test_universal_model_with_minus_sign_fails():
    E = dcover._generic_square()
    alpha = E + E.transpose()
    x = dcover.axis_vector(E - E.transpose())
    adj = polyring.adjugate(alpha)
    comps = alpha.apply(x) + [x[i] * x[j] - adj[i, j] for i in range(3) for j in range(3)]
    minors, _ = dcover.universal_quadrics()
    assert not polyring.same_span(minors, comps)


@settings(max_examples=10)
@given(seeds)
def test_flop_identity(seed):
    assert dcover.flop_identity_check(SeededRng(seed), trials=5)


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_rank_one_lands_on_cover(a, b):
    mu = QMatrix(3, 1, a) @ QMatrix(1, 3, b)
    s, x = dcover.tau_universal(mu)
    assert dcover.on_universal_cover(s, x)
