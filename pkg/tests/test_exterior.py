import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from epwlab import exactnum, exterior
from epwlab.errors import BadDimension, GradeOverflow, ZeroVector
from epwlab.exactnum import QMatrix
from epwlab.exterior import AltK

small = st.integers(-4, 4)


def alt(n, k):
    size = len(exterior.subsets(n, k))
    return st.lists(small, min_size=size, max_size=size).map(lambda c: AltK(n, k, c))


def vec(n):
    return st.lists(small, min_size=n, max_size=n)


def test_basis_sizes_and_order():
    assert len(exterior.subsets(6, 3)) == 20
    assert len(exterior.subsets(5, 2)) == 10
    assert exterior.subsets(6, 3)[:3] == ((0, 1, 2), (0, 1, 3), (0, 1, 4))
    assert exterior.subsets(6, 3)[-1] == (3, 4, 5)


def test_basic_wedges():
    e = [AltK.vector([1 if i == j else 0 for i in range(6)]) for j in range(6)]
    assert exterior.vol6(exterior.wedge_all(*e)) == 1
    assert exterior.wedge(e[1], e[0]) == -exterior.wedge(e[0], e[1])
    assert exterior.wedge(e[2], e[2]).is_zero()


def test_symp_on_complementary_basis():
    a = AltK.basis(6, (0, 1, 2))
    b = AltK.basis(6, (3, 4, 5))
    assert exterior.symp(a, b) == 1
    assert exterior.symp(b, a) == -1
    assert exterior.symp(a, a) == 0


@given(alt(6, 3), alt(6, 3))
def test_symp_antisymmetric(a, b):
    assert exterior.symp(a, b) == -exterior.symp(b, a)


@given(alt(6, 3), alt(6, 3))
def test_symp_matrix_is_gram(a, b):
    J = exterior.symp_matrix()
    assert exterior.symp(a, b) == sum(x * y for x, y in zip(a.coords, J.apply(b.coords)))


def test_symp_matrix_nondegenerate():
    J = exterior.symp_matrix()
    assert J.transpose() == J.scale(-1)
    assert exactnum.det_exact(J) in (1, -1)


@given(alt(5, 2), alt(5, 3))
def test_pairing_matrix(a, w):
    P = exterior.pairing_matrix()
    assert exterior.dual_pair_5(a, w) == sum(x * y for x, y in zip(a.coords, P.apply(w.coords)))
    assert exterior.dual_pair_5(a, w) == sum(x * y for x, y in zip(P.vec_mul(a.coords), w.coords))


@given(alt(6, 1), alt(6, 2), alt(6, 2))
def test_wedge_associative_and_graded_commutative(u, a, b):
    assert exterior.wedge(exterior.wedge(u, a), b) == exterior.wedge(u, exterior.wedge(a, b))
    assert exterior.wedge(a, b) == exterior.wedge(b, a)
    assert exterior.wedge(u, a) == exterior.wedge(a, u)


@given(vec(6), vec(6), vec(6))
def test_wedge_of_vectors_matches_minors(u, v, w):
    t = exterior.wedge_all(AltK.vector(u), AltK.vector(v), AltK.vector(w))
    m = sympy.Matrix([u, v, w])
    for c, s in zip(t.coords, exterior.subsets(6, 3)):
        assert c == m[:, list(s)].det()


def test_grade_overflow():
    with pytest.raises(GradeOverflow):
        exterior.wedge(AltK.basis(5, (0, 1, 2)), AltK.basis(5, (1, 3, 4)))
    with pytest.raises(BadDimension):
        exterior.wedge(AltK.basis(5, (0,)), AltK.basis(6, (0,)))
    with pytest.raises(BadDimension):
        exterior.vol6(AltK.basis(6, (0, 1, 2)))


@given(vec(6).filter(any))
def test_F_v_dimension_and_membership(v):
    F = exterior.F_basis(AltK.vector(v))
    assert F.rows == 10
    for i in range(F.rows):
        assert exterior.wedge(AltK.vector(v), AltK(6, 3, F.row(i))).is_zero()


def test_F_v_rejects_zero():
    with pytest.raises(ZeroVector):
        exterior.F_basis(AltK.vector([0] * 6))


@given(vec(6).filter(any))
def test_F_v_is_lagrangian(v):
    F = exterior.F_basis(AltK.vector(v))
    J = exterior.symp_matrix()
    assert (F @ J @ F.transpose()).is_zero()


@given(vec(5), alt(5, 2))
def test_contract_derivation(f, a):
    # f _| (u ^ b) for decomposable 2-vectors agrees with the Leibniz rule
    u = AltK.vector([1, 2, 0, -1, 3])
    lhs = exterior.contract(f, exterior.wedge(u, a))
    fu = sum(Fraction(x) * y for x, y in zip(f, u.coords))
    rhs = a * fu - exterior.wedge(u, exterior.contract(f, a))
    assert lhs == rhs


@given(vec(6), vec(6), vec(6))
def test_support_of_decomposable(u, v, w):
    rows = QMatrix.from_rows([u, v, w])
    t = exterior.wedge_all(AltK.vector(u), AltK.vector(v), AltK.vector(w))
    if exactnum.rank(rows) < 3:
        assert t.is_zero()
        return
    S = exterior.support(t)
    assert S.dim == 3 and S == exterior.Subspace(rows)
    assert exterior.is_decomposable(t)


def test_indecomposable_three_vector():
    t = AltK.basis(6, (0, 1, 2)) + AltK.basis(6, (3, 4, 5))
    assert exterior.support(t).dim == 6
    assert not exterior.is_decomposable(t)


@given(st.lists(vec(6), min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_power_matrix(frame, c):
    P = exterior.power_matrix(frame, 1)
    assert P == QMatrix.from_rows(frame, 6)
    P3 = exterior.power_matrix(frame, 3)
    expected = exterior.wedge_all(*[AltK.vector(f) for f in frame])
    assert list(P3.row(0)) == list(expected.coords)


def test_merge_sign():
    assert exterior.merge_sign((0, 1), (2,)) == 1
    assert exterior.merge_sign((1, 2), (0,)) == 1
    assert exterior.merge_sign((0, 2), (1,)) == -1
    assert exterior.merge_sign((0, 1), (1,)) == 0
    for a in itertools.permutations(range(4), 1):
        assert exterior.merge_sign(a, ()) == 1


def test_json_roundtrip():
    t = AltK(6, 3, [Fraction(i, 3) for i in range(20)])
    assert AltK.from_json(t.to_json()) == t
