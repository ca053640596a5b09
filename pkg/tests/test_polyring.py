from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from epwlab import polyring
from epwlab.errors import BadDimension, FitFailed, NotDivisible, ZeroPolynomial
from epwlab.polyring import Empty, Ideal, Inconclusive, MultiPoly, PolyMatrix

XYZ = ("x", "y", "z")
SYMS = sympy.symbols(XYZ)


def to_sympy(p: MultiPoly):
    return sympy.expand(sympy.sympify(str(p).replace("^", "**"), locals=dict(zip(XYZ, SYMS))))


@st.composite
def polys(draw, max_terms=4, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in XYZ)
        terms[e] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
    return MultiPoly(XYZ, terms)


@st.composite
def linear_matrices(draw, n):
    rows = [[MultiPoly.linear(XYZ, [draw(st.integers(-3, 3)) for _ in XYZ], draw(st.integers(-2, 2)))
             for _ in range(n)] for _ in range(n)]
    return PolyMatrix.from_rows(XYZ, rows)


def test_parse_and_print():
    p = MultiPoly.parse("3*x^2*y - 1/2*z + x*y*z", XYZ)
    assert str(p) == "3*x^2*y + x*y*z - 1/2*z"
    assert p.degree() == 3 and not p.is_homogeneous()
    assert MultiPoly.parse(str(p), XYZ) == p


def test_normalize_examples():
    p = MultiPoly.parse("3*x^2*y - 1/2*z + x*y*z", XYZ)
    assert str(polyring.normalize(p)) == "6*x^2*y + 2*x*y*z - z"
    assert str(polyring.normalize(MultiPoly.parse("-2*x + 4*y", XYZ))) == "x - 2*y"


def test_normalize_zero_raises():
    with pytest.raises(ZeroPolynomial):
        polyring.normalize(MultiPoly.zero(XYZ))


@given(polys().filter(lambda p: not p.is_zero()), st.integers(-4, 4).filter(bool))
def test_normalize_idempotent_and_scale_free(p, c):
    n = polyring.normalize(p)
    assert polyring.normalize(n) == n
    assert polyring.normalize(p * c) == n


@given(polys(), polys())
def test_arithmetic_matches_sympy(p, q):
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))


@given(polys(), polys())
def test_exact_divide_roundtrip(p, q):
    if q.is_zero():
        with pytest.raises(ZeroPolynomial):
            polyring.exact_divide(p, q)
        return
    assert polyring.exact_divide(p * q, q) == p


def test_exact_divide_remainder():
    with pytest.raises(NotDivisible):
        polyring.exact_divide(MultiPoly.parse("x^2 + y", XYZ), MultiPoly.parse("x + z", XYZ))


@given(polys(), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_evaluate_matches_sympy(p, pt):
    assert p.evaluate(pt) == to_sympy(p).subs(dict(zip(SYMS, pt)))


@given(st.integers(1, 4).flatmap(linear_matrices))
def test_poly_det_matches_sympy(m):
    expected = sympy.Matrix([[to_sympy(e) for e in row] for row in m.to_rows()]).det()
    assert to_sympy(polyring.poly_det(m)) == sympy.expand(expected)


@given(st.integers(1, 4).flatmap(linear_matrices))
def test_adjugate_identity(m):
    adj = polyring.adjugate(m)
    det = polyring.poly_det(m)
    prod = m @ adj
    for i in range(m.rows):
        for j in range(m.cols):
            assert prod[i, j] == (det if i == j else MultiPoly.zero(XYZ))


def test_det_requires_square():
    m = PolyMatrix.from_rows(XYZ, [[MultiPoly.var(XYZ, 0), MultiPoly.var(XYZ, 1)]])
    with pytest.raises(BadDimension):
        polyring.poly_det(m)


def test_hilbert_line_and_quadric():
    x, y, z, w = MultiPoly.gens(("x", "y", "z", "w"))
    line = Ideal(("x", "y", "z", "w"), [x, y])
    assert [polyring.hilbert_function(line, d) for d in range(5)] == [1, 2, 3, 4, 5]
    assert polyring.hilbert_fit(line) == (1, 1)
    quadric = Ideal(("x", "y", "z", "w"), [x * w - y * z])
    assert polyring.hilbert_fit(quadric) == (2, 2)


def test_hilbert_twisted_cubic():
    x, y, z, w = MultiPoly.gens(("x", "y", "z", "w"))
    I = Ideal(("x", "y", "z", "w"), [x * z - y * y, y * w - z * z, x * w - y * z])
    assert polyring.hilbert_fit(I) == (1, 3)


def test_hilbert_fit_fails_on_empty():
    x, y, z = MultiPoly.gens(XYZ)
    with pytest.raises(FitFailed):
        polyring.hilbert_fit(Ideal(XYZ, [x, y, z]))


def test_emptiness():
    x, y, z = MultiPoly.gens(XYZ)
    assert polyring.is_empty_projective(Ideal(XYZ, [x, y, z])) == Empty(1)
    assert polyring.is_empty_projective(Ideal(XYZ, [x * x, y * y, z * z])) == Empty(4)
    assert polyring.is_empty_projective(Ideal(XYZ, [x, y]), dmax=4) == Inconclusive()


def test_single_point():
    x, y, z = MultiPoly.gens(XYZ)
    assert polyring.single_point_degree(Ideal(XYZ, [x, y])) is not None
    assert polyring.single_point_degree(Ideal(XYZ, [x * y, z])) is None


def test_projective_ideal_rejects_inhomogeneous():
    with pytest.raises(BadDimension):
        Ideal(XYZ, [MultiPoly.parse("x + 1", XYZ)])


def test_flint_rank_agrees_with_python():
    rows = [[(i * j + 3 * i - j) % 7 - 3 for j in range(90)] for i in range(60)]
    rows += [[a + b for a, b in zip(rows[0], rows[1])]]
    fast = polyring.integer_rank(rows, 90)
    assert fast == polyring.integer_rank([list(r) for r in zip(*rows)], 61)
    assert fast == sympy.Matrix(rows).rank()


def test_rational_roots():
    # (2t - 1)(t + 3)(t^2 + 1)
    assert polyring.rational_roots([-3, 5, -1, 5, 2]) == [Fraction(-3), Fraction(1, 2)]
    assert polyring.rational_roots([1, 0, 1]) == []


def test_jacobian_rank():
    x, y, z = MultiPoly.gens(XYZ)
    I = Ideal(XYZ, [x * z - y * y])
    assert polyring.jacobian_rank_at(I, [1, 0, 0]) == 1
    assert polyring.jacobian_rank_at(I, [0, 0, 1]) == 1
    cone = Ideal(XYZ, [x * y])
    assert polyring.jacobian_rank_at(cone, [0, 0, 1]) == 0


@given(polys())
def test_json_roundtrip(p):
    assert MultiPoly.from_json(p.to_json()) == p
