from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nodalspec.cli import parse_polynomial
from nodalspec.polyring import (
    BadChart,
    HomPoly,
    MonomialBasis,
    derivative_order,
    dim_R,
    eval_at,
    euler_identity_holds,
    monomials,
    multiply,
    partials,
)


def P(text, num_vars=None):
    return parse_polynomial(text, num_vars)


@st.composite
def hom_polys(draw, max_vars=4, max_degree=5):
    num_vars = draw(st.integers(2, max_vars))
    degree = draw(st.integers(1, max_degree))
    mons = monomials(num_vars, degree)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=6, unique=True))
    coeffs = draw(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6).filter(bool),
                           min_size=len(chosen), max_size=len(chosen)))
    return HomPoly.from_dict(num_vars, degree, dict(zip(chosen, coeffs)))


class TestDimR:
    @pytest.mark.parametrize("n,k,expected", [(2, 3, 10), (2, -1, 0), (3, 2, 10)])
    def test_examples(self, n, k, expected):
        assert dim_R(n, k) == expected

    def test_monomial_count(self):
        for n in range(0, 5):
            for k in range(0, 41):
                assert len(MonomialBasis(n + 1, k)) == dim_R(n, k)

    def test_graded_lex_order(self):
        assert monomials(3, 2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


class TestPartials:
    def test_three_nodes(self, quartic_i):
        assert partials(quartic_i) == [P("2*x*(y^2+z^2)"), P("2*y*(x^2+z^2)"), P("2*z*(x^2+y^2)")]

    def test_fermat(self, fermat):
        assert partials(fermat) == [P("4*x^3", 3), P("4*y^3", 3), P("4*z^3", 3)]

    def test_four_lines(self, quartic_ii):
        assert partials(quartic_ii) == [P("y*z*(2*x+y+z)"), P("x*z*(x+2*y+z)"), P("x*y*(x+y+2*z)")]


class TestEvaluation:
    def test_examples(self):
        assert eval_at(P("x", 3), [1, 0, 0], 0) == 1
        assert eval_at(P("x*y", 3), [1, 0, 0], 0) == 0
        assert eval_at(P("x+y+z"), [0, 1, -1], 1) == 0

    def test_bad_chart(self):
        with pytest.raises(BadChart):
            eval_at(P("x+y+z"), [0, 1, -1], 0)

    @given(hom_polys(), st.data())
    def test_vanishing_is_chart_independent(self, g, data):
        pt = data.draw(st.lists(st.integers(-3, 3), min_size=g.num_vars, max_size=g.num_vars)
                       .filter(lambda v: any(v)))
        values = [eval_at(g, pt, c) for c in range(g.num_vars) if pt[c]]
        assert len({v == 0 for v in values}) == 1
        # values differ by the factor (x_a / x_b)^deg
        charts = [c for c in range(g.num_vars) if pt[c]]
        a = charts[0]
        for b in charts[1:]:
            factor = Fraction(pt[a], pt[b]) ** g.degree
            assert eval_at(g, pt, b) == eval_at(g, pt, a) * factor


class TestArithmetic:
    def test_products(self):
        assert multiply(P("x", 3), P("y", 3)) == P("x*y", 3)
        assert multiply(P("x*y", 3), P("x*z")) == P("x^2*y*z")

    def test_second_derivative(self):
        assert derivative_order(P("x^2*y^2", 3), (2, 0, 0)) == P("2*y^2", 3)

    @given(hom_polys())
    def test_euler_identity(self, f):
        assert euler_identity_holds(f)

    @given(hom_polys(max_degree=3), hom_polys(max_degree=3))
    def test_product_degree(self, g, h):
        if g.num_vars != h.num_vars:
            return
        gh = multiply(g, h)
        assert gh.degree == g.degree + h.degree
        pt = [1, 2, -1, 3][: g.num_vars]
        assert gh(pt) == g(pt) * h(pt)
