from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jointlab.errors import DimensionMismatchError
from jointlab.geometry import Line
from jointlab.polynomial import (
    Polynomial,
    fit_vanishing,
    fit_vanishing_at_degree,
    grlex_key,
    min_fit_degree,
    minimal_vanishing_degree,
    monomial_basis,
    polynomial_from_text,
    polynomial_to_text,
    restrict_to_line,
    uni_add,
    uni_derivative,
    uni_eval,
    uni_mul,
    unipoly_to_text,
    vanishes_on_line,
)

from conftest import cube_points
from oracles import (
    integer_root_ceiling,
    min_fit_degree_enum,
    monomial_count_recursive,
    vanishes_on_line_by_sampling,
)


def F(v):
    return Fraction(v)


def vec(*vals):
    return tuple(Fraction(v) for v in vals)


def poly(text, dim=3):
    return polynomial_from_text(text, dim)


rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def polynomials(draw, dim=3, max_degree=3):
    basis = monomial_basis(dim, max_degree)
    n_terms = draw(st.integers(min_value=0, max_value=5))
    terms = {}
    for _ in range(n_terms):
        exps = draw(st.sampled_from(basis))
        terms[exps] = draw(rationals)
    return Polynomial(dim, terms)


def random_lines(dim=3):
    coords = st.tuples(*([rationals] * dim))
    return st.builds(Line, coords, coords.filter(lambda v: any(c != 0 for c in v)))


class TestMonomialBasis:
    def test_degree_zero(self):
        assert monomial_basis(3, 0) == [(0, 0, 0)]

    def test_counts(self):
        assert len(monomial_basis(3, 2)) == 10 == comb(5, 3)
        assert len(monomial_basis(4, 3)) == 35 == comb(7, 4)

    def test_ascending_graded_lex(self):
        basis = monomial_basis(3, 2)
        assert basis == sorted(basis, key=grlex_key)
        assert basis[0] == (0, 0, 0)
        assert basis[-1] == (2, 0, 0)

    @pytest.mark.parametrize("d,b", [(1, 5), (2, 4), (3, 3), (4, 2)])
    def test_matches_recursive_counting_oracle(self, d, b):
        assert len(monomial_basis(d, b)) == monomial_count_recursive(d, b)
        assert len(monomial_basis(d, b)) == comb(b + d, d)


class TestMinFitDegree:
    def test_spot_values(self):
        assert min_fit_degree(8, 3) == 2
        assert min_fit_degree(0, 3) == 0
        # Frozen by the enumeration oracle: C(8,3)=56 <= 63 < 84=C(9,3).
        assert min_fit_degree(63, 3) == 6

    @pytest.mark.parametrize("d", [3, 4])
    def test_matches_enumeration_oracle(self, d):
        for m in range(0, 70, 7):
            assert min_fit_degree(m, d) == min_fit_degree_enum(m, d)

    @given(st.integers(min_value=0, max_value=300), st.integers(min_value=2, max_value=5))
    @settings(max_examples=80)
    def test_integer_ceiling_bound(self, m, d):
        assert min_fit_degree(m, d) <= integer_root_ceiling(m, d)


class TestEvaluation:
    def test_product_of_variables(self):
        assert poly("x1*x2*x3").evaluate(vec(1, 1, 1)) == 1

    def test_vanishing_on_cube(self):
        p = poly("x1^2 - x1")
        for pt in cube_points(2, 3):
            assert p.evaluate(pt) == 0

    def test_rational_point(self):
        p = poly("x1 + 2*x2 + 3*x3")
        assert p.evaluate(vec(F("1/2"), F("1/3"), F("1/6"))) == F("5/3")

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            poly("x1").evaluate(vec(1, 2))


class TestDerivatives:
    def test_product_rule_instance(self):
        assert poly("x1*x2*x3").partial_derivative(0) == poly("x2*x3")

    def test_constant(self):
        assert poly("5").partial_derivative(1).is_zero()

    def test_quadratic(self):
        assert poly("x1^2 - x1").partial_derivative(0) == poly("2*x1 - 1")

    def test_gradient_examples(self):
        assert poly("x1*x2*x3").gradient(vec(1, 1, 1)) == vec(1, 1, 1)
        assert poly("x1^2 - x1").gradient(vec(0, 0, 0)) == vec(-1, 0, 0)

    def test_gradient_of_cube_product_vanishes_on_cube(self):
        p = poly("1")
        for i in range(1, 4):
            p = p * poly(f"x{i}^2 - x{i}")
        for pt in cube_points(2, 3):
            assert p.gradient(pt) == vec(0, 0, 0)

    @given(polynomials(), st.integers(0, 2), st.integers(0, 2))
    @settings(max_examples=60)
    def test_mixed_partials_commute(self, p, i, j):
        a = p.partial_derivative(i).partial_derivative(j)
        b = p.partial_derivative(j).partial_derivative(i)
        assert a == b

    def test_degree_drops(self):
        p = poly("x1^3 + x2")
        assert p.partial_derivative(0).degree() == 2


class TestRestriction:
    def test_substitution(self):
        line = Line(vec(1, 1, 0), vec(0, 0, 1))
        assert restrict_to_line(poly("x1*x2*x3"), line) == (F(0), F(1))

    def test_identically_zero(self):
        line = Line(vec(0, 5, 0), vec(0, 1, 0))
        assert restrict_to_line(poly("x1^2 - x1"), line) == ()

    def test_circle_cylinder(self):
        line = Line(vec(1, 0, 0), vec(0, 1, 0))
        assert restrict_to_line(poly("x1^2 + x2^2 - 1"), line) == (F(0), F(0), F(1))

    def test_vanishes_on_line_verdicts(self):
        assert not vanishes_on_line(poly("x1*x2*x3"), Line(vec(1, 1, 0), vec(0, 0, 1)))
        assert vanishes_on_line(poly("x1^2 - x1"), Line(vec(0, 5, 0), vec(0, 1, 0)))
        assert not vanishes_on_line(
            poly("x1^2 + x2^2 - 1"), Line(vec(1, 0, 0), vec(0, 1, 0))
        )

    @given(polynomials(), random_lines())
    @settings(max_examples=60, deadline=None)
    def test_agrees_with_sampling_oracle(self, p, line):
        samples = max(p.degree(), 0) + 1
        assert vanishes_on_line(p, line) == vanishes_on_line_by_sampling(
            p, line, samples
        )

    @given(polynomials(), random_lines())
    @settings(max_examples=60, deadline=None)
    def test_linear_coefficient_is_directional_derivative(self, p, line):
        q = restrict_to_line(p, line)
        t1 = q[1] if len(q) > 1 else F(0)
        grad = p.gradient(line.base)
        assert t1 == sum(g * v for g, v in zip(grad, line.direction))

    @given(polynomials(), random_lines())
    @settings(max_examples=40, deadline=None)
    def test_degree_never_grows(self, p, line):
        q = restrict_to_line(p, line)
        assert len(q) - 1 <= max(p.degree(), 0)


class TestFitVanishing:
    def test_cube_fit_is_deterministic(self):
        got = fit_vanishing(cube_points(2, 3), 3)
        assert got == poly("x1^2 - x1")

    def test_single_point(self):
        got = fit_vanishing([vec(0, 0, 0)], 3)
        assert got == poly("x1")
        assert got.degree() <= min_fit_degree(1, 3) == 1

    def test_collinear_points_drop_the_axis_coordinate(self):
        pts = [vec(0, 0, 0), vec(1, 0, 0), vec(2, 0, 0)]
        got = fit_vanishing(pts, 3)
        assert got.degree() <= 1
        assert got.terms.get((1, 0, 0)) is None  # no x1 component
        for pt in pts:
            assert got.evaluate(pt) == 0

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            fit_vanishing([], 3)

    def test_contract_on_random_point_sets(self):
        import random

        rng = random.Random(99)
        for _ in range(25):
            d = rng.choice([3, 4])
            m = rng.randint(1, 14)
            pts = {
                tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(d))
                for _ in range(m)
            }
            p = fit_vanishing(pts, d)
            assert not p.is_zero()
            assert p.degree() <= min_fit_degree(len(pts), d)
            for pt in pts:
                assert p.evaluate(pt) == 0

    def test_fit_at_degree_none_when_impossible(self):
        # No nonzero linear polynomial vanishes on an affinely spanning set.
        pts = [vec(0, 0, 0), vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)]
        assert fit_vanishing_at_degree(pts, 3, 0) is None
        assert fit_vanishing_at_degree(pts, 3, 1) is None
        assert fit_vanishing_at_degree(pts, 3, 2) is not None


class TestMinimalVanishingDegree:
    def test_cube_needs_degree_two(self):
        assert minimal_vanishing_degree(cube_points(2, 3), 3) == 2

    def test_single_point(self):
        assert minimal_vanishing_degree([vec(0, 0, 0)], 3) == 1

    def test_empty_set(self):
        assert minimal_vanishing_degree([], 3) == 0

    def test_never_exceeds_fit_bound(self):
        pts = cube_points(2, 3)
        assert minimal_vanishing_degree(pts, 3) <= min_fit_degree(len(pts), 3)


class TestTextForm:
    def test_examples(self):
        assert polynomial_to_text(poly("x1^2 - x1")) == "x1^2 - x1"
        assert polynomial_to_text(Polynomial(3, {})) == "0"
        assert polynomial_to_text(Polynomial.constant(3, F("-7/2"))) == "-7/2"

    def test_descending_graded_lex_order(self):
        p = poly("x3 + x1^2*x2 + 5")
        assert polynomial_to_text(p) == "x1^2*x2 + x3 + 5"

    def test_coefficient_rendering(self):
        p = Polynomial(3, {(1, 1, 0): F("3/2"), (0, 0, 1): F(-1)})
        assert polynomial_to_text(p) == "3/2*x1*x2 - x3"

    def test_out_of_range_variable(self):
        with pytest.raises(ValueError):
            polynomial_from_text("x4", 3)

    @given(polynomials())
    @settings(max_examples=80)
    def test_round_trip(self, p):
        assert polynomial_from_text(polynomial_to_text(p), p.dim) == p


class TestUniPoly:
    def test_arithmetic(self):
        a = (F(1), F(2))
        b = (F(0), F(0), F(1))
        assert uni_add(a, b) == (F(1), F(2), F(1))
        assert uni_mul(a, a) == (F(1), F(4), F(4))
        assert uni_eval((F(-1), F(0), F(1)), 3) == 8
        assert uni_derivative((F(5), F(1), F(3))) == (F(1), F(6))

    def test_trailing_zeros_trimmed(self):
        assert uni_add((F(1), F(1)), (F(0), F(-1))) == (F(1),)

    def test_text(self):
        assert unipoly_to_text((F(0), F(-1), F(1))) == "t^2 - t"
        assert unipoly_to_text(()) == "0"
