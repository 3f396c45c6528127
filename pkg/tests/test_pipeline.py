import random
from fractions import Fraction

import pytest

from jointlab.constructions import grid, grid_plus_orphan, planar_bundle
from jointlab.errors import ZeroPolynomialError
from jointlab.geometry import Line, configuration, find_joints
from jointlab.pipeline import (
    ALL_PRUNED,
    BOUND_HOLDS,
    CONTRADICTION_BUG,
    GRADIENT_ZERO,
    NOT_APPLICABLE,
    bound_check,
    bound_constant,
    cascade,
    gradient_at_joints_check,
    prune,
    trace,
    trace_to_dict,
)
from jointlab.polynomial import Polynomial, polynomial_from_text


def F(v):
    return Fraction(v)


def vec(*vals):
    return tuple(Fraction(v) for v in vals)


def cube_product_poly(d=3, k=2):
    """Product over axes and grid levels of (x_i - j)."""
    p = Polynomial.constant(d, 1)
    for axis in range(d):
        x = Polynomial.variable(d, axis)
        for j in range(k):
            p = p * (x - Polynomial.constant(d, j))
    return p


class TestBoundCheck:
    def test_grid_3_4(self):
        chk = bound_check(48, 64, 3)
        assert (chk.holds, chk.lhs, chk.rhs) == (True, 4096, 10616832)

    def test_trivial(self):
        chk = bound_check(1, 0, 3)
        assert chk.holds and chk.lhs == 0 and chk.rhs == 96

    def test_grid_4_2(self):
        chk = bound_check(32, 16, 4)
        assert (chk.holds, chk.lhs, chk.rhs) == (True, 4096, 805306368)

    def test_violation_is_representable(self):
        assert not bound_check(1, 100, 3).holds

    def test_validation(self):
        with pytest.raises(ValueError):
            bound_check(0, 1, 3)
        with pytest.raises(ValueError):
            bound_check(1, -1, 3)
        with pytest.raises(ValueError):
            bound_check(1, 1, 1)

    def test_display_constant(self):
        assert abs(bound_constant(3) - 96**0.5) < 1e-12


class TestPrune:
    def test_grid_untouched(self):
        config = grid(3, 2)
        result = prune(config, find_joints(config))
        assert result.threshold == F("1/3")
        assert result.removed_lines == ()
        assert result.removed_points == frozenset()
        assert len(result.survivors) == 8

    def test_orphan_removed(self):
        config = grid_plus_orphan(3, 2)
        result = prune(config, find_joints(config))
        assert result.threshold == F("4/13")
        assert len(result.removed_lines) == 1
        assert result.removed_lines[0].direction == vec(1, 1, 1)
        assert result.removed_points == frozenset()
        assert len(result.survivors) == 8
        assert result.surviving == grid(3, 2)

    def test_empty_joint_set_removes_nothing(self):
        config = planar_bundle(3, 5)
        result = prune(config, find_joints(config))
        assert result.threshold == 0
        assert result.removed_lines == ()
        assert len(result.survivors) == 0
        assert result.surviving == config

    def test_cascading_removal(self):
        # Two crossing bundles: killing one low-incidence line empties a joint,
        # which drags other lines below the frozen threshold in later rounds.
        axes = [
            Line(vec(0, 0, 0), vec(1, 0, 0)),
            Line(vec(0, 0, 0), vec(0, 1, 0)),
            Line(vec(0, 0, 0), vec(0, 0, 1)),
        ]
        config = configuration(3, axes)
        joints = find_joints(config)
        assert len(joints) == 1
        result = prune(config, joints)
        # threshold 1/6: every axis carries the single joint, nothing removed
        assert result.removed_lines == ()

    def test_terminates_within_n_iterations(self, corpus):
        for name, config in corpus:
            result = prune(config, find_joints(config))
            assert len(result.removed_lines) <= config.n, name


class TestCascade:
    def test_grid_product_poly(self):
        lines = grid(3, 2).lines
        assert cascade(cube_product_poly(), lines) == 1

    def test_poly_failing_on_its_own_line(self):
        x_axis = Line(vec(0, 0, 0), vec(1, 0, 0))
        assert cascade(polynomial_from_text("x1", 3), {x_axis}) == -1

    def test_poly_vanishing_but_derivative_failing(self):
        x_axis = Line(vec(0, 0, 0), vec(1, 0, 0))
        assert cascade(polynomial_from_text("x2", 3), {x_axis}) == 0

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            cascade(Polynomial(3, {}), grid(3, 2).lines)

    def test_empty_line_set_returns_degree_cap(self):
        p = polynomial_from_text("x1^2", 3)
        assert cascade(p, set()) == 2

    def test_second_mixed_partial_witness(self):
        # d^2/dx1 dx2 of the cube product restricted to a z-line is
        # (2a-1)(2b-1)(t^2 - t), nonzero; that is what stops the cascade.
        p = cube_product_poly()
        q = p.partial_derivative(0).partial_derivative(1)
        z_line = Line(vec(0, 0, 0), vec(0, 0, 1))
        restricted = q.evaluate(vec(0, 0, 2))
        assert restricted != 0
        assert not all(
            q.evaluate(z_line.point_at(t)) == 0 for t in range(4)
        )


class TestGradientCheck:
    def test_cube_product_all_applicable_and_zero(self):
        joints = find_joints(grid(3, 2))
        report = gradient_at_joints_check(cube_product_poly(), joints)
        assert report.count(GRADIENT_ZERO) == 8
        assert report.count(NOT_APPLICABLE) == 0

    def test_partial_vanishing_polynomial_not_applicable(self):
        joints = find_joints(grid(3, 2))
        report = gradient_at_joints_check(polynomial_from_text("x1^2 - x1", 3), joints)
        assert report.count(NOT_APPLICABLE) == 8

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            gradient_at_joints_check(Polynomial(3, {}), find_joints(grid(3, 2)))

    def test_random_spanning_products(self):
        # p = product over lines of a linear form vanishing on that line:
        # p vanishes on every line through the joint, so its gradient there
        # must be exactly zero.
        rng = random.Random(5)
        d = 3
        for _ in range(10):
            dirs = []
            while len(dirs) < 3:
                v = tuple(F(rng.randint(-4, 4)) for _ in range(d))
                if any(c != 0 for c in v):
                    dirs.append(v)
            lines = [Line(vec(0, 0, 0), v) for v in dirs]
            config = configuration(d, set(lines))
            if len(config.lines) < 3:
                continue
            p = Polynomial.constant(d, 1)
            for line in config.sorted_lines():
                v = line.direction
                # a linear form with w . v = 0
                if v[0] != 0 or v[1] != 0:
                    w = (-v[1], v[0], F(0))
                else:
                    w = (F(1), F(0), F(0))
                form = Polynomial(
                    d, {tuple(1 if i == j else 0 for i in range(d)): w[j] for j in range(d)}
                )
                p = p * form
            if p.is_zero():
                continue
            joints = find_joints(config)
            report = gradient_at_joints_check(p, joints)
            for status in report.statuses.values():
                assert status == GRADIENT_ZERO


class TestTrace:
    def test_grid_3_2(self):
        result = trace(grid(3, 2))
        assert result.outcome == BOUND_HOLDS
        assert result.b == 2
        assert set(result.per_line_joint_counts.values()) == {2}
        degree_step = next(s for s in result.narrative if s.name == "degree")
        assert "2 <= 2" in degree_step.verdict

    def test_grid_3_4_records_counts_and_bound(self):
        result = trace(grid(3, 4))
        assert result.outcome == BOUND_HOLDS
        assert result.b == 6
        assert set(result.per_line_joint_counts.values()) == {4}
        assert len(result.per_line_joint_counts) == 48

    def test_planar_bundle_all_pruned(self):
        result = trace(planar_bundle(3, 5))
        assert result.outcome == ALL_PRUNED
        assert result.b is None
        assert result.fitted is None

    def test_orphan_narrative(self):
        result = trace(grid_plus_orphan(3, 2))
        assert result.outcome == BOUND_HOLDS
        prune_step = next(s for s in result.narrative if s.name == "prune")
        assert "removed 1 line(s)" in prune_step.verdict

    def test_dimension_validation(self):
        with pytest.raises(ValueError):
            trace(configuration(2, [Line(vec(0, 0), vec(1, 0))]))

    def test_never_contradiction_bug_on_corpus(self, corpus):
        for name, config in corpus:
            result = trace(config)
            assert result.outcome != CONTRADICTION_BUG, name
            assert result.outcome in (BOUND_HOLDS, ALL_PRUNED), name


class TestTraceJson:
    def test_integers_serialized_as_strings(self):
        obj = trace_to_dict(trace(grid(3, 2)))
        assert obj["outcome"] == BOUND_HOLDS
        assert obj["n"] == "12"
        assert obj["m"] == "8"
        assert obj["b"] == "2"
        assert obj["threshold"] == "1/3"
        assert obj["fitted"] == "x1^2 - x1"
        assert obj["cascade_order"] == "-1"
        assert all(rec["count"] == "2" for rec in obj["per_line_joint_counts"])
        assert [s["step"] for s in obj["narrative"]] == [
            "joints",
            "bound",
            "prune",
            "degree",
            "fit",
            "cascade",
            "outcome",
        ]

    def test_all_pruned_serialization(self):
        obj = trace_to_dict(trace(planar_bundle(3, 5)))
        assert obj["outcome"] == ALL_PRUNED
        assert obj["b"] is None
        assert obj["fitted"] is None
        assert obj["per_line_joint_counts"] == []
