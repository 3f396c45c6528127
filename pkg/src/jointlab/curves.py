"""Joints of polynomially parametrized curves.

Scope note: curves here are given by polynomial coordinate functions of one
parameter (lines, moment-type curves, and friends), not by implicit
equations.  Restricting a d-variate polynomial to such a curve is exact
substitution, and "vanishes identically on the curve" reduces to the
univariate root bound: a restriction of degree <= deg(p) * deg(curve) with
more distinct roots than that is the zero polynomial.

Curve joints are verified from claimed (curve, parameter) pairs rather than
searched for globally; curve-curve intersection solving is out of scope.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionMismatchError,
    FileFormatError,
    InternalInvariantViolation,
)
from .exact import Vector, format_rational, parse_rational, rank
from .geometry import Line
from .polynomial import (
    Polynomial,
    UniPoly,
    uni_add,
    uni_derivative,
    uni_eval,
    uni_mul,
    uni_pow,
    uni_trim,
)


@dataclass(frozen=True)
class ParamCurve:
    """A curve t -> (c_1(t), ..., c_d(t)) with polynomial coordinates."""

    coords: tuple[UniPoly, ...]

    def __post_init__(self):
        coords = tuple(uni_trim(c) for c in self.coords)
        if len(coords) < 2:
            raise ValueError("curves need ambient dimension >= 2")
        if max((len(c) - 1 for c in coords), default=-1) < 1:
            raise ValueError("curve must have a nonconstant coordinate")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def degree(self) -> int:
        return max(len(c) - 1 for c in self.coords)

    def point_at(self, t) -> Vector:
        return tuple(uni_eval(c, t) for c in self.coords)

    def sort_key(self):
        return (self.degree, self.coords)


def line_as_curve(line: Line) -> ParamCurve:
    """Degree-1 curve tracing base + t * direction."""
    return ParamCurve(
        tuple(uni_trim((b, v)) for b, v in zip(line.base, line.direction))
    )


@dataclass(frozen=True)
class CurveConfiguration:
    """Curves sharing one ambient dimension; n is the total degree."""

    dim: int
    curves: tuple[ParamCurve, ...]

    def __post_init__(self):
        for c in self.curves:
            if c.dim != self.dim:
                raise DimensionMismatchError(
                    f"curve of dimension {c.dim} in {self.dim}-dimensional configuration"
                )

    @property
    def total_degree(self) -> int:
        return sum(c.degree for c in self.curves)


def tangent_at(curve: ParamCurve, t0) -> Vector | None:
    """Velocity vector at parameter t0; None at a singular (zero) velocity."""
    velocity = tuple(uni_eval(uni_derivative(c), t0) for c in curve.coords)
    if all(v == 0 for v in velocity):
        return None
    return velocity


def curve_joint(pairs: Sequence[tuple[ParamCurve, Fraction]]) -> bool:
    """True iff the (curve, parameter) pairs witness a joint.

    All evaluations must agree on one point, at least d distinct curves must
    appear, and the tangents there must span all of d-space (a singular
    tangent contributes nothing to the span).
    """
    if not pairs:
        return False
    d = pairs[0][0].dim
    for curve, _ in pairs:
        if curve.dim != d:
            raise DimensionMismatchError("curves live in different dimensions")
    points = {curve.point_at(t) for curve, t in pairs}
    if len(points) != 1:
        return False
    if len({curve for curve, _ in pairs}) < d:
        return False
    tangents = []
    for curve, t in pairs:
        tangent = tangent_at(curve, t)
        if tangent is not None:
            tangents.append(tangent)
    if not tangents:
        return False
    return rank(tangents) == d


@dataclass(frozen=True, eq=True)
class CurveJointSet:
    """Verified curve joints with their incident curves."""

    incidence: dict[Vector, frozenset[ParamCurve]]

    @property
    def points(self) -> tuple[Vector, ...]:
        return tuple(sorted(self.incidence))

    def curves_through(self, point: Vector) -> frozenset[ParamCurve]:
        return self.incidence[point]

    def __len__(self) -> int:
        return len(self.incidence)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.points)


def curve_joint_set(
    groups: Iterable[Sequence[tuple[ParamCurve, Fraction]]]
) -> CurveJointSet:
    """Verify each claimed group of (curve, parameter) pairs and collect the
    resulting joints with their incidence sets."""
    incidence: dict[Vector, frozenset[ParamCurve]] = {}
    for group in groups:
        if not curve_joint(group):
            raise ValueError(f"claimed joint is not one: {group!r}")
        point = group[0][0].point_at(group[0][1])
        curves = frozenset(curve for curve, _ in group)
        incidence[point] = incidence.get(point, frozenset()) | curves
    return CurveJointSet(incidence)


def restrict_to_curve(p: Polynomial, curve: ParamCurve) -> UniPoly:
    """Substitute the curve's coordinate polynomials into p.

    The result has degree <= deg(p) * curve.degree, and is identically zero
    exactly when p vanishes on the whole curve.
    """
    if p.dim != curve.dim:
        raise DimensionMismatchError(
            f"polynomial dimension {p.dim} vs curve dimension {curve.dim}"
        )
    total: UniPoly = ()
    for exps, coeff in p.terms.items():
        term: UniPoly = (coeff,)
        for c, e in zip(curve.coords, exps):
            if e:
                term = uni_mul(term, uni_pow(c, e))
        total = uni_add(total, term)
    return total


# ---------------------------------------------------------------------------
# JSON wire format: coefficient lists in ascending powers of t


def curve_configuration_to_dict(cfg: CurveConfiguration) -> dict:
    return {
        "dim": cfg.dim,
        "curves": [
            {"coords": [[format_rational(c) for c in coord] for coord in curve.coords]}
            for curve in cfg.curves
        ],
    }


def curve_configuration_from_dict(obj) -> CurveConfiguration:
    if not isinstance(obj, dict):
        raise FileFormatError("top level: expected an object")
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 2:
        raise FileFormatError("dim: expected an integer >= 2")
    raw_curves = obj.get("curves")
    if not isinstance(raw_curves, list):
        raise FileFormatError("curves: expected a list")
    curves = []
    for i, raw in enumerate(raw_curves):
        if not isinstance(raw, dict) or not isinstance(raw.get("coords"), list):
            raise FileFormatError(f"curves[{i}]: expected an object with coords")
        coords = raw["coords"]
        if len(coords) != dim:
            raise FileFormatError(
                f"curves[{i}].coords: expected {dim} coordinate polynomials"
            )
        parsed = []
        for j, coeffs in enumerate(coords):
            if not isinstance(coeffs, list):
                raise FileFormatError(
                    f"curves[{i}].coords[{j}]: expected a coefficient list"
                )
            try:
                parsed.append(tuple(parse_rational(c) for c in coeffs))
            except (ValueError, TypeError) as exc:
                raise FileFormatError(f"curves[{i}].coords[{j}]: {exc}") from exc
        try:
            curves.append(ParamCurve(tuple(parsed)))
        except ValueError as exc:
            raise FileFormatError(f"curves[{i}]: {exc}") from exc
    return CurveConfiguration(dim, tuple(curves))


def save_curve_configuration(cfg: CurveConfiguration, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(curve_configuration_to_dict(cfg), fh, indent=2)
        fh.write("\n")


def load_curve_configuration(path) -> CurveConfiguration:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: not valid JSON ({exc})") from exc
    return curve_configuration_from_dict(obj)


@dataclass(frozen=True)
class CurvePruneResult:
    """Degree-weighted pruning fixpoint for curve configurations."""

    surviving: CurveConfiguration
    survivors: CurveJointSet
    removed_curves: tuple[ParamCurve, ...]
    removed_points: frozenset[Vector]
    thresholds: dict[ParamCurve, Fraction]


def curve_prune(cfg: CurveConfiguration, joints: CurveJointSet) -> CurvePruneResult:
    """Remove curves carrying fewer than m * deg / (2n) surviving joints.

    Same fixpoint structure as the line version, but the threshold is scaled
    per curve by its degree; thresholds are frozen at the start, and fewer
    than m/2 joints are lost in total.
    """
    n = cfg.total_degree
    if n < 1:
        raise ValueError("cannot prune an empty curve configuration")
    m = len(joints)
    thresholds = {c: Fraction(m * c.degree, 2 * n) for c in cfg.curves}
    alive_curves = sorted(cfg.curves, key=ParamCurve.sort_key)
    alive_points = {p: joints.curves_through(p) for p in joints.points}
    removed_curves: list[ParamCurve] = []
    removed_points: set[Vector] = set()

    while True:
        counts = {c: 0 for c in alive_curves}
        for through in alive_points.values():
            for c in through:
                if c in counts:
                    counts[c] += 1
        victim = next(
            (c for c in alive_curves if counts[c] < thresholds[c]), None
        )
        if victim is None:
            break
        alive_curves.remove(victim)
        removed_curves.append(victim)
        dead = [p for p, through in alive_points.items() if victim in through]
        for p in dead:
            removed_points.add(p)
            del alive_points[p]

    if m > 0 and not Fraction(len(removed_points)) < Fraction(m, 2):
        raise InternalInvariantViolation(
            f"curve pruning removed {len(removed_points)} >= m/2 of {m} joints"
        )
    # Points incident to a removed curve were themselves removed, so the
    # surviving incidence sets already contain only surviving curves.
    survivors = CurveJointSet(dict(alive_points))
    return CurvePruneResult(
        surviving=CurveConfiguration(cfg.dim, tuple(alive_curves)),
        survivors=survivors,
        removed_curves=tuple(removed_curves),
        removed_points=frozenset(removed_points),
        thresholds=thresholds,
    )
