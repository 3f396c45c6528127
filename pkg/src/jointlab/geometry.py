"""Lines, configurations, joint detection, and generic projections.

A line is stored in a canonical form so that set membership and equality are
exact structural checks: the direction is a primitive integer vector whose
first nonzero entry is positive, and the base point is the foot of the
perpendicular from the origin (a rational point, so exactly representable).
A joint of a configuration is a point incident to at least d of its lines
whose directions span all of d-space; concurrent lines lie in a common
hyperplane exactly when their directions fit in a (d-1)-subspace, so the
predicate is a rank test.
"""

from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator

from .errors import (
    DimensionMismatchError,
    FileFormatError,
    GenericityFailureError,
    IdenticalLinesError,
)
from .exact import (
    Vector,
    dot,
    format_rational,
    mat_vec,
    parse_rational,
    rank,
    vec_scale,
    vec_sub,
    vector,
)

log = logging.getLogger(__name__)

PROJECTION_COEFF_BOUND = 1000
PROJECTION_MAX_ATTEMPTS = 16


def _primitive(direction: Vector) -> Vector:
    """Scale to an integer vector with entry gcd 1 and positive first nonzero."""
    mult = lcm(*(c.denominator for c in direction))
    ints = [int(c * mult) for c in direction]
    g = gcd(*ints)
    ints = [c // g for c in ints]
    first = next(c for c in ints if c != 0)
    if first < 0:
        ints = [-c for c in ints]
    return tuple(Fraction(c) for c in ints)


@dataclass(frozen=True)
class Line:
    """A line in rational d-space, canonicalized on construction."""

    base: Vector
    direction: Vector

    def __post_init__(self):
        base = vector(self.base)
        direction = vector(self.direction)
        if len(base) != len(direction):
            raise DimensionMismatchError(
                f"base has dimension {len(base)}, direction {len(direction)}"
            )
        if len(base) < 2:
            raise ValueError("lines need ambient dimension >= 2")
        if all(c == 0 for c in direction):
            raise ValueError("line direction must be nonzero")
        direction = _primitive(direction)
        shift = dot(base, direction) / dot(direction, direction)
        base = vec_sub(base, vec_scale(direction, shift))
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "direction", direction)

    @property
    def dim(self) -> int:
        return len(self.base)

    def point_at(self, t) -> Vector:
        t = Fraction(t)
        return tuple(b + t * v for b, v in zip(self.base, self.direction))

    def sort_key(self):
        return (self.direction, self.base)

    def __repr__(self):
        base = ", ".join(format_rational(c) for c in self.base)
        direction = ", ".join(format_rational(c) for c in self.direction)
        return f"Line(({base}) + t*({direction}))"


@dataclass(frozen=True)
class Configuration:
    """A dimension together with a deduplicated set of lines."""

    dim: int
    lines: frozenset[Line] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("configurations need dimension >= 2")
        for line in self.lines:
            if line.dim != self.dim:
                raise DimensionMismatchError(
                    f"line of dimension {line.dim} in {self.dim}-dimensional configuration"
                )

    @property
    def n(self) -> int:
        return len(self.lines)

    def sorted_lines(self) -> list[Line]:
        return sorted(self.lines, key=Line.sort_key)


def configuration(dim: int, lines: Iterable[Line]) -> Configuration:
    return Configuration(dim, frozenset(lines))


@dataclass(frozen=True, eq=True)
class JointSet:
    """Joints with their exact incidence sets, iterated in sorted point order."""

    incidence: dict[Vector, frozenset[Line]]

    @property
    def points(self) -> tuple[Vector, ...]:
        return tuple(sorted(self.incidence))

    def lines_through(self, point: Vector) -> frozenset[Line]:
        return self.incidence[point]

    def __len__(self) -> int:
        return len(self.incidence)

    def __contains__(self, point: Vector) -> bool:
        return point in self.incidence

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.points)


def incident(line: Line, point: Vector) -> bool:
    """True iff point - base is an exact rational multiple of the direction."""
    point = vector(point)
    if len(point) != line.dim:
        raise DimensionMismatchError(
            f"point of dimension {len(point)} against line of dimension {line.dim}"
        )
    delta = vec_sub(point, line.base)
    axis = next(i for i, c in enumerate(line.direction) if c != 0)
    t = delta[axis] / line.direction[axis]
    return all(delta[i] == t * line.direction[i] for i in range(line.dim))


def line_line_intersection(l1: Line, l2: Line) -> Vector | None:
    """The unique common point of two distinct lines, or None if they miss.

    Solves the two-unknown system base1 + t d1 = base2 + s d2 on a coordinate
    pair where it is invertible, then verifies every remaining coordinate, so
    parallel and skew pairs both come back as None.
    """
    if l1.dim != l2.dim:
        raise DimensionMismatchError("lines live in different dimensions")
    if l1 == l2:
        raise IdenticalLinesError(f"identical lines: {l1!r}")
    v1, v2 = l1.direction, l2.direction
    rhs = vec_sub(l2.base, l1.base)
    solved = None
    for i in range(l1.dim):
        for j in range(i + 1, l1.dim):
            det = v2[i] * v1[j] - v1[i] * v2[j]
            if det != 0:
                t = (rhs[i] * (-v2[j]) + v2[i] * rhs[j]) / det
                s = (v1[i] * rhs[j] - rhs[i] * v1[j]) / det
                solved = (t, s)
                break
        if solved:
            break
    if solved is None:
        # All 2x2 direction minors vanish: parallel distinct lines.
        return None
    t, s = solved
    point = tuple(b + t * v for b, v in zip(l1.base, v1))
    other = tuple(b + s * v for b, v in zip(l2.base, v2))
    if point != other:
        return None
    return point


def direction_rank(lines: Iterable[Line]) -> int:
    """Dimension of the linear span of the lines' primitive directions."""
    rows = [line.direction for line in sorted(lines, key=Line.sort_key)]
    if not rows:
        raise ValueError("direction_rank needs at least one line")
    return rank(rows)


def _incident_lines(config: Configuration, point: Vector) -> frozenset[Line]:
    return frozenset(l for l in config.lines if incident(l, point))


def is_joint(config: Configuration, point: Vector) -> bool:
    """At least d incident lines whose directions span all of d-space."""
    through = _incident_lines(config, point)
    if len(through) < config.dim:
        return False
    return direction_rank(through) == config.dim


def is_s_joint(config: Configuration, point: Vector, s: int) -> bool:
    """Incident directions span a subspace of dimension at least s."""
    if not 2 <= s <= config.dim:
        raise ValueError(f"s must satisfy 2 <= s <= {config.dim}, got {s}")
    through = _incident_lines(config, point)
    if not through:
        return False
    return direction_rank(through) >= s


def _candidate_points(config: Configuration) -> list[Vector]:
    # Complete for joints: every joint lies on >= 2 lines, hence on a
    # pairwise intersection.
    lines = config.sorted_lines()
    seen: set[Vector] = set()
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            pt = line_line_intersection(lines[i], lines[j])
            if pt is not None:
                seen.add(pt)
    return sorted(seen)


def find_joints(config: Configuration) -> JointSet:
    """All joints of the configuration with their full incidence sets."""
    incidence: dict[Vector, frozenset[Line]] = {}
    for pt in _candidate_points(config):
        through = _incident_lines(config, pt)
        if len(through) >= config.dim and direction_rank(through) == config.dim:
            incidence[pt] = through
    return JointSet(incidence)


def find_s_joints(config: Configuration, s: int) -> JointSet:
    """All points on >= 2 lines whose incident directions have rank >= s."""
    if not 2 <= s <= config.dim:
        raise ValueError(f"s must satisfy 2 <= s <= {config.dim}, got {s}")
    incidence: dict[Vector, frozenset[Line]] = {}
    for pt in _candidate_points(config):
        through = _incident_lines(config, pt)
        if len(through) >= 2 and direction_rank(through) >= s:
            incidence[pt] = through
    return JointSet(incidence)


@dataclass(frozen=True)
class Projection:
    """Result of a verified generic projection to a lower dimension."""

    config: Configuration
    matrix: tuple[Vector, ...]
    line_images: dict[Line, Line]
    attempts: int

    def apply(self, point: Vector) -> Vector:
        return mat_vec(self.matrix, vector(point))


def project_to_generic_flat(config: Configuration, s: int, seed: int) -> Projection:
    """Project lines (and their s-joints) to dimension s by a random map.

    Draws an s x d integer matrix from a seeded PRNG and verifies, exactly,
    that it is full rank, that no direction collapses to zero, that distinct
    lines stay distinct, and that distinct s-joints stay distinct; otherwise
    it redraws with a derived seed, up to a fixed retry budget.
    """
    if not 2 <= s < config.dim:
        raise ValueError(f"s must satisfy 2 <= s < {config.dim}, got {s}")
    s_joints = find_s_joints(config, s)
    lines = config.sorted_lines()
    for attempt in range(PROJECTION_MAX_ATTEMPTS):
        rng = random.Random(seed * PROJECTION_MAX_ATTEMPTS + attempt)
        matrix = tuple(
            tuple(
                Fraction(rng.randint(-PROJECTION_COEFF_BOUND, PROJECTION_COEFF_BOUND))
                for _ in range(config.dim)
            )
            for _ in range(s)
        )
        if rank(matrix) < s:
            continue
        try:
            images = {
                line: Line(mat_vec(matrix, line.base), mat_vec(matrix, line.direction))
                for line in lines
            }
        except ValueError:
            continue  # some direction mapped to zero
        if len(set(images.values())) != len(lines):
            continue
        projected_points = [mat_vec(matrix, p) for p in s_joints.points]
        if len(set(projected_points)) != len(projected_points):
            continue
        return Projection(
            config=configuration(s, images.values()),
            matrix=matrix,
            line_images=images,
            attempts=attempt + 1,
        )
    raise GenericityFailureError(
        f"no generic projection found in {PROJECTION_MAX_ATTEMPTS} attempts "
        f"(seed {seed}); the instance is degenerate or the luck absurd"
    )


# ---------------------------------------------------------------------------
# JSON wire format


def configuration_to_dict(config: Configuration) -> dict:
    return {
        "dim": config.dim,
        "lines": [
            {
                "base": [format_rational(c) for c in line.base],
                "dir": [format_rational(c) for c in line.direction],
            }
            for line in config.sorted_lines()
        ],
    }


def _parse_coords(values, dim: int, where: str) -> Vector:
    if not isinstance(values, list) or len(values) != dim:
        raise FileFormatError(f"{where}: expected a list of {dim} rationals")
    out = []
    for k, item in enumerate(values):
        if not isinstance(item, str):
            raise FileFormatError(f"{where}[{k}]: rationals must be strings")
        try:
            out.append(parse_rational(item))
        except ValueError as exc:
            raise FileFormatError(f"{where}[{k}]: {exc}") from exc
    return tuple(out)


def configuration_from_dict(obj) -> Configuration:
    if not isinstance(obj, dict):
        raise FileFormatError("top level: expected an object")
    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 2:
        raise FileFormatError("dim: expected an integer >= 2")
    raw_lines = obj.get("lines")
    if not isinstance(raw_lines, list):
        raise FileFormatError("lines: expected a list")
    lines = []
    for i, raw in enumerate(raw_lines):
        if not isinstance(raw, dict):
            raise FileFormatError(f"lines[{i}]: expected an object")
        base = _parse_coords(raw.get("base"), dim, f"lines[{i}].base")
        direction = _parse_coords(raw.get("dir"), dim, f"lines[{i}].dir")
        try:
            lines.append(Line(base, direction))
        except ValueError as exc:
            raise FileFormatError(f"lines[{i}]: {exc}") from exc
    deduped = frozenset(lines)
    if len(deduped) < len(lines):
        log.warning("deduplicated %d duplicate line(s)", len(lines) - len(deduped))
    return Configuration(dim, deduped)


def save_configuration(config: Configuration, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(configuration_to_dict(config), fh, indent=2)
        fh.write("\n")


def load_configuration(path) -> Configuration:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: not valid JSON ({exc})") from exc
    return configuration_from_dict(obj)
