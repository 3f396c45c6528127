"""The contradiction argument as executable machinery.

Given a configuration, the trace runner replays the whole argument on the
concrete instance: count joints, check the extremal inequality in exact
integers, prune low-incidence lines at a frozen threshold, bound the degree
of a vanishing polynomial, fit one, and drive the derivative cascade.  The
interesting output is *which* hypothesis fails on the instance, recorded
step by step in a narrative.

Every comparison along the way is exact: the pruning threshold m/(2n) is a
rational, the inequality m <= A * n^(d/(d-1)) is decided in the equivalent
integer form m^(d-1) <= 2^(d+1) * d! * n^d, and "vanishes identically on a
line" is a statement about an exactly computed restriction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import (
    ContradictionBugError,
    InternalInvariantViolation,
    ZeroPolynomialError,
)
from .exact import Vector, format_rational
from .geometry import (
    Configuration,
    JointSet,
    Line,
    configuration,
    find_joints,
    is_joint,
)
from .polynomial import (
    Polynomial,
    fit_vanishing,
    min_fit_degree,
    polynomial_to_text,
    vanishes_on_line,
)

BOUND_HOLDS = "BOUND_HOLDS"
ALL_PRUNED = "ALL_PRUNED"
DEGREE_NOT_DOMINATED = "DEGREE_NOT_DOMINATED"
CONTRADICTION_BUG = "CONTRADICTION_BUG"

GRADIENT_ZERO = "GRADIENT_ZERO"
NOT_APPLICABLE = "NOT_APPLICABLE"


@dataclass(frozen=True)
class PruneResult:
    """Fixpoint of removing lines that carry too few surviving joints.

    The threshold m/(2n) is frozen at the start; every surviving line ends up
    with at least that many surviving joints, every surviving joint is still
    a joint among the surviving lines, and fewer than m/2 joints are lost.
    """

    surviving: Configuration
    survivors: JointSet
    removed_lines: tuple[Line, ...]
    removed_points: frozenset[Vector]
    threshold: Fraction


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    lhs: int
    rhs: int


@dataclass(frozen=True)
class TraceStep:
    name: str
    verdict: str
    detail: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class ProofTrace:
    outcome: str
    dim: int
    n: int
    m: int
    threshold: Fraction | None
    b: int | None
    per_line_joint_counts: dict[Line, int]
    fitted: Polynomial | None
    cascade_order: int | None
    narrative: tuple[TraceStep, ...]


@dataclass(frozen=True)
class GradientCheckReport:
    """Per-joint status of the orthogonality argument."""

    statuses: dict[Vector, str]

    def count(self, status: str) -> int:
        return sum(1 for s in self.statuses.values() if s == status)


def bound_constant(d: int) -> float:
    """Decimal approximation of (2^(d+1) d!)^(1/(d-1)), for display only."""
    return float(2 ** (d + 1) * factorial(d)) ** (1.0 / (d - 1))


def bound_check(n: int, m: int, d: int) -> BoundCheck:
    """Decide m <= A(d) * n^(d/(d-1)) in exact integers.

    Raising both sides to the (d-1)-th power turns the irrational constant
    into the integer comparison m^(d-1) <= 2^(d+1) * d! * n^d.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if m < 0:
        raise ValueError("need m >= 0")
    if d < 2:
        raise ValueError("need dimension >= 2")
    lhs = m ** (d - 1)
    rhs = 2 ** (d + 1) * factorial(d) * n**d
    return BoundCheck(holds=lhs <= rhs, lhs=lhs, rhs=rhs)


def _surviving_counts(
    alive_points: dict[Vector, frozenset[Line]], alive_lines: list[Line]
) -> dict[Line, int]:
    counts = {line: 0 for line in alive_lines}
    for through in alive_points.values():
        for line in through:
            if line in counts:  # experiment subsets may reference other lines
                counts[line] += 1
    return counts


def prune(config: Configuration, joints: JointSet) -> PruneResult:
    """Iteratively remove lines carrying fewer than m/(2n) surviving joints.

    The threshold stays frozen at its initial value.  Removal order is
    deterministic: among currently eligible lines, the first in canonical
    order goes.  Removing a line also removes its surviving incident joints,
    so surviving joints never reference removed lines.
    """
    n = config.n
    if n < 1:
        raise ValueError("cannot prune an empty configuration")
    m = len(joints)
    threshold = Fraction(m, 2 * n)
    alive_lines = config.sorted_lines()
    alive_points = {p: joints.lines_through(p) for p in joints.points}
    removed_lines: list[Line] = []
    removed_points: set[Vector] = set()

    while True:
        counts = _surviving_counts(alive_points, alive_lines)
        victim = next(
            (line for line in alive_lines if counts[line] < threshold), None
        )
        if victim is None:
            break
        alive_lines.remove(victim)
        removed_lines.append(victim)
        dead = [p for p, through in alive_points.items() if victim in through]
        for p in dead:
            removed_points.add(p)
            del alive_points[p]

    surviving = configuration(config.dim, alive_lines)
    survivors = JointSet(dict(alive_points))
    _check_prune_invariants(
        config, surviving, survivors, removed_points, threshold, m
    )
    return PruneResult(
        surviving=surviving,
        survivors=survivors,
        removed_lines=tuple(removed_lines),
        removed_points=frozenset(removed_points),
        threshold=threshold,
    )


def _check_prune_invariants(config, surviving, survivors, removed_points, threshold, m):
    surviving_set = surviving.lines
    if m > 0:
        if not Fraction(len(removed_points)) < Fraction(m, 2):
            raise InternalInvariantViolation(
                f"pruning removed {len(removed_points)} >= m/2 of {m} joints"
            )
    elif removed_points:
        raise InternalInvariantViolation("pruning removed points from an empty joint set")
    counts = _surviving_counts(
        {p: survivors.lines_through(p) for p in survivors.points},
        sorted(surviving_set, key=Line.sort_key),
    )
    for line, count in counts.items():
        if Fraction(count) < threshold:
            raise InternalInvariantViolation(
                f"surviving line {line!r} carries {count} < threshold joints"
            )
    for p in survivors.points:
        if not survivors.lines_through(p) <= surviving_set:
            raise InternalInvariantViolation(
                f"surviving joint {p} references a removed line"
            )
        if not is_joint(surviving, p):
            raise InternalInvariantViolation(
                f"surviving point {p} is no longer a joint among survivors"
            )


def cascade(p: Polynomial, lines) -> int:
    """Largest r such that every partial derivative of every order <= r
    vanishes identically on every line; -1 if p itself fails somewhere.

    Capped at deg p: some derivative of order deg p is a nonzero constant, so
    with at least one line present the check must fail by then; returning the
    cap therefore signals an impossibility the caller should treat as a bug.
    With no lines at all every condition is vacuous and the cap is returned.
    """
    if p.is_zero():
        raise ZeroPolynomialError("cascade needs a nonzero polynomial")
    lines = sorted(lines, key=Line.sort_key)
    top = p.degree()
    if not lines:
        return top
    current: dict[tuple[int, ...], Polynomial] = {(0,) * p.dim: p}
    result = -1
    for order in range(top + 1):
        ok = all(
            vanishes_on_line(q, line) for q in current.values() for line in lines
        )
        if not ok:
            return result
        result = order
        nxt: dict[tuple[int, ...], Polynomial] = {}
        for alpha, q in current.items():
            for axis in range(p.dim):
                beta = alpha[:axis] + (alpha[axis] + 1,) + alpha[axis + 1 :]
                if beta not in nxt:
                    nxt[beta] = q.partial_derivative(axis)
        current = nxt
    return result


def gradient_at_joints_check(p: Polynomial, joints: JointSet) -> GradientCheckReport:
    """Check the orthogonality step at each joint.

    Where p vanishes identically on every incident line, the gradient is
    orthogonal to a spanning set of directions and must be exactly zero;
    a nonzero gradient there is an implementation bug, not a data condition.
    Joints where the vanishing hypothesis fails are reported NOT_APPLICABLE.
    """
    if p.is_zero():
        raise ZeroPolynomialError("gradient check needs a nonzero polynomial")
    statuses: dict[Vector, str] = {}
    for point in joints.points:
        through = sorted(joints.lines_through(point), key=Line.sort_key)
        if all(vanishes_on_line(p, line) for line in through):
            grad = p.gradient(point)
            if any(c != 0 for c in grad):
                raise InternalInvariantViolation(
                    f"gradient {grad} nonzero at joint {point} despite vanishing "
                    "on all incident spanning lines"
                )
            statuses[point] = GRADIENT_ZERO
        else:
            statuses[point] = NOT_APPLICABLE
    return GradientCheckReport(statuses)


def trace(config: Configuration) -> ProofTrace:
    """Replay the whole argument on one configuration.

    The outcome reports how the counterfactual hypothesis fails here:
    BOUND_HOLDS when the inequality already holds (the usual case, decided
    first but the remaining steps still run for demonstration), ALL_PRUNED
    when pruning wipes out every joint, DEGREE_NOT_DOMINATED when some
    surviving line carries too few joints to force vanishing.  Exhausting
    the cascade instead raises ContradictionBugError: it would mean a
    nonzero constant vanished identically on a line.
    """
    if config.dim < 3:
        raise ValueError("trace needs dimension >= 3")
    d = config.dim
    joints = find_joints(config)
    n, m = config.n, len(joints)
    steps: list[TraceStep] = []
    steps.append(
        TraceStep(
            name="joints",
            verdict=f"{m} joints on {n} lines",
            detail={"n": str(n), "m": str(m), "dim": str(d)},
        )
    )

    chk = bound_check(n, m, d)
    steps.append(
        TraceStep(
            name="bound",
            verdict="holds" if chk.holds else "violated",
            detail={
                "lhs": str(chk.lhs),
                "rhs": str(chk.rhs),
                "constant": f"{bound_constant(d):.6g}",
            },
        )
    )

    pr = prune(config, joints)
    m_surv = len(pr.survivors)
    steps.append(
        TraceStep(
            name="prune",
            verdict=(
                f"removed {len(pr.removed_lines)} line(s) and "
                f"{len(pr.removed_points)} joint(s)"
            ),
            detail={
                "threshold": format_rational(pr.threshold),
                "surviving_lines": str(pr.surviving.n),
                "surviving_joints": str(m_surv),
            },
        )
    )

    outcome: str | None = None
    if m_surv == 0:
        outcome = ALL_PRUNED
        steps.append(TraceStep(name="outcome", verdict=outcome))
        return ProofTrace(
            outcome=outcome,
            dim=d,
            n=n,
            m=m,
            threshold=pr.threshold,
            b=None,
            per_line_joint_counts={},
            fitted=None,
            cascade_order=None,
            narrative=tuple(steps),
        )

    if chk.holds:
        outcome = BOUND_HOLDS

    b = min_fit_degree(m_surv, d)
    counts = _surviving_counts(
        {p: pr.survivors.lines_through(p) for p in pr.survivors.points},
        pr.surviving.sorted_lines(),
    )
    min_count = min(counts.values())
    dominated = min_count > b
    steps.append(
        TraceStep(
            name="degree",
            verdict=(
                f"every line carries > b joints ({min_count} > {b})"
                if dominated
                else f"some line carries <= b joints ({min_count} <= {b}): "
                "vanishing on lines is not forced"
            ),
            detail={"b": str(b), "min_line_joints": str(min_count)},
        )
    )
    if not dominated and outcome is None:
        outcome = DEGREE_NOT_DOMINATED

    fitted = fit_vanishing(pr.survivors.points, d)
    vanishing = [
        line for line in pr.surviving.sorted_lines() if vanishes_on_line(fitted, line)
    ]
    steps.append(
        TraceStep(
            name="fit",
            verdict=(
                f"degree {fitted.degree()} polynomial vanishes identically on "
                f"{len(vanishing)} of {pr.surviving.n} surviving lines"
            ),
            detail={
                "polynomial": polynomial_to_text(fitted),
                "degree": str(fitted.degree()),
                "vanishing_lines": str(len(vanishing)),
            },
        )
    )

    order = cascade(fitted, pr.surviving.lines)
    steps.append(
        TraceStep(
            name="cascade",
            verdict=(
                "the polynomial itself fails to vanish identically on some line"
                if order < 0
                else f"derivatives vanish on all lines through order {order}"
            ),
            detail={"order": str(order)},
        )
    )

    if order >= fitted.degree():
        steps.append(TraceStep(name="outcome", verdict=CONTRADICTION_BUG))
        partial = ProofTrace(
            outcome=CONTRADICTION_BUG,
            dim=d,
            n=n,
            m=m,
            threshold=pr.threshold,
            b=b,
            per_line_joint_counts=counts,
            fitted=fitted,
            cascade_order=order,
            narrative=tuple(steps),
        )
        raise ContradictionBugError(
            "every derivative of every order vanished identically on all "
            "surviving lines; a nonzero constant cannot do that",
            trace=partial,
        )
    if outcome is None:
        # Bound violated yet every surviving line dominated b and the cascade
        # still halted: no consistent reading of the argument allows this.
        raise InternalInvariantViolation(
            "inequality violated but the proof machinery found no failing step"
        )

    steps.append(TraceStep(name="outcome", verdict=outcome))
    return ProofTrace(
        outcome=outcome,
        dim=d,
        n=n,
        m=m,
        threshold=pr.threshold,
        b=b,
        per_line_joint_counts=counts,
        fitted=fitted,
        cascade_order=order,
        narrative=tuple(steps),
    )


def trace_to_dict(tr: ProofTrace) -> dict:
    """JSON form: integers as decimal strings, polynomial in text form."""
    from .geometry import configuration_to_dict  # line serialization helper

    def line_obj(line: Line) -> dict:
        cfg = configuration_to_dict(configuration(tr.dim, [line]))
        return cfg["lines"][0]

    return {
        "outcome": tr.outcome,
        "dim": str(tr.dim),
        "n": str(tr.n),
        "m": str(tr.m),
        "threshold": format_rational(tr.threshold) if tr.threshold is not None else None,
        "b": str(tr.b) if tr.b is not None else None,
        "fitted": polynomial_to_text(tr.fitted) if tr.fitted is not None else None,
        "cascade_order": str(tr.cascade_order)
        if tr.cascade_order is not None
        else None,
        "per_line_joint_counts": [
            {"line": line_obj(line), "count": str(count)}
            for line, count in sorted(
                tr.per_line_joint_counts.items(), key=lambda kv: kv[0].sort_key()
            )
        ],
        "narrative": [
            {"step": s.name, "verdict": s.verdict, "detail": dict(s.detail)}
            for s in tr.narrative
        ],
    }
