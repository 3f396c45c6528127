"""Command-line interface.

Exit codes: 0 success (and inequality holds), 1 usage or input error,
2 inequality violated, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import constructions, curves, harness
from .errors import (
    FileFormatError,
    GenericityFailureError,
    InternalInvariantViolation,
)
from .exact import format_rational, parse_rational
from .geometry import (
    find_joints,
    find_s_joints,
    load_configuration,
    project_to_generic_flat,
    save_configuration,
)
from .pipeline import bound_check, bound_constant, trace, trace_to_dict
from .polynomial import (
    fit_vanishing,
    fit_vanishing_at_degree,
    min_fit_degree,
    minimal_vanishing_degree,
    polynomial_from_text,
    polynomial_to_text,
    unipoly_to_text,
)


def _parse_range(text: str) -> list[int]:
    """Accept "2..6" or a comma list "2,3,6"."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part != ""]


def _point_str(point) -> str:
    return " ".join(format_rational(c) for c in point)


def _cmd_gen(args) -> int:
    if args.family == "grid":
        config = constructions.grid(args.dim, args.k)
    elif args.family == "random":
        config = constructions.random_config(
            args.dim, args.n, args.seed, args.coord_bound
        )
    elif args.family == "planar":
        config = constructions.planar_bundle(args.dim, args.n)
    else:
        config = constructions.grid_plus_orphan(args.dim, args.k)
    save_configuration(config, args.output)
    print(f"wrote {config.n} lines in dimension {config.dim} to {args.output}")
    return 0


def _cmd_joints(args) -> int:
    config = load_configuration(args.file)
    if args.s is not None:
        joints = find_s_joints(config, args.s)
    else:
        joints = find_joints(config)
    print(len(joints))
    for point in joints.points:
        print(_point_str(point))
    return 0


def _cmd_fit(args) -> int:
    config = load_configuration(args.file)
    joints = find_joints(config)
    m = len(joints)
    print(f"joints: {m}")
    if m == 0:
        print("nothing to fit")
        return 0
    b = min_fit_degree(m, config.dim)
    print(f"degree bound b: {b}")
    if args.minimal:
        b_star = minimal_vanishing_degree(joints.points, config.dim)
        print(f"minimal degree: {b_star}")
        poly = fit_vanishing_at_degree(joints.points, config.dim, b_star)
    else:
        poly = fit_vanishing(joints.points, config.dim)
    print(f"polynomial: {polynomial_to_text(poly)}")
    print(f"degree: {poly.degree()}")
    return 0


def _cmd_trace(args) -> int:
    config = load_configuration(args.file)
    result = trace(config)
    for step in result.narrative:
        extras = ", ".join(f"{k}={v}" for k, v in step.detail.items())
        line = f"[{step.name}] {step.verdict}"
        if extras:
            line += f" ({extras})"
        print(line)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(trace_to_dict(result), fh, indent=2)
            fh.write("\n")
        print(f"trace written to {args.json}")
    return 0


def _cmd_bound(args) -> int:
    config = load_configuration(args.file)
    joints = find_joints(config)
    n, m, d = config.n, len(joints), config.dim
    chk = bound_check(n, m, d)
    print(f"n = {n}, m = {m}, d = {d}")
    print(f"m^(d-1) = {chk.lhs}")
    print(f"2^(d+1) * d! * n^d = {chk.rhs}")
    print(f"A({d}) = {bound_constant(d):.6g}")
    print("holds" if chk.holds else "VIOLATED")
    return 0 if chk.holds else 2


def _cmd_project(args) -> int:
    config = load_configuration(args.file)
    projection = project_to_generic_flat(config, args.s, args.seed)
    save_configuration(projection.config, args.output)
    print(
        f"projected {config.n} lines to dimension {args.s} "
        f"in {projection.attempts} attempt(s); wrote {args.output}"
    )
    for row in projection.matrix:
        print("  [" + " ".join(format_rational(c) for c in row) + "]")
    return 0


def _cmd_sweep(args) -> int:
    if args.family == "grid":
        ks = _parse_range(args.k)
        if not ks:
            rows = []
        else:
            rows = harness.sweep_grids(args.dim, min(ks), max(ks), force=args.force)
    else:
        rows = harness.sweep_random(
            args.dim,
            _parse_range(args.n),
            _parse_range(args.seeds),
            coord_bound=args.coord_bound,
            force=args.force,
        )
    harness.write_csv(rows, args.csv)
    print(f"wrote {len(rows)} row(s) to {args.csv}")
    return 0


def _cmd_curve(args) -> int:
    cfg = curves.load_curve_configuration(args.file)
    if args.action == "restrict":
        poly = polynomial_from_text(args.poly, cfg.dim)
        indices = [args.index] if args.index is not None else range(len(cfg.curves))
        for i in indices:
            if not 0 <= i < len(cfg.curves):
                raise ValueError(f"curve index {i} out of range")
            restriction = curves.restrict_to_curve(poly, cfg.curves[i])
            print(f"curve {i}: {unipoly_to_text(restriction)}")
        return 0
    indices = [int(x) for x in args.curves.split(",")]
    params = [parse_rational(x) for x in args.params.split(",")]
    if len(indices) != len(params):
        raise ValueError("--curves and --params must have the same length")
    pairs = []
    for i, t in zip(indices, params):
        if not 0 <= i < len(cfg.curves):
            raise ValueError(f"curve index {i} out of range")
        pairs.append((cfg.curves[i], Fraction(t)))
    verdict = curves.curve_joint(pairs)
    print("joint" if verdict else "not a joint")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jointlab",
        description="Exact-arithmetic toolkit for joints of line configurations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a configuration file")
    gen_sub = gen.add_subparsers(dest="family", required=True)
    for family in ("grid", "random", "planar", "grid-orphan"):
        g = gen_sub.add_parser(family)
        g.add_argument("--dim", type=int, required=True)
        if family in ("grid", "grid-orphan"):
            g.add_argument("--k", type=int, required=True)
        else:
            g.add_argument("--n", type=int, required=True)
        if family == "random":
            g.add_argument("--seed", type=int, required=True)
            g.add_argument("--coord-bound", type=int, default=10)
        g.add_argument("-o", "--output", required=True)
        g.set_defaults(handler=_cmd_gen)

    joints = sub.add_parser("joints", help="count and list joints")
    joints.add_argument("file")
    joints.add_argument("--s", type=int, default=None, help="detect s-joints instead")
    joints.set_defaults(handler=_cmd_joints)

    fit = sub.add_parser("fit", help="fit a vanishing polynomial on the joints")
    fit.add_argument("file")
    fit.add_argument("--minimal", action="store_true")
    fit.set_defaults(handler=_cmd_fit)

    tr = sub.add_parser("trace", help="run the proof pipeline and narrate it")
    tr.add_argument("file")
    tr.add_argument("--json", default=None, help="also write a JSON trace")
    tr.set_defaults(handler=_cmd_trace)

    bound = sub.add_parser("bound", help="exact inequality check")
    bound.add_argument("file")
    bound.set_defaults(handler=_cmd_bound)

    project = sub.add_parser("project", help="generic projection to dimension s")
    project.add_argument("file")
    project.add_argument("--s", type=int, required=True)
    project.add_argument("--seed", type=int, required=True)
    project.add_argument("-o", "--output", required=True)
    project.set_defaults(handler=_cmd_project)

    sweep = sub.add_parser("sweep", help="sweep a family and emit CSV")
    sweep_sub = sweep.add_subparsers(dest="family", required=True)
    sg = sweep_sub.add_parser("grid")
    sg.add_argument("--dim", type=int, required=True)
    sg.add_argument("--k", required=True, help='range like "2..6"')
    sg.add_argument("--csv", required=True)
    sg.add_argument("--force", action="store_true")
    sg.set_defaults(handler=_cmd_sweep)
    sr = sweep_sub.add_parser("random")
    sr.add_argument("--dim", type=int, required=True)
    sr.add_argument("--n", required=True, help='list like "10,20" or range "5..8"')
    sr.add_argument("--seeds", required=True, help='list or range of seeds')
    sr.add_argument("--coord-bound", type=int, default=10)
    sr.add_argument("--csv", required=True)
    sr.add_argument("--force", action="store_true")
    sr.set_defaults(handler=_cmd_sweep)

    curve = sub.add_parser("curve", help="curve restriction and joint checks")
    curve_sub = curve.add_subparsers(dest="action", required=True)
    cr = curve_sub.add_parser("restrict")
    cr.add_argument("file")
    cr.add_argument("--poly", required=True, help='polynomial text, e.g. "x2^2 - x1*x3"')
    cr.add_argument("--index", type=int, default=None)
    cr.set_defaults(handler=_cmd_curve)
    cj = curve_sub.add_parser("joint")
    cj.add_argument("file")
    cj.add_argument("--curves", required=True, help="comma list of curve indices")
    cj.add_argument("--params", required=True, help="comma list of parameters")
    cj.set_defaults(handler=_cmd_curve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        return args.handler(args)
    except InternalInvariantViolation as exc:
        # covers ContradictionBugError as well
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3
    except GenericityFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FileFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
