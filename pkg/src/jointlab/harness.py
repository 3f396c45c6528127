"""Experiment sweeps over configuration families, with CSV persistence.

Each row records the exact integer inequality check m^(d-1) <= 2^(d+1) d! n^d
plus the decimal ratio m / n^(d/(d-1)) for human reading; assertions use only
the integers, the decimal is 6-significant-digit display.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, fields
from typing import Iterable, Sequence

from .constructions import grid, random_config
from .errors import InternalInvariantViolation
from .geometry import find_joints
from .pipeline import bound_check

PAIR_GUARD = 1_000_000


@dataclass(frozen=True)
class SweepRow:
    d: int
    k_or_n: int
    seed: int | None
    n: int
    m: int
    lhs: int
    rhs: int
    holds: bool
    ratio: str


def _guard_pairs(n: int, force: bool) -> None:
    if n * n > PAIR_GUARD and not force:
        raise ValueError(
            f"{n} lines mean {n * n} candidate pairs > {PAIR_GUARD}; "
            "pass force=True (--force) to run anyway"
        )


def _make_row(d: int, k_or_n: int, seed: int | None, n: int, m: int) -> SweepRow:
    chk = bound_check(n, m, d)
    if not chk.holds:
        raise InternalInvariantViolation(
            f"inequality violated at d={d}, n={n}, m={m}: this would be a "
            "counterexample and is an implementation bug"
        )
    ratio = m / n ** (d / (d - 1))
    return SweepRow(
        d=d,
        k_or_n=k_or_n,
        seed=seed,
        n=n,
        m=m,
        lhs=chk.lhs,
        rhs=chk.rhs,
        holds=chk.holds,
        ratio=f"{ratio:.6g}",
    )


def sweep_grids(d: int, k_min: int, k_max: int, force: bool = False) -> list[SweepRow]:
    """One row per grid size k in [k_min, k_max]; empty range gives no rows."""
    rows = []
    for k in range(k_min, k_max + 1):
        config = grid(d, k)
        _guard_pairs(config.n, force)
        m = len(find_joints(config))
        rows.append(_make_row(d, k, None, config.n, m))
    return rows


def sweep_random(
    d: int,
    n_list: Sequence[int],
    seeds: Sequence[int],
    coord_bound: int = 10,
    force: bool = False,
) -> list[SweepRow]:
    """One row per (line count, seed) pair, in deterministic order."""
    rows = []
    for n in n_list:
        _guard_pairs(n, force)
        for seed in seeds:
            config = random_config(d, n, seed, coord_bound)
            m = len(find_joints(config))
            rows.append(_make_row(d, n, seed, config.n, m))
    return rows


CSV_COLUMNS = [f.name for f in fields(SweepRow)]


def write_csv(rows: Iterable[SweepRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row.d,
                    row.k_or_n,
                    "" if row.seed is None else row.seed,
                    row.n,
                    row.m,
                    row.lhs,
                    row.rhs,
                    "true" if row.holds else "false",
                    row.ratio,
                ]
            )


def read_csv(path) -> list[SweepRow]:
    rows = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        for rec in reader:
            rows.append(
                SweepRow(
                    d=int(rec["d"]),
                    k_or_n=int(rec["k_or_n"]),
                    seed=None if rec["seed"] == "" else int(rec["seed"]),
                    n=int(rec["n"]),
                    m=int(rec["m"]),
                    lhs=int(rec["lhs"]),
                    rhs=int(rec["rhs"]),
                    holds=rec["holds"] == "true",
                    ratio=rec["ratio"],
                )
            )
    return rows
