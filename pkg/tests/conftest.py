from fractions import Fraction
from itertools import product

import pytest

from jointlab.constructions import grid, grid_plus_orphan, planar_bundle, random_config


def cube_points(k: int, d: int):
    return [tuple(Fraction(c) for c in pt) for pt in product(range(k), repeat=d)]


@pytest.fixture(scope="session")
def corpus():
    """The shared test corpus: grids, random configs, bundles, orphans."""
    entries = []
    for d, k in [(3, 2), (3, 3), (3, 4), (3, 5), (4, 2), (4, 3)]:
        entries.append((f"grid({d},{k})", grid(d, k)))
    for d in (3, 4):
        for n in (5, 10, 15, 20, 25):
            for seed in (1, 2, 3, 4, 5):
                entries.append(
                    (f"random(d={d},n={n},seed={seed})", random_config(d, n, seed, 10))
                )
    entries.append(("planar(3,5)", planar_bundle(3, 5)))
    entries.append(("planar(4,2)", planar_bundle(4, 2)))
    entries.append(("planar(3,50)", planar_bundle(3, 50)))
    entries.append(("orphan(3,2)", grid_plus_orphan(3, 2)))
    entries.append(("orphan(3,3)", grid_plus_orphan(3, 3)))
    entries.append(("orphan(4,2)", grid_plus_orphan(4, 2)))
    return entries
