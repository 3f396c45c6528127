"""Independent oracles used to freeze expected values.

These deliberately avoid the code paths they check: rank by naive
Gauss-Jordan over Fractions (the package uses fraction-free Bareiss),
monomial counting by stars-and-bars recursion (the package filters a
product and uses math.comb), and identically-zero decisions by sampling
more points than the degree (the package compares coefficients).
"""

from fractions import Fraction


def rank_naive(matrix) -> int:
    """Rank by plain rational Gauss-Jordan elimination."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows or not rows[0]:
        return 0
    m, cols = len(rows), len(rows[0])
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / lead[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], lead)]
        r += 1
        if r == m:
            break
    return r


def nullspace_is_trivial_naive(matrix) -> bool:
    cols = len(matrix[0]) if matrix else 0
    return rank_naive(matrix) == cols


def monomial_count_recursive(d: int, b: int) -> int:
    """Monomials in d variables of total degree <= b, counted recursively."""
    if b < 0:
        return 0
    if d == 0:
        return 1
    return sum(monomial_count_recursive(d - 1, b - t) for t in range(b + 1))


def min_fit_degree_enum(m: int, d: int) -> int:
    b = 0
    while monomial_count_recursive(d, b) <= m:
        b += 1
    return b


def integer_root_ceiling(m: int, d: int) -> int:
    """Smallest integer c with c^d >= d! * m, found by exact search."""
    from math import factorial

    target = factorial(d) * m
    c = 0
    while c**d < target:
        c += 1
    return c


def vanishes_on_line_by_sampling(p, line, samples: int) -> bool:
    """Zero iff p(base + t dir) = 0 at `samples` distinct parameters.

    Sound whenever samples > deg of the restriction: a nonzero univariate
    polynomial cannot have that many roots.
    """
    return all(p.evaluate(line.point_at(t)) == 0 for t in range(samples))


def vanishes_on_curve_by_sampling(p, curve, samples: int) -> bool:
    return all(p.evaluate(curve.point_at(t)) == 0 for t in range(samples))
