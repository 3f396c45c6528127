"""Sparse multivariate polynomials over the rationals.

Exponent vectors are int tuples, coefficients are Fractions, and the zero
polynomial has an empty term map.  The monomial order everywhere is graded
lexicographic (total degree first, then lexicographic on exponent tuples);
fixing it globally makes evaluation matrices, nullspace selection, and
printed term order reproducible across runs.

Univariate restrictions (to a line, or to a parametrized curve) are plain
coefficient tuples in ascending powers of the parameter, trailing zeros
trimmed, with the zero polynomial equal to the empty tuple.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import product
from math import comb
from typing import TYPE_CHECKING, Iterable, Mapping

from .errors import DimensionMismatchError, InternalInvariantViolation
from .exact import Vector, format_rational, nullspace_vector, parse_rational, rank

if TYPE_CHECKING:
    from .geometry import Line

MultiIndex = tuple[int, ...]
UniPoly = tuple[Fraction, ...]


def grlex_key(exponents: MultiIndex) -> tuple[int, MultiIndex]:
    """Ascending graded-lex sort key: total degree, then exponent tuple."""
    return (sum(exponents), exponents)


def monomial_basis(d: int, b: int) -> list[MultiIndex]:
    """All exponent vectors of total degree <= b, ascending graded-lex.

    The length is C(b + d, d).
    """
    if d < 1:
        raise ValueError("need at least one variable")
    if b < 0:
        raise ValueError("degree bound must be nonnegative")
    exps = [e for e in product(range(b + 1), repeat=d) if sum(e) <= b]
    exps.sort(key=grlex_key)
    return exps


def min_fit_degree(m: int, d: int) -> int:
    """Smallest b with C(b + d, d) > m.

    A polynomial of that degree has more monomials than there are vanishing
    constraints for m points, so a nontrivial fit always exists.
    """
    if m < 0:
        raise ValueError("point count must be nonnegative")
    if d < 1:
        raise ValueError("need at least one variable")
    b = 0
    while comb(b + d, d) <= m:
        b += 1
    return b


class Polynomial:
    """Immutable sparse polynomial in ``dim`` variables."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[MultiIndex, Fraction] | None = None):
        if dim < 1:
            raise ValueError("polynomial needs at least one variable")
        clean: dict[MultiIndex, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != dim:
                raise DimensionMismatchError(
                    f"exponent vector {exps} has length != {dim}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[exps] = coeff
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, dim: int, value) -> "Polynomial":
        return cls(dim, {(0,) * dim: Fraction(value)})

    @classmethod
    def variable(cls, dim: int, axis: int) -> "Polynomial":
        """The monomial x_{axis+1} (axes are 0-based, display names 1-based)."""
        if not 0 <= axis < dim:
            raise ValueError(f"axis {axis} out of range for dimension {dim}")
        exps = tuple(1 if i == axis else 0 for i in range(dim))
        return cls(dim, {exps: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def evaluate(self, point: Vector) -> Fraction:
        if len(point) != self.dim:
            raise DimensionMismatchError(
                f"point has dimension {len(point)}, polynomial {self.dim}"
            )
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            value = coeff
            for x, e in zip(point, exps):
                if e:
                    value *= Fraction(x) ** e
            total += value
        return total

    def partial_derivative(self, axis: int) -> "Polynomial":
        """Exact formal derivative along a 0-based axis."""
        if not 0 <= axis < self.dim:
            raise ValueError(f"axis {axis} out of range for dimension {self.dim}")
        out: dict[MultiIndex, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[axis]
            if e == 0:
                continue
            lowered = exps[:axis] + (e - 1,) + exps[axis + 1 :]
            out[lowered] = out.get(lowered, Fraction(0)) + coeff * e
        return Polynomial(self.dim, out)

    def gradient(self, point: Vector) -> Vector:
        return tuple(
            self.partial_derivative(axis).evaluate(point)
            for axis in range(self.dim)
        )

    def _binary(self, other, sign) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.dim, other)
        if other.dim != self.dim:
            raise DimensionMismatchError("mixed-dimension polynomial arithmetic")
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            out[exps] = out.get(exps, Fraction(0)) + sign * coeff
        return Polynomial(self.dim, out)

    def __add__(self, other):
        return self._binary(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(
                self.dim, {e: c * Fraction(other) for e, c in self.terms.items()}
            )
        if other.dim != self.dim:
            raise DimensionMismatchError("mixed-dimension polynomial arithmetic")
        out: dict[MultiIndex, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Polynomial(self.dim, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.dim == other.dim
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        return f"Polynomial({self.dim}, {polynomial_to_text(self)!r})"


# ---------------------------------------------------------------------------
# univariate helpers


def uni_trim(coeffs: Iterable) -> UniPoly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def uni_is_zero(p: UniPoly) -> bool:
    return not p


def uni_degree(p: UniPoly) -> int:
    return len(p) - 1


def uni_add(a: UniPoly, b: UniPoly) -> UniPoly:
    n = max(len(a), len(b))
    return uni_trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def uni_scale(a: UniPoly, c) -> UniPoly:
    return uni_trim(Fraction(c) * x for x in a)


def uni_mul(a: UniPoly, b: UniPoly) -> UniPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return uni_trim(out)


def uni_pow(a: UniPoly, e: int) -> UniPoly:
    out: UniPoly = (Fraction(1),)
    for _ in range(e):
        out = uni_mul(out, a)
    return out


def uni_eval(p: UniPoly, t) -> Fraction:
    t = Fraction(t)
    value = Fraction(0)
    for c in reversed(p):
        value = value * t + c
    return value


def uni_derivative(p: UniPoly) -> UniPoly:
    return uni_trim(i * c for i, c in enumerate(p) if i >= 1)


# ---------------------------------------------------------------------------
# restriction and vanishing fits


def restrict_to_line(p: Polynomial, line: "Line") -> UniPoly:
    """Substitute base + t * direction into p; exact, degree <= deg p."""
    if p.dim != len(line.base):
        raise DimensionMismatchError(
            f"polynomial dimension {p.dim} vs line dimension {len(line.base)}"
        )
    total: UniPoly = ()
    for exps, coeff in p.terms.items():
        term: UniPoly = (coeff,)
        for b, v, e in zip(line.base, line.direction, exps):
            if e:
                term = uni_mul(term, uni_pow(uni_trim((b, v)), e))
        total = uni_add(total, term)
    return total


def vanishes_on_line(p: Polynomial, line: "Line") -> bool:
    """True iff p is identically zero along the line."""
    return uni_is_zero(restrict_to_line(p, line))


def _evaluation_matrix(points: list[Vector], basis: list[MultiIndex]):
    rows = []
    for pt in points:
        row = []
        for exps in basis:
            value = Fraction(1)
            for x, e in zip(pt, exps):
                if e:
                    value *= Fraction(x) ** e
            row.append(value)
        rows.append(row)
    return rows


def fit_vanishing_at_degree(
    points: Iterable[Vector], d: int, b: int
) -> Polynomial | None:
    """A nonzero polynomial of degree <= b vanishing on all points, or None.

    Deterministic: rows are the points in sorted order, columns the graded-lex
    basis, and the nullspace selection rule of :func:`nullspace_vector` picks
    the coefficient vector.
    """
    pts = sorted(set(tuple(Fraction(c) for c in p) for p in points))
    for pt in pts:
        if len(pt) != d:
            raise DimensionMismatchError(f"point {pt} is not {d}-dimensional")
    basis = monomial_basis(d, b)
    if not pts:
        return Polynomial(d, {basis[0]: Fraction(1)})
    coeffs = nullspace_vector(_evaluation_matrix(pts, basis))
    if coeffs is None:
        return None
    poly = Polynomial(d, dict(zip(basis, coeffs)))
    if poly.is_zero():
        raise InternalInvariantViolation("nullspace vector produced zero polynomial")
    for pt in pts:
        if poly.evaluate(pt) != 0:
            raise InternalInvariantViolation(
                f"fit does not vanish at {pt}: got {poly.evaluate(pt)}"
            )
    return poly


def fit_vanishing(points: Iterable[Vector], d: int) -> Polynomial:
    """A nonzero polynomial vanishing at every point, degree <= min_fit_degree.

    The underdetermined evaluation system always has a nontrivial solution;
    failure to find one is an internal bug, never a caller error.
    """
    pts = sorted(set(tuple(Fraction(c) for c in p) for p in points))
    if not pts:
        raise ValueError("need at least one point")
    b = min_fit_degree(len(pts), d)
    poly = fit_vanishing_at_degree(pts, d, b)
    if poly is None:
        raise InternalInvariantViolation(
            f"no vanishing polynomial of degree <= {b} for {len(pts)} points"
        )
    return poly


def minimal_vanishing_degree(points: Iterable[Vector], d: int) -> int:
    """Smallest b admitting a nonzero degree-<= b polynomial that vanishes
    on all the points; 0 for the empty set."""
    pts = sorted(set(tuple(Fraction(c) for c in p) for p in points))
    if not pts:
        return 0
    cap = min_fit_degree(len(pts), d)
    for b in range(cap + 1):
        basis = monomial_basis(d, b)
        if rank(_evaluation_matrix(pts, basis)) < len(basis):
            return b
    raise InternalInvariantViolation("no vanishing polynomial up to the fit bound")


# ---------------------------------------------------------------------------
# text form: terms in descending graded-lex order, e.g. "x1^2 - x1"

_TERM_FACTOR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")


def _monomial_text(exps: MultiIndex) -> str:
    factors = []
    for i, e in enumerate(exps):
        if e == 1:
            factors.append(f"x{i + 1}")
        elif e > 1:
            factors.append(f"x{i + 1}^{e}")
    return "*".join(factors)


def polynomial_to_text(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exps in sorted(p.terms, key=grlex_key, reverse=True):
        coeff = p.terms[exps]
        mono = _monomial_text(exps)
        mag = abs(coeff)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def polynomial_from_text(text: str, dim: int) -> Polynomial:
    """Parse the report text form back into a polynomial."""
    compact = text.replace(" ", "")
    if compact in ("", "0"):
        return Polynomial(dim, {})
    chunks = re.findall(r"[+-]?[^+-]+", compact)
    terms: dict[MultiIndex, Fraction] = {}
    for chunk in chunks:
        sign = Fraction(1)
        body = chunk
        if body[0] in "+-":
            if body[0] == "-":
                sign = Fraction(-1)
            body = body[1:]
        if not body:
            raise ValueError(f"empty term in polynomial text {text!r}")
        coeff = sign
        exps = [0] * dim
        for factor in body.split("*"):
            m = _TERM_FACTOR_RE.match(factor)
            if m:
                index = int(m.group(1))
                if not 1 <= index <= dim:
                    raise ValueError(
                        f"variable x{index} out of range for dimension {dim}"
                    )
                exps[index - 1] += int(m.group(2) or 1)
            else:
                coeff *= parse_rational(factor)
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return Polynomial(dim, terms)


def unipoly_to_text(p: UniPoly, var: str = "t") -> str:
    if uni_is_zero(p):
        return "0"
    parts = []
    for e in range(len(p) - 1, -1, -1):
        coeff = p[e]
        if coeff == 0:
            continue
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        mag = abs(coeff)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)
