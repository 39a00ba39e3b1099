"""Exact linear algebra over the rationals.

Projective linear subspaces L of P^k are carried by their annihilators: the
space of linear forms vanishing on L, stored as a canonical reduced row-echelon
basis.  Under this encoding

* intersection of subspaces is concatenation of forms,
* the projective span A + B is the intersection of the two row spaces,
* codim L is the rank of the basis, with rank k+1 standing for the empty set.

Scalars are :class:`fractions.Fraction`.  Elimination is done fraction-free on
integer rows and only converted back to fractions at the end, which keeps the
hot paths (incidence tests during lattice enumeration) in machine-friendly
integer arithmetic without ever rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]


class DimensionMismatch(ValueError):
    pass


def as_rational(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or "a/b" string) to a Fraction.

    Floats are rejected: they would smuggle rounding into exact computations.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def as_vector(values: Iterable) -> Vector:
    return tuple(as_rational(v) for v in values)


def integer_row(row: Sequence) -> list[int]:
    """Scale a rational row to a primitive integer row (same projective point)."""
    if all(type(v) is int for v in row):
        return _primitive(list(row))
    row = [as_rational(v) for v in row]
    den = reduce(lcm, (v.denominator for v in row), 1)
    return _primitive([v.numerator * (den // v.denominator) for v in row])


def _primitive(row: list[int]) -> list[int]:
    g = reduce(gcd, row, 0)
    if g > 1:
        return [v // g for v in row]
    return row


def _int_rref(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan.  Returns nonzero rows and their pivot columns.

    Each returned row is primitive with a positive pivot and zeros in every
    other row's pivot column.
    """
    rows = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == len(rows):
            break
        pick = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                pick = i
                break
        if pick is None:
            continue
        rows[r], rows[pick] = rows[pick], rows[r]
        p = rows[r]
        if p[col] < 0:
            p = [-v for v in p]
        p = _primitive(p)
        rows[r] = p
        b = p[col]
        for i in range(len(rows)):
            if i == r:
                continue
            a = rows[i][col]
            if a == 0:
                continue
            rows[i] = _primitive([b * x - a * y for x, y in zip(rows[i], p)])
        pivots.append(col)
        r += 1
    return rows[:r], pivots


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, int]:
    """Canonical reduced row-echelon form with zero rows dropped, and the rank."""
    rows = list(rows)
    if ncols is None:
        if not rows:
            raise ValueError("column count required for an empty matrix")
        ncols = len(rows[0])
    for row in rows:
        if len(row) != ncols:
            raise DimensionMismatch(f"row of length {len(row)} in a {ncols}-column matrix")
    ints, pivots = _int_rref([integer_row(r) for r in rows], ncols)
    out = tuple(
        tuple(Fraction(v, row[pc]) for v in row) for row, pc in zip(ints, pivots)
    )
    return out, len(out)


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(_int_rref([integer_row(r) for r in rows], ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[int]]:
    """Integer basis of {x : M x = 0} for the matrix with the given rows."""
    ints, pivots = _int_rref([integer_row(r) for r in rows], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        # x_f = D, x_pc = -row[f] * D / row[pc]
        den = reduce(lcm, (row[pc] for row, pc in zip(ints, pivots)), 1)
        x = [0] * ncols
        x[f] = den
        for row, pc in zip(ints, pivots):
            x[pc] = -row[f] * (den // row[pc])
        basis.append(_primitive(x))
    return basis


@dataclass(frozen=True)
class Annihilator:
    """Canonical basis of the linear forms vanishing on a subspace of P^k.

    ``dim`` is k+1, the number of homogeneous coordinates.  ``basis`` holds the
    reduced row-echelon rows, each scaled to a primitive integer vector with a
    positive pivot; this scaling is unique, so two annihilators compare equal
    iff they describe the same subspace.  ``rows`` gives the usual
    pivot-one rational form.
    """

    dim: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_forms(cls, forms: Iterable[Sequence], dim: int) -> "Annihilator":
        forms = list(forms)
        for f in forms:
            if len(f) != dim:
                raise DimensionMismatch(f"form of length {len(f)} on {dim} coordinates")
        ints, _ = _int_rref([integer_row(f) for f in forms], dim)
        return cls(dim, tuple(tuple(r) for r in ints))

    @classmethod
    def whole_space(cls, dim: int) -> "Annihilator":
        return cls(dim, ())

    @classmethod
    def empty(cls, dim: int) -> "Annihilator":
        return cls(dim, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def of_points(cls, points: Iterable[Sequence], dim: int) -> "Annihilator":
        """Annihilator of the projective span of the given points."""
        points = list(points)
        if not points:
            return cls.empty(dim)
        return cls.from_forms(nullspace(points, dim), dim)

    @cached_property
    def rows(self) -> Matrix:
        return tuple(
            tuple(Fraction(v, r[pc]) for v in r) for r, pc in zip(self.basis, self.pivots)
        )

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(_pivot(r) for r in self.basis)

    @property
    def codim(self) -> int:
        return len(self.basis)

    @property
    def is_empty(self) -> bool:
        return len(self.basis) == self.dim

    def contains_form(self, h: Sequence) -> bool:
        """True iff the form h vanishes on the subspace (H ⊇ L)."""
        if len(h) != self.dim:
            raise DimensionMismatch(f"form of length {len(h)} on {self.dim} coordinates")
        v = integer_row(h)
        if not any(v):
            raise ValueError("zero covector")
        return _reduces_to_zero(v, self.basis, self.pivots)

    def points(self) -> list[list[int]]:
        """Integer basis of the underlying vector space (homogeneous points)."""
        return nullspace(self.basis, self.dim)

    def is_subspace_of(self, other: "Annihilator") -> bool:
        """True iff this subspace is contained in ``other`` (L ⊆ M)."""
        _check_dims(self, other)
        return all(_reduces_to_zero(list(r), self.basis, self.pivots) for r in other.basis)

    def meet(self, other: "Annihilator") -> "Annihilator":
        return ann_of_intersection(self, other)

    def join(self, other: "Annihilator") -> "Annihilator":
        return ann_of_sum(self, other)


def _pivot(row: Sequence) -> int:
    for i, v in enumerate(row):
        if v != 0:
            return i
    raise ValueError("zero row in annihilator basis")


def _reduces_to_zero(v: list[int], basis, pivots) -> bool:
    for row, pc in zip(basis, pivots):
        a = v[pc]
        if a:
            b = row[pc]
            v = [b * x - a * y for x, y in zip(v, row)]
    return not any(v)


def _check_dims(a: Annihilator, b: Annihilator) -> None:
    if a.dim != b.dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.dim} vs {b.dim}")


def ann_of_intersection(a: Annihilator, b: Annihilator) -> Annihilator:
    """Annihilator of A ∩ B: the span of both sets of forms."""
    _check_dims(a, b)
    if not b.basis or a == b:
        return a
    if not a.basis:
        return b
    return Annihilator.from_forms(a.basis + b.basis, a.dim)


def ann_of_sum(a: Annihilator, b: Annihilator) -> Annihilator:
    """Annihilator of the projective span A + B: the common forms of A and B.

    A vector (x, y) in the left kernel of the stacked basis [A; B] gives the
    common form x·A = -y·B.
    """
    _check_dims(a, b)
    if a == b:
        return a
    if not a.basis or not b.basis:
        return Annihilator.whole_space(a.dim)
    stacked = a.basis + b.basis
    transposed = [[row[c] for row in stacked] for c in range(a.dim)]
    forms = []
    for coeffs in nullspace(transposed, len(stacked)):
        x = coeffs[: len(a.basis)]
        forms.append(
            [sum(xi * row[c] for xi, row in zip(x, a.basis)) for c in range(a.dim)]
        )
    return Annihilator.from_forms(forms, a.dim)


def contains(h: Sequence, a: Annihilator) -> bool:
    """Does the hyperplane with covector h contain the subspace carried by a?"""
    return a.contains_form(h)


def codim(a: Annihilator) -> int:
    return a.codim
