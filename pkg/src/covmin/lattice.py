"""Lattices with exact rational bases: duals, projections, slices, enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor

from .errors import BudgetExceeded, InputError, Singular
from .linalg import (
    RatMat,
    RatVec,
    clear_denominators,
    det,
    hnf,
    integer_kernel,
    mat,
    mat_inverse,
    mat_mul,
    mat_vec,
    nullspace,
    transpose,
    vec,
)

DEFAULT_ENUM_CAP = 10_000_000
DEFAULT_SCALE_BITS = 4096


@dataclass(frozen=True)
class Interval:
    """Certified enclosure ``lo <= value <= hi`` with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise InputError(f"interval with lo={self.lo} > hi={self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice given by basis vectors (one per row of ``basis``).

    The lattice is ``{sum_i t_i basis[i] : t integral}``; membership testing
    solves for the coefficients exactly.
    """

    basis: RatMat

    def __post_init__(self):
        b = mat(self.basis)
        object.__setattr__(self, "basis", b)
        if not b or any(len(row) != len(b) for row in b):
            raise InputError("lattice basis must be square")
        if det(b) == 0:
            raise Singular("lattice basis is singular")

    @staticmethod
    def standard(d: int) -> "Lattice":
        return Lattice(tuple(
            tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)
        ))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _coeff_matrix(self) -> RatMat:
        # maps a point x to its basis coefficients t with x = sum t_i basis[i]
        return mat_inverse(transpose(self.basis))

    @cached_property
    def dual_basis(self) -> RatMat:
        """Basis of the dual lattice: row i pairs to 1 with ``basis[i]``, 0 with the rest."""
        return self._coeff_matrix

    @property
    def dual(self) -> "Lattice":
        return Lattice(self.dual_basis)

    def coefficients(self, x: RatVec) -> RatVec:
        return mat_vec(self._coeff_matrix, vec(x))

    def from_coefficients(self, t) -> RatVec:
        return mat_vec(transpose(self.basis), vec(t))

    def __contains__(self, x) -> bool:
        return all(c.denominator == 1 for c in self.coefficients(vec(x)))

    def is_identity(self) -> bool:
        d = self.dim
        return self.basis == tuple(
            tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)
        )


def group_basis(generators, ambient_dim: int, *, scale_bits: int = DEFAULT_SCALE_BITS) -> list[RatVec]:
    """Basis of the discrete group generated by finitely many rational vectors.

    The generators are scaled by the lcm of their denominators, reduced with
    integer row HNF, and scaled back, so every generator is an exact integer
    combination of the result.  A finite rational generating set always spans
    a discrete group (it lies in ``(1/scale) Z^d``), so no non-discreteness
    error can occur here.

    Raises:
        BudgetExceeded: if the common denominator exceeds ``scale_bits`` bits.
    """
    gens = [vec(g) for g in generators]
    for g in gens:
        if len(g) != ambient_dim:
            raise InputError("generator dimension mismatch")
    gens = [g for g in gens if any(e != 0 for e in g)]
    if not gens:
        return []
    ints, scale = clear_denominators(gens)
    if scale.bit_length() > scale_bits:
        raise BudgetExceeded(f"common denominator needs {scale.bit_length()} bits > {scale_bits}")
    H, _ = hnf(ints)
    inv = Fraction(1, scale)
    return [tuple(e * inv for e in row) for row in H if any(row)]


def lattice_slice(lattice: Lattice, spanning) -> list[RatVec]:
    """Basis of ``lattice `` intersected with the rational subspace spanned by ``spanning``.

    The subspace's linear equations are pulled back to basis coefficients and
    solved as an integer kernel problem, so the result is exact and has rank
    equal to the subspace dimension.
    """
    span_rows = [vec(s) for s in spanning]
    if not span_rows:
        raise InputError("empty spanning set")
    equations = nullspace(span_rows)
    if not equations:
        return list(lattice.basis)
    # x = sum_i t_i basis[i] lies in the subspace iff (E B^T) t = 0
    m = mat_mul(mat(equations), transpose(lattice.basis))
    ints, _ = clear_denominators(m)
    kernel = integer_kernel(ints)
    return [lattice.from_coefficients(t) for t in kernel]


def lattice_points_in_box(lattice: Lattice, lo, hi, *, cap: int = DEFAULT_ENUM_CAP) -> list[RatVec]:
    """All lattice points in the closed axis-aligned box ``[lo, hi]``.

    Coefficient ranges are bounded by mapping the box corners through the
    inverse basis; candidates beyond ``cap`` raise instead of truncating.
    """
    lo = vec(lo)
    hi = vec(hi)
    d = lattice.dim
    if len(lo) != d or len(hi) != d:
        raise InputError("box dimension mismatch")
    if any(a > b for a, b in zip(lo, hi)):
        return []
    corners = itertools.product(*zip(lo, hi))
    tmin = [None] * d
    tmax = [None] * d
    for corner in corners:
        t = lattice.coefficients(corner)
        for i, ti in enumerate(t):
            if tmin[i] is None or ti < tmin[i]:
                tmin[i] = ti
            if tmax[i] is None or ti > tmax[i]:
                tmax[i] = ti
    ranges = [range(ceil(a), floor(b) + 1) for a, b in zip(tmin, tmax)]
    count = 1
    for r in ranges:
        count *= len(r)
        if count > cap:
            raise BudgetExceeded(f"{count}+ candidate coefficient tuples exceed cap {cap}")
    points = []
    basis_t = transpose(lattice.basis)
    for coeffs in itertools.product(*ranges):
        x = mat_vec(basis_t, vec(coeffs))
        if all(a <= xi <= b for xi, a, b in zip(x, lo, hi)):
            points.append(x)
    return points
