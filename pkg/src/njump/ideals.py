"""Monomial ideals as lattice staircases.

An ideal is its antichain of minimal generators.  The central operation
maps a Newton body B and a rational weight c > 0 to the ideal of lattice
exponents A with A + (1,1) strictly inside c*B, computed by an exact
column scan; debug builds re-derive it by the symmetric row scan and
insist the two agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .body import LatticePoint, NewtonBody, scale, staircase_hull
from .exact import Rational, least_int_gt


def _dominates(p: LatticePoint, q: LatticePoint) -> bool:
    return p[0] >= q[0] and p[1] >= q[1]


def antichain_reduce(points: Iterable[LatticePoint]) -> tuple[LatticePoint, ...]:
    """Minimal elements under componentwise <=, in staircase order."""
    uniq = sorted(set(points))
    keep = []
    for p in uniq:
        if not any(q != p and _dominates(p, q) for q in uniq):
            keep.append(p)
    return tuple(keep)


@dataclass(frozen=True)
class MonomialIdeal:
    gens: tuple[LatticePoint, ...]

    def __post_init__(self) -> None:
        if not self.gens:
            raise ValueError("empty generator list (the zero ideal never arises)")
        for (x1, y1), (x2, y2) in zip(self.gens, self.gens[1:]):
            if not (x1 < x2 and y1 > y2):
                raise ValueError("generators must form a strict staircase")
        for x, y in self.gens:
            if x < 0 or y < 0:
                raise ValueError("generators must be nonnegative")

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0, 0),)

    def contains_point(self, p: LatticePoint) -> bool:
        return any(_dominates(p, g) for g in self.gens)

    def monomials(self) -> list[str]:
        return [f"x^{a}*y^{b}" for a, b in self.gens]


def monomial_ideal(points: Iterable[LatticePoint]) -> MonomialIdeal:
    return MonomialIdeal(antichain_reduce(points))


# -- multiplier ideals ----------------------------------------------------


def _column_min(cb: NewtonBody, a1: int) -> int:
    """Least a2 >= 0 with (a1+1, a2+1) strictly inside cb (column a1)."""
    fy = cb.boundary_y(a1 + 1)
    assert fy is not None
    return max(0, least_int_gt(fy) - 1)


def _row_scan(cb: NewtonBody) -> tuple[LatticePoint, ...]:
    """Generators found row by row; independent check of the column scan."""
    col_limit = max(0, least_int_gt(cb.x0) - 1)
    a2 = max(0, least_int_gt(cb.y0) - 1)
    gens: list[LatticePoint] = []
    prev: int | None = None
    while True:
        a1 = 0
        while not cb.contains((a1 + 1, a2 + 1), strict=True):
            a1 += 1
        if prev is None or a1 < prev:
            gens.append((a1, a2))
            prev = a1
        if a1 == col_limit:
            break
        a2 += 1
    return tuple(sorted(gens))


def multiplier_ideal(body: NewtonBody, c: Rational) -> MonomialIdeal:
    """Ideal of exponents A with A + (1,1) strictly inside c*body."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("weight must be positive")
    cb = scale(body, c)
    row_limit = max(0, least_int_gt(cb.y0) - 1)
    a1 = max(0, least_int_gt(cb.x0) - 1)
    gens: list[LatticePoint] = []
    prev: int | None = None
    while True:
        m = _column_min(cb, a1)
        assert cb.contains((a1 + 1, m + 1), strict=True)
        assert m == 0 or not cb.contains((a1 + 1, m), strict=True)
        if prev is None or m < prev:
            gens.append((a1, m))
            prev = m
        if m == row_limit:
            break
        a1 += 1
    ideal = MonomialIdeal(tuple(gens))
    if __debug__:
        assert ideal.gens == _row_scan(cb)
    return ideal


def newton_polyhedron(ideal: MonomialIdeal) -> NewtonBody:
    """Staircase hull of the generators plus the nonnegative quadrant."""
    return staircase_hull([(Fraction(a), Fraction(b)) for a, b in ideal.gens])


def ideal_contains_ideal(big: MonomialIdeal, small: MonomialIdeal) -> bool:
    """True iff small is a subset of big (generator domination)."""
    return all(big.contains_point(g) for g in small.gens)


def ideal_product(left: MonomialIdeal, right: MonomialIdeal) -> MonomialIdeal:
    sums = [(g[0] + h[0], g[1] + h[1]) for g in left.gens for h in right.gens]
    return monomial_ideal(sums)
