"""Graded systems of monomial ideals carved out of a Newton body.

The body is approximated from inside by polyhedra whose boundary
samples are rounded up onto ever finer grids; blowing the k-th
approximation up by k and collecting its lattice points gives an ideal
sequence multiplying subadditively.  The multiplier ideals of the
rescaled members climb back up to the multiplier ideal of the body
itself, and that convergence is checked exactly.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .body import NewtonBody, scale, staircase_hull
from .exact import Rational, as_exact, least_int_geq
from .ideals import (
    MonomialIdeal,
    ideal_contains_ideal,
    ideal_product,
    multiplier_ideal,
    newton_polyhedron,
)


def inner_polyhedron(
    body: NewtonBody, m: int, xcap: int, strict: bool = False
) -> NewtonBody:
    """Polyhedral inner approximation on the denominator-m grid.

    Samples the boundary at abscissas j/m up to xcap and rounds each
    height up to the grid, so every sample (hence the hull) stays
    inside the body.  An attained vertical side contributes its own
    edge sample.  With strict=True the grid denominator is m!, making
    the approximations nested for consecutive m, not just doublings.
    """
    if m < 1:
        raise ValueError("grid parameter must be at least 1")
    if xcap < 1:
        raise ValueError("xcap must be at least 1")
    denom = math.factorial(m) if strict else m
    x0 = body.x0
    points: list[tuple[Fraction, Fraction]] = []
    if body.attained_x and x0 <= as_exact(xcap):
        points.append((x0.as_fraction(),
                       Fraction(least_int_geq(body.top_y() * denom), denom)))
    j_start = (x0 * denom).floor() + 1
    for j in range(j_start, xcap * denom + 1):
        x = Fraction(j, denom)
        fy = body.boundary_y(x)
        assert fy is not None
        points.append((x, Fraction(least_int_geq(fy * denom), denom)))
    if not points:
        raise ValueError("xcap too small to reach any boundary point")
    return staircase_hull(points)


def _lattice_generators(body: NewtonBody) -> MonomialIdeal:
    """Minimal generators of the lattice points of a polyhedral body
    with both asymptote sides attained."""
    floor_level = least_int_geq(body.y0)
    a1 = least_int_geq(body.x0)
    gens: list[tuple[int, int]] = []
    prev: Optional[int] = None
    while True:
        fy = body.boundary_y(a1)
        assert fy is not None
        m = least_int_geq(fy)
        if prev is None or m < prev:
            gens.append((a1, m))
            prev = m
        if m == floor_level:
            break
        a1 += 1
    return MonomialIdeal(tuple(gens))


@dataclass
class GradedSystem:
    """Memoized ideal sequence a_k = lattice points of k times the
    k-th inner approximation of the base body."""

    base: NewtonBody
    xcap: int = 16
    strict: bool = False
    _memo: dict = field(default_factory=dict, repr=False, compare=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, repr=False, compare=False)

    def ideal(self, k: int) -> MonomialIdeal:
        if k < 1:
            raise ValueError("graded index must be at least 1")
        with self._lock:
            got = self._memo.get(k)
        if got is not None:
            return got
        blown = scale(inner_polyhedron(self.base, k, self.xcap, self.strict),
                      Fraction(k))
        result = _lattice_generators(blown)
        with self._lock:
            self._memo[k] = result
        return result


def graded_ideal(system: GradedSystem, k: int) -> MonomialIdeal:
    return system.ideal(k)


@dataclass(frozen=True)
class GradedAxiomsReport:
    passed: bool
    checked: int
    violation: Optional[tuple] = None


def graded_axioms_check(system: GradedSystem, kmax: int) -> GradedAxiomsReport:
    """Exhaustive check that the sequence multiplies subadditively and
    its rescaled staircases stay inside the base body."""
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    checked = 0
    for k in range(1, kmax + 1):
        ideal = system.ideal(k)
        checked += 1
        for gx, gy in ideal.gens:
            if not system.base.contains((Fraction(gx, k), Fraction(gy, k))):
                return GradedAxiomsReport(False, checked, ("inner", k, (gx, gy)))
    for l in range(1, kmax):
        for m in range(l, kmax - l + 1):
            checked += 1
            product = ideal_product(system.ideal(l), system.ideal(m))
            if not ideal_contains_ideal(system.ideal(l + m), product):
                return GradedAxiomsReport(False, checked, ("product", l, m))
    return GradedAxiomsReport(True, checked)


@dataclass(frozen=True)
class AsymptoticResult:
    ideal: MonomialIdeal
    stabilized: bool
    q_used: int
    crosscheck: bool
    chain: tuple[tuple[int, MonomialIdeal], ...]


def asymptotic_multiplier_ideal(
    system: GradedSystem, c: Rational, qmax: int
) -> AsymptoticResult:
    """Climb the doubling chain of rescaled multiplier ideals until two
    agree, then compare against the direct computation on the base.

    The chain must be increasing: blowing a_q's staircase up by two
    lands its generators among a_{2q}'s lattice points.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("weight must be positive")
    if qmax < 4:
        raise ValueError("qmax must be at least 4")
    direct = multiplier_ideal(system.base, c)
    chain: list[tuple[int, MonomialIdeal]] = []
    prev: Optional[MonomialIdeal] = None
    stabilized = False
    q = 1
    while q <= qmax:
        current = multiplier_ideal(newton_polyhedron(system.ideal(q)),
                                   Fraction(c, q))
        if prev is not None and not ideal_contains_ideal(current, prev):
            raise RuntimeError(f"chain not increasing at q={q}")
        if not ideal_contains_ideal(direct, current):
            raise RuntimeError(f"inner approximation overshot at q={q}")
        chain.append((q, current))
        if prev is not None and current == prev:
            stabilized = True
            break
        prev = current
        q *= 2
    q_used = chain[-1][0]
    result = chain[-1][1]
    return AsymptoticResult(result, stabilized, q_used,
                            result == direct, tuple(chain))
