"""Reference families of jumping-value sets with exact membership.

Each family enumerates its members up to a bound and also decides
membership of an arbitrary exact number directly, so periodicity
probes can test translates without re-enumerating.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import (
    ExactLike,
    ExactReal,
    Rational,
    as_exact,
    compare,
    sqrt_fraction,
)

Interval = tuple[ExactReal, ExactReal]

LABELS = ("koike", "saito", "elsv", "diagonal")

_SAITO_BASE = (Fraction(9, 20), Fraction(13, 20), Fraction(7, 10),
               Fraction(17, 20), Fraction(9, 10), Fraction(19, 20),
               Fraction(1))

_DEFAULT_ELSV_WINDOW = 64


@dataclass(frozen=True)
class JumpSet:
    """A named value set: sorted members up to the bound, the largest
    threshold below which the listing is provably complete, and the
    family's accumulation points with their unexplored intervals."""

    label: str
    params: dict
    bound: Fraction
    values: tuple[ExactReal, ...]
    complete_below: ExactReal
    clusters: tuple[ExactReal, ...] = ()
    residuals: tuple[Interval, ...] = ()

    def contains(self, x: ExactLike) -> bool:
        """Exact membership in the full (unbounded) family."""
        return _MEMBERS[self.label](self.params, as_exact(x))


@dataclass(frozen=True)
class PeriodEvidence:
    label: str
    shift: Fraction
    probes: int
    alpha: ExactReal
    missed: tuple[int, ...]
    falsified: bool


def _half_radical(p: int, radicand: int) -> ExactReal:
    """(p + sqrt(radicand)) / 2 exactly."""
    return (as_exact(p) + sqrt_fraction(radicand)) / 2


def _koike_pmax(a: int, bound: Fraction) -> int:
    # value >= p (1 + sqrt(2 a^2 - 1)) / 2, so members <= bound force
    # p <= 2 bound / (1 + sqrt(2 a^2 - 1))
    cutoff = as_exact(2 * bound) / (as_exact(1) + sqrt_fraction(2 * a * a - 1))
    return max(0, cutoff.floor())


def _koike_values(params: dict, bound: Fraction) -> list[ExactReal]:
    a = params["a"]
    out: set[ExactReal] = set()
    bnd = as_exact(bound)
    for p in range(1, _koike_pmax(a, bound) + 1):
        for q in range(p % 2, p, 2):
            v = _half_radical(p, 2 * a * a * p * p - q * q)
            if compare(v, bnd) <= 0:
                out.add(v)
    return sorted(out)


def _koike_member(params: dict, x: ExactReal) -> bool:
    a = params["a"]
    if x.sign() <= 0:
        return False
    for p in range(1, _koike_pmax(a, _enclosing_fraction(x)) + 1):
        r = as_exact(2) * x - p  # must be sqrt(2 a^2 p^2 - q^2)
        if r.sign() < 0:
            continue
        q2 = as_exact(2 * a * a * p * p) - r * r
        if not q2.is_rational:
            continue
        q2f = q2.as_fraction()
        if q2f < 0 or q2f.denominator != 1:
            continue
        q = math.isqrt(q2f.numerator)
        if q * q != q2f.numerator:
            continue
        if 0 <= q < p and (p - q) % 2 == 0 and _half_radical(
                p, 2 * a * a * p * p - q * q) == x:
            return True
    return False


def _enclosing_fraction(x: ExactReal) -> Fraction:
    """A rational upper bound for x (for loop cutoffs)."""
    return Fraction(x.floor() + 1)


def _saito_values(params: dict, bound: Fraction) -> list[ExactReal]:
    out = []
    for b in _SAITO_BASE:
        k = 0
        while b + k <= bound:
            out.append(as_exact(b + k))
            k += 1
    return sorted(out)


def _saito_member(params: dict, x: ExactReal) -> bool:
    if not x.is_rational:
        return False
    xf = x.as_fraction()
    return any((xf - b) >= 0 and (xf - b).denominator == 1
               for b in _SAITO_BASE)


def _elsv_values(window: int, bound: Fraction) -> list[ExactReal]:
    out: set[Fraction] = set()
    for e in range(1, window + 1):
        for f in range(e, window + 1):
            v = Fraction(e * f, e + f)
            if v <= bound:
                out.add(v)
    return [as_exact(v) for v in sorted(out)]


def _elsv_member(params: dict, x: ExactReal) -> bool:
    if not x.is_rational or x.sign() <= 0:
        return False
    xf = x.as_fraction()
    # with e <= f the value sits in [e/2, e), so e ranges over (x, 2x]
    for e in range(math.floor(xf) + 1, math.floor(2 * xf) + 1):
        rest = xf * e / (e - xf)  # the matching f
        if rest.denominator == 1 and rest >= e:
            return True
    return False


def _diagonal_values(params: dict, bound: Fraction) -> list[ExactReal]:
    weights: tuple[Fraction, ...] = params["m"]
    out: set[Fraction] = set()

    def rec(i: int, acc: Fraction) -> None:
        if i == len(weights):
            if 0 < acc <= bound:
                out.add(acc)
            return
        e = 0
        while True:
            total = acc + Fraction(e + 1) / weights[i]
            if total > bound:
                break
            rec(i + 1, total)
            e += 1

    rec(0, Fraction(0))
    return [as_exact(v) for v in sorted(out)]


def _diagonal_member(params: dict, x: ExactReal) -> bool:
    if not x.is_rational or x.sign() <= 0:
        return False
    weights: tuple[Fraction, ...] = params["m"]

    def rec(i: int, remaining: Fraction) -> bool:
        if i == len(weights):
            return remaining == 0
        e = 0
        while True:
            left = remaining - Fraction(e + 1) / weights[i]
            if left < 0:
                return False
            if rec(i + 1, left):
                return True
            e += 1

    return rec(0, x.as_fraction())


_MEMBERS = {
    "koike": _koike_member,
    "saito": _saito_member,
    "elsv": lambda params, x: _elsv_member(params, x),
    "diagonal": _diagonal_member,
}


def builtin_jump_set(
    label: str, params: Optional[dict] = None, *, bound: Rational
) -> JumpSet:
    """Construct one of the reference families up to the bound."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    params = dict(params or {})

    if label == "koike":
        a = int(params.get("a", 0))
        if a < 2:
            raise ValueError("koike requires an integer parameter a >= 2")
        params = {"a": a}
        values = _koike_values(params, bound)
        return JumpSet(label, params, bound, tuple(values), as_exact(bound))

    if label == "saito":
        values = _saito_values({}, bound)
        return JumpSet(label, {}, bound, tuple(values), as_exact(bound))

    if label == "elsv":
        window = int(params.get("window", _DEFAULT_ELSV_WINDOW))
        if window < 2:
            raise ValueError("elsv window must be at least 2")
        params = {"window": window}
        values = _elsv_values(window, bound)
        clusters = tuple(as_exact(k) for k in range(1, math.floor(bound) + 1))
        residuals = []
        for k in clusters:
            below = [v for v in values if compare(v, k) < 0]
            if below:
                residuals.append((below[-1], k))
        complete = (as_exact(bound) if not residuals
                    else min(residuals[0][0], as_exact(bound)))
        return JumpSet(label, params, bound, tuple(values), complete,
                       clusters, tuple(residuals))

    if label == "diagonal":
        raw = params.get("m")
        if not raw:
            raise ValueError("diagonal requires a nonempty weight list m")
        weights = tuple(Fraction(w) for w in raw)
        if any(w <= 0 for w in weights):
            raise ValueError("diagonal weights must be positive")
        params = {"m": weights}
        values = _diagonal_values(params, bound)
        return JumpSet(label, params, bound, tuple(values), as_exact(bound))

    raise ValueError(f"unknown jump set label: {label!r}")


def period_falsify(
    jump_set: JumpSet, shift: Rational, probes: int
) -> PeriodEvidence:
    """Test whether the set could be invariant under adding the shift.

    For every value alpha that stays within the completeness threshold
    for all the probes, count translates alpha + m*shift missing from
    the set; the worst alpha (ties to the smallest) is the evidence.
    A full miss list falsifies periodicity with that shift.
    """
    shift = Fraction(shift)
    if shift <= 0:
        raise ValueError("shift must be positive")
    if probes < 1:
        raise ValueError("probes must be at least 1")
    eligible = [alpha for alpha in jump_set.values
                if compare(alpha + probes * shift, jump_set.complete_below) <= 0]
    if not eligible:
        raise ValueError(
            "completeness threshold too small for the requested probes")
    best_alpha = None
    best_missed: tuple[int, ...] = ()
    for alpha in eligible:
        missed = tuple(m for m in range(1, probes + 1)
                       if not jump_set.contains(alpha + m * shift))
        if best_alpha is None or len(missed) > len(best_missed):
            best_alpha, best_missed = alpha, missed
    return PeriodEvidence(jump_set.label, shift, probes, best_alpha,
                          best_missed, len(best_missed) == probes)


def multiple_misses(
    jump_set: JumpSet, mmax: int
) -> tuple[tuple[ExactReal, int, ExactReal], ...]:
    """Integer multiples of members that escape the set.

    Sets arising from a single body are closed under integer multiples
    (the gauge is homogeneous), so any miss here certifies the set does
    not come from one.  Only multiples inside the completeness
    threshold are judged.
    """
    if mmax < 2:
        raise ValueError("mmax must be at least 2")
    out = []
    for alpha in jump_set.values:
        for m in range(2, mmax + 1):
            scaled = as_exact(m) * alpha
            if compare(scaled, jump_set.complete_below) > 0:
                break
            if not jump_set.contains(scaled):
                out.append((alpha, m, scaled))
    return tuple(out)


def translation_search(
    e: int, c: int, n: int
) -> tuple[tuple[int, int], ...]:
    """All 1 <= r <= s <= n with rs/(r+s) = e/(e+1) + c."""
    if e < 1 or c < 0 or n < 1:
        raise ValueError("need e >= 1, c >= 0, n >= 1")
    target = Fraction(e, e + 1) + c
    return tuple((r, s) for r in range(1, n + 1) for s in range(r, n + 1)
                 if Fraction(r * s, r + s) == target)
