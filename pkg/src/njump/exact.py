"""Exact arithmetic over rationals and quadratic irrationals a + b*sqrt(d).

Every quantity the geometry layer touches is either a Fraction or an
ExactReal in canonical form: d squarefree and >= 2 with b != 0, or the
rational collapse b == 0, d == 1.  Comparisons are decided by sign
analysis with repeated squaring, never by floating point.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Optional, Union

Rational = Fraction

RationalLike = Union[int, Fraction]
ExactLike = Union[int, Fraction, "ExactReal"]


class NotRepresentableError(ArithmeticError):
    """Result leaves the quadratic-irrational representation."""


def _square_free_split(n: int) -> tuple[int, int]:
    """Return (m, e) with n == m*m*e and e squarefree."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return 1, n
    m, e = 1, 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            m *= p ** (k // 2)
            if k % 2:
                e *= p
        p += 1 if p == 2 else 2
    e *= n  # leftover prime
    return m, e


def _sign_fraction(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _sign_one_radical(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of a + b*sqrt(d) for squarefree d >= 2, b != 0."""
    if a == 0:
        return _sign_fraction(b)
    sa, sb = _sign_fraction(a), _sign_fraction(b)
    if sa == sb:
        return sa
    # opposite signs: square both sides of a ? -b*sqrt(d)
    s = _sign_fraction(a * a - b * b * d)
    if s == 0:
        # would force sqrt(d) rational
        raise AssertionError("non-squarefree radicand slipped through")
    return s if sa > 0 else -s


def _sign_two_radicals(a: Fraction, b1: Fraction, d1: int,
                       b2: Fraction, d2: int) -> int:
    """Sign of a + b1*sqrt(d1) + b2*sqrt(d2), distinct squarefree d's >= 2."""
    if b1 == 0:
        return _sign_fraction(a) if b2 == 0 else _sign_one_radical(a, b2, d2)
    if b2 == 0:
        return _sign_one_radical(a, b1, d1)
    # sign of t = b1*sqrt(d1) + b2*sqrt(d2)
    s1, s2 = _sign_fraction(b1), _sign_fraction(b2)
    if s1 == s2:
        st = s1
    else:
        s = _sign_fraction(b1 * b1 * d1 - b2 * b2 * d2)
        if s == 0:
            raise AssertionError("d1*d2 cannot be a perfect square")
        st = s if s1 > 0 else -s
    if a == 0:
        return st
    sa = _sign_fraction(a)
    if sa == st:
        return sa
    # compare t*t against a*a; t*t = b1^2 d1 + b2^2 d2 + 2 b1 b2 sqrt(d1 d2)
    g, e = _square_free_split(d1 * d2)
    if e <= 1:
        raise AssertionError("distinct squarefree radicands, yet d1*d2 square")
    diff_a = b1 * b1 * d1 + b2 * b2 * d2 - a * a
    s = _sign_one_radical(diff_a, 2 * b1 * b2 * g, e)
    if s == 0:
        raise AssertionError("|t| == |a| is impossible here")
    return st if s > 0 else sa


class ExactReal:
    """Immutable a + b*sqrt(d) with exact construction and comparison."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0,
                 d: int = 1) -> None:
        a = Fraction(a)
        b = Fraction(b)
        if d < 0:
            raise ValueError("negative radicand")
        if b != 0 and d > 1:
            m, e = _square_free_split(d)
            if e <= 1:
                a += b * m * e
                b, d = Fraction(0), 1
            else:
                b, d = b * m, e
        elif b != 0 and d == 1:
            a += b
            b = Fraction(0)
        else:
            b, d = Fraction(0), 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("ExactReal is immutable")

    # -- classification ------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise NotRepresentableError(f"{self} is irrational")
        return self.a

    # -- arithmetic -----------------------------------------------------

    def __neg__(self) -> "ExactReal":
        return ExactReal(-self.a, -self.b, self.d)

    def __add__(self, other: ExactLike) -> "ExactReal":
        o = as_exact(other)
        if self.b == 0:
            return ExactReal(self.a + o.a, o.b, o.d)
        if o.b == 0:
            return ExactReal(self.a + o.a, self.b, self.d)
        if self.d == o.d:
            return ExactReal(self.a + o.a, self.b + o.b, self.d)
        raise NotRepresentableError(
            f"sum of sqrt({self.d}) and sqrt({o.d}) terms")

    __radd__ = __add__

    def __sub__(self, other: ExactLike) -> "ExactReal":
        return self + (-as_exact(other))

    def __rsub__(self, other: ExactLike) -> "ExactReal":
        return as_exact(other) + (-self)

    def __mul__(self, other: ExactLike) -> "ExactReal":
        o = as_exact(other)
        if self.b == 0:
            return ExactReal(self.a * o.a, self.a * o.b, o.d)
        if o.b == 0:
            return ExactReal(self.a * o.a, o.a * self.b, self.d)
        if self.d == o.d:
            return ExactReal(self.a * o.a + self.b * o.b * self.d,
                             self.a * o.b + self.b * o.a, self.d)
        raise NotRepresentableError(
            f"product of sqrt({self.d}) and sqrt({o.d}) terms")

    __rmul__ = __mul__

    def __truediv__(self, other: ExactLike) -> "ExactReal":
        o = as_exact(other)
        if o.sign() == 0:
            raise ZeroDivisionError("exact division by zero")
        if o.b == 0:
            return ExactReal(self.a / o.a, self.b / o.a, self.d)
        # multiply by the conjugate; norm is a nonzero rational
        norm = o.a * o.a - o.b * o.b * o.d
        inv = ExactReal(o.a / norm, -o.b / norm, o.d)
        return self * inv

    def __rtruediv__(self, other: ExactLike) -> "ExactReal":
        return as_exact(other) / self

    # -- comparison -----------------------------------------------------

    def sign(self) -> int:
        if self.b == 0:
            return _sign_fraction(self.a)
        return _sign_one_radical(self.a, self.b, self.d)

    def compare(self, other: ExactLike) -> int:
        o = as_exact(other)
        if self.b == 0 and o.b == 0:
            return _sign_fraction(self.a - o.a)
        if o.b == 0 or self.b == 0 or self.d == o.d:
            diff = self + (-o)
            return diff.sign()
        return _sign_two_radicals(self.a - o.a, self.b, self.d, -o.b, o.d)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, ExactReal)):
            o = as_exact(other)
            return self.a == o.a and self.b == o.b and self.d == o.d
        return NotImplemented

    def __lt__(self, other: ExactLike) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: ExactLike) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: ExactLike) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: ExactLike) -> bool:
        return self.compare(other) >= 0

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    # -- conversion -----------------------------------------------------

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def floor(self) -> int:
        if self.b == 0:
            return math.floor(self.a)
        n = math.floor(float(self))
        while self.compare(n) < 0:
            n -= 1
        while self.compare(n + 1) >= 0:
            n += 1
        return n

    def ceil(self) -> int:
        return -((-self).floor())

    def __repr__(self) -> str:
        return f"ExactReal({format_exact(self)!r})"

    def __str__(self) -> str:
        return format_exact(self)


def as_exact(x: ExactLike) -> ExactReal:
    if isinstance(x, ExactReal):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactReal(x)
    raise TypeError(f"cannot treat {type(x).__name__} as an exact number")


def canonicalize(a: RationalLike, b: RationalLike, n: int) -> ExactReal:
    """Canonical form of a + b*sqrt(n): square factors out, trivial d collapsed."""
    return ExactReal(a, b, n)


def compare(x: ExactLike, y: ExactLike) -> int:
    return as_exact(x).compare(y)


def sqrt_fraction(r: RationalLike) -> ExactReal:
    """Exact square root of a nonnegative rational."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("square root of a negative rational")
    if r == 0:
        return ExactReal(0)
    # sqrt(p/q) = sqrt(p*q)/q
    m, e = _square_free_split(r.numerator * r.denominator)
    coeff = Fraction(m, r.denominator)
    if e == 1:
        return ExactReal(coeff)
    return ExactReal(0, coeff, e)


def _fraction_sqrt(r: Fraction) -> Optional[Fraction]:
    if r < 0:
        return None
    pn = math.isqrt(r.numerator)
    pd = math.isqrt(r.denominator)
    if pn * pn == r.numerator and pd * pd == r.denominator:
        return Fraction(pn, pd)
    return None


def try_sqrt(x: ExactLike) -> Optional[ExactReal]:
    """Square root of x when it stays a quadratic irrational, else None."""
    x = as_exact(x)
    if x.sign() < 0:
        return None
    if x.b == 0:
        return sqrt_fraction(x.a)
    # seek (p + q*sqrt(d))^2 = a + b*sqrt(d): p^2 + q^2 d = a, 2pq = b
    w = _fraction_sqrt(x.a * x.a - x.b * x.b * x.d)
    if w is None:
        return None
    for p2 in ((x.a + w) / 2, (x.a - w) / 2):
        p = _fraction_sqrt(p2)
        if p is None or p == 0:
            continue
        q = x.b / (2 * p)
        cand = ExactReal(p, q, x.d)
        if cand.sign() > 0 and cand * cand == x:
            return cand
    return None


def exact_sqrt(x: ExactLike) -> ExactReal:
    r = try_sqrt(x)
    if r is None:
        raise NotRepresentableError(f"sqrt({as_exact(x)}) leaves the field")
    return r


def least_int_gt(x: ExactLike) -> int:
    """Least integer strictly greater than x."""
    x = as_exact(x)
    f = x.floor()
    return f + 1


def least_int_geq(x: ExactLike) -> int:
    """Least integer >= x (exact ceiling)."""
    return as_exact(x).ceil()


# -- parsing and printing ---------------------------------------------

_RAT = r"-?\d+(?:/\d+)?"
_EXACT_RE = re.compile(
    rf"^\s*({_RAT})\s*(?:([+-])\s*({_RAT})\s*\*\s*sqrt\(\s*(\d+)\s*\))?\s*$")
_PURE_RADICAL_RE = re.compile(
    rf"^\s*(-)?\s*(?:({_RAT})\s*\*\s*)?sqrt\(\s*(\d+)\s*\)\s*$")


_RAT_RE = re.compile(rf"^\s*({_RAT})\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or 'p' into a Fraction in lowest terms."""
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    try:
        return Fraction(m.group(1))
    except ZeroDivisionError as exc:
        raise ValueError(f"zero denominator: {text!r}") from exc


def parse_exact(text: str) -> ExactReal:
    """Parse 'p/q', 'p/q + r/s*sqrt(d)', or 'r/s*sqrt(d)' forms."""
    m = _EXACT_RE.match(text)
    if m:
        a = Fraction(m.group(1))
        if m.group(2) is None:
            return ExactReal(a)
        b = Fraction(m.group(3))
        if m.group(2) == "-":
            b = -b
        return ExactReal(a, b, int(m.group(4)))
    m = _PURE_RADICAL_RE.match(text)
    if m:
        b = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1):
            b = -b
        return ExactReal(0, b, int(m.group(3)))
    raise ValueError(f"not an exact number: {text!r}")


def format_exact(x: ExactLike) -> str:
    """Canonical text form; round-trips bit-exactly through parse_exact."""
    x = as_exact(x)
    if x.b == 0:
        return str(x.a)
    sep = "+" if x.b > 0 else "-"
    return f"{x.a} {sep} {abs(x.b)}*sqrt({x.d})"


# -- multi-field utilities --------------------------------------------


def _sqrt_bounds(d: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= sqrt(d) <= hi with hi - lo = 2**-bits."""
    scale = 1 << bits
    lo = math.isqrt(d * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


def linear_sign(*terms: ExactLike) -> int:
    """Exact sign of a sum of exact numbers from arbitrary quadratic fields.

    Distinct squarefree radicals are linearly independent over the
    rationals, so a sum with a surviving radical coefficient is nonzero
    and interval refinement must terminate.
    """
    rational = Fraction(0)
    radicals: dict[int, Fraction] = {}
    for t in terms:
        t = as_exact(t)
        rational += t.a
        if t.b:
            radicals[t.d] = radicals.get(t.d, Fraction(0)) + t.b
    radicals = {d: b for d, b in radicals.items() if b}
    if not radicals:
        return (rational > 0) - (rational < 0)
    bits = 32
    while bits <= (1 << 20):
        lo = hi = rational
        for d, b in radicals.items():
            slo, shi = _sqrt_bounds(d, bits)
            if b > 0:
                lo += b * slo
                hi += b * shi
            else:
                lo += b * shi
                hi += b * slo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    raise AssertionError("independent radicals cannot sum to zero")


def rational_between(lo: ExactLike, hi: ExactLike) -> Fraction:
    """Some rational strictly inside the open interval (lo, hi).

    Stern-Brocot mediant walk: only exact comparisons, no rounding.
    """
    lo = as_exact(lo)
    hi = as_exact(hi)
    if compare(lo, hi) >= 0:
        raise ValueError("empty interval")
    # shift so the interval sits in (0, inf); mediants then converge
    base = lo.floor()
    an, ad, bn, bd = 0, 1, 1, 0
    while True:
        mn, md = an + bn, ad + bd
        m = Fraction(mn, md) + base
        if compare(m, lo) <= 0:
            an, ad = mn, md
        elif compare(m, hi) >= 0:
            bn, bd = mn, md
        else:
            return m


ZERO = ExactReal(0)
ONE = ExactReal(1)
