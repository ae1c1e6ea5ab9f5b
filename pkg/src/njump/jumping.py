"""Jumping values of scaling families of Newton bodies.

The gauge of a body at a lattice point is a jumping value: scanning a
square lattice window collects all values witnessed there, while the
non-attained asymptotes contribute accumulation targets and honest
"unexplored" interval annotations for the window's blind spots.

The mixed variant measures one body against another: the jumping value
of a point p is the unique c > 0 putting p on the boundary of
scale(phi, c) + psi.  It is found exactly: every boundary piece of the
combined body traces an affine or quadratic equation in c, so the true
value is a root of one of finitely many closed forms, and a monotone
membership test at rational probes isolates which root it is.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .body import (
    GaugeUnboundedError,
    HyperbolaArc,
    LatticePoint,
    NewtonBody,
    Point,
    Segment,
    gauge,
    minkowski_sum,
    scale,
)
from .exact import (
    ExactLike,
    ExactReal,
    NotRepresentableError,
    Rational,
    ZERO,
    as_exact,
    compare,
    exact_sqrt,
    format_exact,
    linear_sign,
    rational_between,
)

Interval = tuple[ExactReal, ExactReal]


class NoSolutionError(ValueError):
    """The requested mixed jumping value does not exist."""


@dataclass(frozen=True)
class JumpReport:
    """Window enumeration: witnessed values, accumulation targets,
    and open intervals the window could not certify."""

    bound: Fraction
    window: int
    values: tuple[ExactReal, ...]
    witnesses: tuple[LatticePoint, ...]
    clusters: tuple[ExactReal, ...]
    residuals: tuple[Interval, ...]

    def witness_of(self, value: ExactLike) -> LatticePoint:
        v = as_exact(value)
        for idx, got in enumerate(self.values):
            if got == v:
                return self.witnesses[idx]
        raise KeyError(f"{format_exact(v)} is not a listed value")


@dataclass(frozen=True)
class GapReport:
    passed: bool
    checked: int
    skipped: int
    violations: tuple[tuple[ExactReal, ExactReal], ...]


@dataclass(frozen=True)
class MtimesReport:
    passed: bool
    window: int
    bound: Fraction
    verified: tuple[tuple[LatticePoint, int, ExactReal], ...]
    failures: tuple[tuple[LatticePoint, int, str], ...]


def lct(body: NewtonBody) -> ExactReal:
    """Smallest jumping value: the gauge at (1, 1)."""
    return gauge(body, (1, 1))


def cluster_points(body: NewtonBody, bound: Rational) -> tuple[ExactReal, ...]:
    """Accumulation points of the jumping values in (0, bound].

    Each non-attained asymptote at distance m > 0 from its axis piles
    values beneath every k/m; attained or zero-offset sides add none.
    """
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    sources: list[ExactReal] = []
    if body.x0 > ZERO and not body.attained_x:
        sources.append(body.x0)
    if body.y0 > ZERO and not body.attained_y:
        sources.append(body.y0)
    out: set[ExactReal] = set()
    for m in sources:
        kmax = (as_exact(bound) * m).floor()  # k/m <= bound
        for k in range(1, kmax + 1):
            out.add(as_exact(k) / m)
    return tuple(sorted(out))


def _subsume(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    """Drop intervals contained in another; sort by (lo, hi)."""
    items = sorted(set(intervals), key=lambda iv: (iv[0], -float(iv[1])))
    kept: list[Interval] = []
    best_hi: Optional[ExactReal] = None
    for lo, hi in items:
        if best_hi is not None and compare(hi, best_hi) <= 0:
            continue
        kept.append((lo, hi))
        best_hi = hi
    return tuple(sorted(kept, key=lambda iv: (iv[0], iv[1])))


def _side_residuals(
    value_at: Callable[[int], Optional[ExactReal]],
    escape_at: Callable[[int], Optional[ExactReal]],
    wall_attained: bool,
    bound: Fraction,
    window: int,
) -> list[Interval]:
    """Unexplored intervals contributed by one escaping coordinate.

    Column k holds values value_at(k) <= ... climbing toward escape_at(k)
    (None when unbounded).  Anything between the last probed value and
    the escape target is unexplored, unless the climb provably finished
    inside the window (wall attained and already reached).
    """
    out: list[Interval] = []
    bnd = as_exact(bound)
    for k in range(1, window + 1):
        lo = value_at(k)
        limit = escape_at(k)
        if lo is None:
            # column has values but none probed: everything is unknown
            hi = bnd if limit is None or compare(limit, bnd) > 0 else limit
            out.append((ZERO, hi))
            continue
        if compare(lo, bnd) >= 0:
            break
        if wall_attained and limit is not None and compare(lo, limit) == 0:
            continue  # column finished exactly at its wall value
        hi = bnd if limit is None or compare(limit, bnd) > 0 else limit
        out.append((lo, hi))
    return out


def enumerate_jumping(body: NewtonBody, bound: Rational, window: int) -> JumpReport:
    """All jumping values in (0, bound] witnessed by the lattice window,
    with accumulation points and honest unexplored intervals."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    if window < 2:
        raise ValueError("window must be at least 2")
    if body.is_quadrant():
        return JumpReport(bound, window, (), (), (), ())

    bnd = as_exact(bound)
    witnessed: dict[ExactReal, LatticePoint] = {}
    for p in range(1, window + 1):
        first = gauge(body, (p, 1))
        if compare(first, bnd) > 0:
            break  # gauges only grow with p
        for q in range(1, window + 1):
            g = gauge(body, (p, q))
            if compare(g, bnd) > 0:
                break  # and with q
            if g not in witnessed:
                witnessed[g] = (p, q)
    values = tuple(sorted(witnessed))
    witnesses = tuple(witnessed[v] for v in values)

    def x_escape(p: int) -> Optional[ExactReal]:
        return as_exact(p) / body.x0 if body.x0 > ZERO else None

    def y_escape(q: int) -> Optional[ExactReal]:
        return as_exact(q) / body.y0 if body.y0 > ZERO else None

    residuals = _side_residuals(
        lambda p: gauge(body, (p, window)), x_escape,
        body.attained_x, bound, window)
    residuals += _side_residuals(
        lambda q: gauge(body, (window, q)), y_escape,
        body.attained_y, bound, window)
    far = gauge(body, (window + 1, window + 1))
    if compare(far, bnd) < 0:
        residuals.append((far, bnd))

    return JumpReport(bound, window, values, witnesses,
                      cluster_points(body, bound), _subsume(residuals))


# -- mixed jumping values ----------------------------------------------


def _corner_points(body: NewtonBody) -> list[Point]:
    """Boundary corners: piece endpoints, plus the corner of a
    piece-free body."""
    if not body.pieces:
        return [(body.x0, body.y0)]
    seen: list[Point] = []
    for piece in body.pieces:
        for pt in (piece.start(), piece.end()):
            if pt is not None and pt not in seen:
                seen.append(pt)
    return seen


def _poly_roots(a2: ExactReal, a1: ExactReal, a0: ExactReal) -> list[ExactReal]:
    """Real roots of a2 c^2 + a1 c + a0 in exact form.

    Raises NotRepresentableError when the discriminant's square root
    leaves every quadratic field.
    """
    if a2 == ZERO:
        if a1 == ZERO:
            return []
        return [-a0 / a1]
    disc = a1 * a1 - as_exact(4) * a2 * a0
    sgn = disc.sign()
    if sgn < 0:
        return []
    if sgn == 0:
        return [-a1 / (as_exact(2) * a2)]
    root = exact_sqrt(disc)
    twice = as_exact(2) * a2
    return [(-a1 + root) / twice, (-a1 - root) / twice]


def _mixed_candidates(
    phi: NewtonBody, psi: NewtonBody, px: ExactReal, py: ExactReal
) -> tuple[list[ExactReal], bool]:
    """Every c at which p can sit on a boundary piece of
    scale(phi, c) + psi; second result flags equations whose roots
    escaped the quadratic fields (and were therefore dropped)."""
    cands: list[ExactReal] = []
    dropped = False

    def keep(roots: Iterable[ExactReal]) -> None:
        for c in roots:
            if c.sign() > 0:
                cands.append(c)

    def attempt(a2, a1, a0) -> None:
        nonlocal dropped
        try:
            keep(_poly_roots(as_exact(a2), as_exact(a1), as_exact(a0)))
        except NotRepresentableError:
            dropped = True

    phi_corners = _corner_points(phi)
    psi_corners = _corner_points(psi)

    for piece in phi.pieces:
        if isinstance(piece, HyperbolaArc):
            for vx, vy in psi_corners:
                # (py - vy - c b)(px - vx - c a) = c^2 s
                attempt(piece.a * piece.b - piece.s,
                        -(piece.a * (py - vy) + piece.b * (px - vx)),
                        (py - vy) * (px - vx))
        else:
            dx = piece.x2 - piece.x1
            dy = piece.y2 - piece.y1
            denom = piece.x1 * dy - piece.y1 * dx
            if denom == ZERO:
                continue  # line through the origin cannot carry boundary
            for vx, vy in psi_corners:
                keep([((px - vx) * dy - (py - vy) * dx) / denom])

    for piece in psi.pieces:
        if isinstance(piece, HyperbolaArc):
            for wx, wy in phi_corners:
                # (py - c wy - b)(px - c wx - a) = s
                attempt(wx * wy,
                        -(wy * (px - piece.a) + wx * (py - piece.b)),
                        (py - piece.b) * (px - piece.a) - piece.s)
        else:
            dx = piece.x2 - piece.x1
            dy = piece.y2 - piece.y1
            for wx, wy in phi_corners:
                attempt(0, wy * dx - wx * dy,
                        (px - piece.x1) * dy - (py - piece.y1) * dx)

    def seg_normal(piece: Segment) -> tuple[ExactReal, ExactReal]:
        # staircase segments run down-right, so this points inward
        return (piece.y1 - piece.y2, piece.x2 - piece.x1)

    for piece in phi.pieces:
        if isinstance(piece, Segment):
            n1, n2 = seg_normal(piece)
            denom = n1 * piece.x1 + n2 * piece.y1
            if denom == ZERO:
                continue  # line through the origin cannot carry boundary
            for arc in psi.pieces:
                if not isinstance(arc, HyperbolaArc):
                    continue
                # scaled segment resting on the arc's tangent point:
                # <n, p> = c <n, seg> + support of the arc at n
                try:
                    rad = exact_sqrt(as_exact(arc.s) * n1 * n2)
                    keep([(n1 * (px - arc.a) + n2 * (py - arc.b)
                           - as_exact(2) * rad) / denom])
                except NotRepresentableError:
                    dropped = True

    for piece in psi.pieces:
        if isinstance(piece, Segment):
            n1, n2 = seg_normal(piece)
            for arc in phi.pieces:
                if not isinstance(arc, HyperbolaArc):
                    continue
                # scaled arc tangent point resting on the segment:
                # <n, p> = c support(arc at n) + <n, seg>
                try:
                    supp = (n1 * arc.a + n2 * arc.b
                            + as_exact(2) * exact_sqrt(as_exact(arc.s) * n1 * n2))
                    if supp == ZERO:
                        continue
                    keep([(n1 * (px - piece.x1) + n2 * (py - piece.y1)) / supp])
                except NotRepresentableError:
                    dropped = True

    for arc_phi in phi.pieces:
        if not isinstance(arc_phi, HyperbolaArc):
            continue
        for arc_psi in psi.pieces:
            if not isinstance(arc_psi, HyperbolaArc):
                continue
            # combined arc: radicand (c sqrt(s1) + sqrt(s2))^2
            try:
                cross = as_exact(2) * exact_sqrt(as_exact(arc_phi.s) * arc_psi.s)
                attempt(arc_phi.a * arc_phi.b - arc_phi.s,
                        -(arc_phi.a * (py - arc_psi.b)
                          + arc_phi.b * (px - arc_psi.a) + cross),
                        (py - arc_psi.b) * (px - arc_psi.a) - arc_psi.s)
            except NotRepresentableError:
                dropped = True

    if phi.x0 > ZERO:
        keep([(px - psi.x0) / phi.x0])
    if phi.y0 > ZERO:
        keep([(py - psi.y0) / phi.y0])

    return sorted(set(cands)), dropped


def mixed_gauge(
    phi: NewtonBody, psi: NewtonBody, point: Sequence[int]
) -> ExactReal:
    """The unique c > 0 with point on the boundary of scale(phi, c) + psi.

    Exists exactly when point lies strictly inside psi and phi is not
    the full quadrant.  The value is the largest closed-form candidate
    c that keeps point inside the combined body, certified by exact
    membership probes at rationals between consecutive candidates.
    """
    px, py = int(point[0]), int(point[1])
    if px <= 0 or py <= 0:
        raise ValueError("point must have positive integer coordinates")
    if phi.is_quadrant():
        raise NoSolutionError("scaling the full quadrant never moves the boundary")
    if not psi.contains((px, py), strict=True):
        raise NoSolutionError("point is not interior to the reference body")

    cands, dropped = _mixed_candidates(phi, psi, as_exact(px), as_exact(py))
    exx, exy = as_exact(px), as_exact(py)

    def inside(c: Fraction) -> bool:
        combined = minkowski_sum(scale(phi, c), psi)
        return combined.contains((exx, exy))

    for i in range(len(cands) - 1, -1, -1):
        lo = cands[i - 1] if i else ZERO
        probe = rational_between(lo, cands[i])
        if inside(probe):
            if dropped:
                raise NotRepresentableError(
                    "a candidate equation left the quadratic fields; "
                    "the isolated root cannot be certified")
            return cands[i]
    raise NotRepresentableError(
        "the crossing value is not a quadratic irrational")


def enumerate_mixed(
    phi: NewtonBody, psi: NewtonBody, bound: Rational, window: int
) -> JumpReport:
    """Mixed analogue of enumerate_jumping over the same lattice window."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    if window < 2:
        raise ValueError("window must be at least 2")
    if phi.is_quadrant():
        return JumpReport(bound, window, (), (), (), ())

    bnd = as_exact(bound)
    witnessed: dict[ExactReal, LatticePoint] = {}
    for p in range(1, window + 1):
        for q in range(1, window + 1):
            if not psi.contains((p, q), strict=True):
                continue
            c = mixed_gauge(phi, psi, (p, q))
            if compare(c, bnd) > 0:
                break  # c grows with q
            if c not in witnessed:
                witnessed[c] = (p, q)
    values = tuple(sorted(witnessed))
    witnesses = tuple(witnessed[v] for v in values)

    clusters: set[ExactReal] = set()
    if phi.x0 > ZERO and not (phi.attained_x and psi.attained_x):
        kmax = (bnd * phi.x0 + psi.x0).floor()  # (k - x0psi)/x0phi <= bound
        for k in range(1, kmax + 1):
            c = (as_exact(k) - psi.x0) / phi.x0
            if c.sign() > 0:
                clusters.add(c)
    if phi.y0 > ZERO and not (phi.attained_y and psi.attained_y):
        kmax = (bnd * phi.y0 + psi.y0).floor()
        for k in range(1, kmax + 1):
            c = (as_exact(k) - psi.y0) / phi.y0
            if c.sign() > 0:
                clusters.add(c)

    def column_value(p: int) -> Optional[ExactReal]:
        if not psi.contains((p, window), strict=True):
            return None
        return mixed_gauge(phi, psi, (p, window))

    def row_value(q: int) -> Optional[ExactReal]:
        if not psi.contains((window, q), strict=True):
            return None
        return mixed_gauge(phi, psi, (window, q))

    def x_escape(p: int) -> Optional[ExactReal]:
        if phi.x0 > ZERO:
            lim = (as_exact(p) - psi.x0) / phi.x0
            return lim if lim.sign() > 0 else None
        return None

    def y_escape(q: int) -> Optional[ExactReal]:
        if phi.y0 > ZERO:
            lim = (as_exact(q) - psi.y0) / phi.y0
            return lim if lim.sign() > 0 else None
        return None

    residuals = _mixed_side_residuals(
        phi, psi, column_value, x_escape,
        phi.attained_x and psi.attained_x, bound, window, axis="x")
    residuals += _mixed_side_residuals(
        phi, psi, row_value, y_escape,
        phi.attained_y and psi.attained_y, bound, window, axis="y")
    try:
        far = mixed_gauge(phi, psi, (window + 1, window + 1))
        if compare(far, bnd) < 0:
            residuals.append((far, bnd))
    except NoSolutionError:
        residuals.append((ZERO, bnd))

    return JumpReport(bound, window, values, witnesses,
                      tuple(sorted(clusters)), _subsume(residuals))


def _mixed_side_residuals(
    phi: NewtonBody,
    psi: NewtonBody,
    value_at: Callable[[int], Optional[ExactReal]],
    escape_at: Callable[[int], Optional[ExactReal]],
    wall_attained: bool,
    bound: Fraction,
    window: int,
    axis: str,
) -> list[Interval]:
    out: list[Interval] = []
    bnd = as_exact(bound)
    for k in range(1, window + 1):
        solvable = (compare(as_exact(k), psi.x0) > 0 if axis == "x"
                    else compare(as_exact(k), psi.y0) > 0)
        if not solvable:
            continue  # the whole column lies outside the reference body
        lo = value_at(k)
        limit = escape_at(k)
        if lo is None:
            hi = bnd if limit is None or compare(limit, bnd) > 0 else limit
            out.append((ZERO, hi))
            continue
        if compare(lo, bnd) >= 0:
            break
        if wall_attained and limit is not None and compare(lo, limit) == 0:
            continue
        hi = bnd if limit is None or compare(limit, bnd) > 0 else limit
        out.append((lo, hi))
    return out


# -- consistency checks -------------------------------------------------


def gap_check(report: JumpReport, lct_value: ExactLike) -> GapReport:
    """Consecutive listed values may differ by at most the smallest one,
    wherever no unexplored interval interrupts them."""
    lct_value = as_exact(lct_value)
    values = report.values
    checked = skipped = 0
    violations: list[tuple[ExactReal, ExactReal]] = []

    def interrupted(a: ExactReal, b: ExactReal) -> bool:
        return any(compare(lo, b) < 0 and compare(a, hi) < 0
                   for lo, hi in report.residuals)

    if values and not interrupted(ZERO, values[0]):
        checked += 1
        if linear_sign(lct_value, -values[0]) < 0:
            violations.append((ZERO, values[0]))
    for v1, v2 in zip(values, values[1:]):
        if interrupted(v1, v2):
            skipped += 1
            continue
        checked += 1
        if linear_sign(v1, lct_value, -v2) < 0:
            violations.append((v1, v2))
    return GapReport(not violations, checked, skipped, tuple(violations))


def mtimes_check(
    body: NewtonBody, samples: Sequence[LatticePoint], mmax: int
) -> MtimesReport:
    """Integer multiples of witnessed values are witnessed again:
    the gauge is homogeneous and the scaled lattice point stays in a
    suitably wider window."""
    if mmax < 1:
        raise ValueError("mmax must be at least 1")
    samples = [(int(p[0]), int(p[1])) for p in samples]
    if not samples or any(px <= 0 or py <= 0 for px, py in samples):
        raise ValueError("samples must be positive lattice points")
    window = max(2, mmax * max(max(p) for p in samples))
    top = max((as_exact(mmax) * gauge(body, p) for p in samples))
    bound = Fraction(top.floor() + 1)
    report = enumerate_jumping(body, bound, window)
    listed = set(report.values)

    verified: list[tuple[LatticePoint, int, ExactReal]] = []
    failures: list[tuple[LatticePoint, int, str]] = []
    for p in samples:
        g = gauge(body, p)
        for m in range(1, mmax + 1):
            scaled = as_exact(m) * g
            direct = gauge(body, (m * p[0], m * p[1]))
            if direct != scaled:
                failures.append((p, m, "gauge is not homogeneous here"))
            elif scaled not in listed:
                failures.append((p, m, "scaled value missing from enumeration"))
            else:
                verified.append((p, m, scaled))
    return MtimesReport(not failures, window, bound,
                        tuple(verified), tuple(failures))


# -- delimited output ---------------------------------------------------

CSV_HEADER = "kind,value,approx,p,q"


def jump_report_rows(report: JumpReport) -> list[str]:
    """Deterministic delimited rows: listed values with witnesses, then
    accumulation points, then unexplored intervals (value column lo..hi)."""
    rows: list[str] = []
    for v, (p, q) in zip(report.values, report.witnesses):
        rows.append(f"listed,{format_exact(v)},{float(v)!r},{p},{q}")
    for c in report.clusters:
        rows.append(f"cluster,{format_exact(c)},{float(c)!r},,")
    for lo, hi in report.residuals:
        rows.append(f"residual,{format_exact(lo)}..{format_exact(hi)},{float(hi)!r},,")
    return rows
