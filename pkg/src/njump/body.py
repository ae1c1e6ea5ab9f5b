"""Newton convex bodies in the plane and their exact boundary geometry.

A body is a closed convex subset P of the nonnegative quadrant with
P + quadrant = P, encoded by its lower-left boundary: an ordered run of
segments (strictly negative slope) and hyperbola arcs y = b + s/(x - a),
plus the two asymptote levels x0, y0 with flags saying whether the
boundary attains them.  All coordinates are ExactReal; nothing here is
ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exact import (
    ExactLike,
    ExactReal,
    as_exact,
    compare,
    exact_sqrt,
    format_exact,
    parse_exact,
    parse_rational,
)

Point = tuple[ExactReal, ExactReal]
LatticePoint = tuple[int, int]


class BodySpecError(ValueError):
    """Body specification violates a structural constraint."""


class GaugeUnboundedError(ValueError):
    """Gauge is infinite (the body is the full quadrant)."""


@dataclass(frozen=True)
class Segment:
    x1: ExactReal
    y1: ExactReal
    x2: ExactReal
    y2: ExactReal

    @property
    def slope(self) -> ExactReal:
        return (self.y2 - self.y1) / (self.x2 - self.x1)

    def start(self) -> Point:
        return (self.x1, self.y1)

    def end(self) -> Point:
        return (self.x2, self.y2)

    def position_of(self, x: ExactReal, y: ExactReal) -> int:
        """Sign of (x, y) against the segment's line: +1 above, 0 on, -1 below.

        Arranged so each side of the comparison stays in a single quadratic
        field (dx, dy are rational for all bodies built here), which keeps the
        test exact even when x lives in a different field than the endpoints.
        """
        dx = self.x2 - self.x1
        dy = self.y2 - self.y1
        return compare(dx * y - dy * x, dx * self.y1 - dy * self.x1)


@dataclass(frozen=True)
class HyperbolaArc:
    """Piece of y = b + s/(x - a); xlo == a marks an asymptotic open end,
    xhi None an unbounded tail."""

    a: ExactReal
    b: ExactReal
    s: ExactReal
    xlo: ExactReal
    xhi: Optional[ExactReal]

    @property
    def asymptotic_start(self) -> bool:
        return self.xlo == self.a

    def y_at(self, x: ExactLike) -> ExactReal:
        return self.b + self.s / (as_exact(x) - self.a)

    def slope_at(self, x: ExactLike) -> ExactReal:
        dx = as_exact(x) - self.a
        return -self.s / (dx * dx)

    def x_at_slope(self, sigma: ExactReal) -> ExactReal:
        # sigma < 0; x with -s/(x-a)^2 == sigma
        return self.a + exact_sqrt(self.s / (-sigma))

    def start(self) -> Optional[Point]:
        if self.asymptotic_start:
            return None
        return (self.xlo, self.y_at(self.xlo))

    def end(self) -> Optional[Point]:
        if self.xhi is None:
            return None
        return (self.xhi, self.y_at(self.xhi))

    def position_of(self, x: ExactReal, y: ExactReal) -> int:
        """Sign of (x, y) against the arc: +1 above, 0 on, -1 below.

        Multiplies through by x - a > 0 so no division leaves the field of x.
        """
        if compare(x, self.a) <= 0:
            return -1
        return compare((y - self.b) * (x - self.a), self.s)


Piece = Union[Segment, HyperbolaArc]


def _pts_eq(p: Point, q: Point) -> bool:
    return p[0] == q[0] and p[1] == q[1]


@dataclass(frozen=True)
class Asymptotes:
    x0: ExactReal
    y0: ExactReal
    attained_x: bool
    attained_y: bool


@dataclass(frozen=True)
class NewtonBody:
    pieces: tuple[Piece, ...]
    x0: ExactReal
    y0: ExactReal
    attained_x: bool
    attained_y: bool

    # -- structural helpers ---------------------------------------------

    def top_y(self) -> ExactReal:
        """Boundary height at x == x0 (requires an attained vertical side)."""
        if not self.attained_x:
            raise ValueError("vertical asymptote is not attained")
        if not self.pieces:
            return self.y0
        first = self.pieces[0]
        st = first.start()
        assert st is not None
        return st[1]

    def end_x(self) -> ExactReal:
        """Boundary x where it reaches y0 (requires an attained horizontal side)."""
        if not self.attained_y:
            raise ValueError("horizontal asymptote is not attained")
        if not self.pieces:
            return self.x0
        last = self.pieces[-1]
        en = last.end()
        assert en is not None
        return en[0]

    def is_quadrant(self) -> bool:
        return (not self.pieces and self.x0 == 0 and self.y0 == 0)

    def boundary_y(self, x: ExactLike) -> Optional[ExactReal]:
        """Boundary height at abscissa x; None where the body has no points."""
        x = as_exact(x)
        if x < self.x0:
            return None
        if x == self.x0:
            return self.top_y() if self.attained_x else None
        for piece in self.pieces:
            if isinstance(piece, Segment):
                if x <= piece.x2:
                    t = (x - piece.x1) / (piece.x2 - piece.x1)
                    return piece.y1 + t * (piece.y2 - piece.y1)
            else:
                if piece.xhi is None or x <= piece.xhi:
                    return piece.y_at(x)
        return self.y0

    def contains(self, p: tuple[ExactLike, ExactLike], strict: bool = False) -> bool:
        px, py = as_exact(p[0]), as_exact(p[1])
        side = compare(px, self.x0)
        if side < 0:
            return False
        if side == 0:
            # interior never touches the vertical wall
            if strict or not self.attained_x:
                return False
            return py >= self.top_y()
        for piece in self.pieces:
            hi = piece.x2 if isinstance(piece, Segment) else piece.xhi
            if hi is None or px <= hi:
                pos = piece.position_of(px, py)
                return pos > 0 if strict else pos >= 0
        # past every piece: the horizontal tail at height y0
        return py > self.y0 if strict else py >= self.y0


def _slope_leq(lo: Optional[ExactReal], hi: ExactReal) -> bool:
    # lo None means -infinity
    return lo is None or lo <= hi


def _piece_slope_range(piece: Piece) -> tuple[Optional[ExactReal], ExactReal]:
    """(left slope, right slope); None encodes -infinity, unbounded arcs end at 0."""
    if isinstance(piece, Segment):
        sl = piece.slope
        return sl, sl
    lo = None if piece.asymptotic_start else piece.slope_at(piece.xlo)
    hi = ExactReal(0) if piece.xhi is None else piece.slope_at(piece.xhi)
    return lo, hi


def _canonical_pieces(pieces: list[Piece]) -> tuple[Piece, ...]:
    """Merge adjacent pieces that continue the same segment line or arc."""
    out: list[Piece] = []
    for piece in pieces:
        if out:
            prev = out[-1]
            if (isinstance(prev, Segment) and isinstance(piece, Segment)
                    and prev.slope == piece.slope):
                out[-1] = Segment(prev.x1, prev.y1, piece.x2, piece.y2)
                continue
            if (isinstance(prev, HyperbolaArc) and isinstance(piece, HyperbolaArc)
                    and prev.a == piece.a and prev.b == piece.b
                    and prev.s == piece.s):
                out[-1] = HyperbolaArc(prev.a, prev.b, prev.s, prev.xlo, piece.xhi)
                continue
        out.append(piece)
    return tuple(out)


def make_body(pieces: list[Piece], x0: ExactLike, y0: ExactLike,
              attained_x: bool, attained_y: bool) -> NewtonBody:
    """Validated, canonicalized construction; raises BodySpecError."""
    x0, y0 = as_exact(x0), as_exact(y0)
    ps = _canonical_pieces(list(pieces))
    if x0 < 0 or y0 < 0:
        raise BodySpecError("asymptote levels must be nonnegative")
    prev_end: Optional[Point] = None
    prev_hi: Optional[ExactReal] = None
    prev_was_segment = False
    for piece in ps:
        if isinstance(piece, Segment):
            if piece.x2 <= piece.x1:
                raise BodySpecError("segment endpoints must advance in x")
            if piece.slope >= 0:
                raise BodySpecError("segment slope must be strictly negative")
            if piece.x1 < 0 or piece.y2 < 0:
                raise BodySpecError("segment leaves the nonnegative quadrant")
        else:
            if piece.s.sign() <= 0:
                raise BodySpecError("arc parameter s must be positive")
            if piece.a < 0 or piece.b < 0:
                raise BodySpecError("arc asymptotes must be nonnegative")
            if piece.xlo < piece.a:
                raise BodySpecError("arc range must start at or after x = a")
            if piece.xhi is not None and piece.xhi <= piece.xlo:
                raise BodySpecError("arc range must be nontrivial")
        lo, hi = _piece_slope_range(piece)
        if prev_hi is not None:
            if lo is None:
                raise BodySpecError("asymptotic arc start after another piece")
            if lo < prev_hi:
                raise BodySpecError("boundary slopes must be nondecreasing")
            if lo == prev_hi and prev_was_segment and isinstance(piece, Segment):
                raise BodySpecError("adjacent collinear segments")
        st = piece.start()
        if prev_end is not None and st is not None and not _pts_eq(prev_end, st):
            raise BodySpecError("boundary pieces are not contiguous")
        if prev_end is not None and st is None:
            raise BodySpecError("asymptotic arc start cannot follow a piece")
        prev_end = piece.end()
        prev_hi = hi
        prev_was_segment = isinstance(piece, Segment)
        if piece.end() is None and piece is not ps[-1]:
            raise BodySpecError("unbounded arc must be the final piece")
    # alignment with the asymptote record
    if ps:
        first, last = ps[0], ps[-1]
        st = first.start()
        if attained_x:
            if st is None or st[0] != x0:
                raise BodySpecError("attained vertical side must start the boundary at x0")
        else:
            if not (isinstance(first, HyperbolaArc) and first.asymptotic_start
                    and first.a == x0):
                raise BodySpecError("unattained vertical side requires an asymptotic arc at x0")
        en = last.end()
        if attained_y:
            if en is None or en[1] != y0:
                raise BodySpecError("attained horizontal side must end the boundary at y0")
        else:
            if not (isinstance(last, HyperbolaArc) and last.xhi is None
                    and last.b == y0):
                raise BodySpecError("unattained horizontal side requires an unbounded arc at y0")
    else:
        if not (attained_x and attained_y):
            raise BodySpecError("a corner body attains both asymptotes")
    return NewtonBody(ps, x0, y0, attained_x, attained_y)


def asymptotes(body: NewtonBody) -> Asymptotes:
    return Asymptotes(body.x0, body.y0, body.attained_x, body.attained_y)


def equal_bodies(a: NewtonBody, b: NewtonBody) -> bool:
    return a == b


# -- constructors -----------------------------------------------------


def staircase_hull(vertices: list[tuple[Fraction, Fraction]]) -> NewtonBody:
    """Polyhedral body: convex hull of the vertices plus the quadrant."""
    if not vertices:
        raise BodySpecError("vertex list is empty")
    for vx, vy in vertices:
        if vx < 0 or vy < 0:
            raise BodySpecError("vertices must be nonnegative")
    lowest: dict[Fraction, Fraction] = {}
    for vx, vy in vertices:
        if vx not in lowest or vy < lowest[vx]:
            lowest[vx] = vy
    pts = sorted(lowest.items())
    hull: list[tuple[Fraction, Fraction]] = []
    for p in pts:
        while len(hull) >= 2:
            (ax, ay), (bx, by) = hull[-2], hull[-1]
            cross = (bx - ax) * (p[1] - ay) - (by - ay) * (p[0] - ax)
            if cross <= 0:  # hull[-1] is above or on segment hull[-2] -> p
                hull.pop()
            else:
                break
        hull.append(p)
    # drop the tail once slopes stop decreasing the boundary (slope >= 0)
    chain = [hull[0]]
    for p in hull[1:]:
        if p[1] >= chain[-1][1]:
            break
        chain.append(p)
    pieces = [Segment(as_exact(chain[i][0]), as_exact(chain[i][1]),
                      as_exact(chain[i + 1][0]), as_exact(chain[i + 1][1]))
              for i in range(len(chain) - 1)]
    return make_body(pieces, chain[0][0], chain[-1][1], True, True)


def hyperbola_body(a: ExactLike, b: ExactLike, s: ExactLike) -> NewtonBody:
    a, b, s = as_exact(a), as_exact(b), as_exact(s)
    if s.sign() <= 0:
        raise BodySpecError("hyperbola parameter s must be positive")
    arc = HyperbolaArc(a, b, s, a, None)
    return make_body([arc], a, b, False, False)


def corner_body(x: ExactLike, y: ExactLike) -> NewtonBody:
    return make_body([], x, y, True, True)


def scale(body: NewtonBody, c: ExactLike) -> NewtonBody:
    c = as_exact(c)
    if c.sign() <= 0:
        raise BodySpecError("scale factor must be positive")
    pieces: list[Piece] = []
    for piece in body.pieces:
        if isinstance(piece, Segment):
            pieces.append(Segment(c * piece.x1, c * piece.y1,
                                  c * piece.x2, c * piece.y2))
        else:
            pieces.append(HyperbolaArc(
                c * piece.a, c * piece.b, c * c * piece.s, c * piece.xlo,
                None if piece.xhi is None else c * piece.xhi))
    return make_body(pieces, c * body.x0, c * body.y0,
                     body.attained_x, body.attained_y)


# -- Minkowski sum by slope merge --------------------------------------


def _state_at(body: NewtonBody, sa: Optional[ExactReal],
              sb: ExactReal) -> tuple[str, object]:
    """Body state on the open slope interval (sa, sb): inside an arc, or at
    the corner reached after all earlier pieces."""
    last_done: Optional[Piece] = None
    for piece in body.pieces:
        lo, hi = _piece_slope_range(piece)
        covers_left = lo is None or (sa is not None and lo <= sa)
        if isinstance(piece, HyperbolaArc) and covers_left and sb <= hi:
            return ("arc", piece)
        done = (sa is not None and hi <= sa)
        if done:
            last_done = piece
    if last_done is None:
        if not body.attained_x:
            raise AssertionError("sweep fell before an asymptotic boundary start")
        return ("corner", (body.x0, body.top_y()))
    en = last_done.end()
    assert en is not None
    return ("corner", en)


def _pos_at_slope(state: tuple[str, object], sigma: ExactReal) -> Point:
    kind, payload = state
    if kind == "corner":
        return payload  # type: ignore[return-value]
    arc: HyperbolaArc = payload  # type: ignore[assignment]
    x = arc.x_at_slope(sigma)
    return (x, arc.y_at(x))


def _segments_at(body: NewtonBody, sigma: ExactReal) -> list[Segment]:
    return [p for p in body.pieces
            if isinstance(p, Segment) and p.slope == sigma]


def _emit_arc(alpha: HyperbolaArc, shift_or_other: Union[Point, HyperbolaArc],
              sa: Optional[ExactReal], sb: ExactReal) -> HyperbolaArc:
    """Arc of the sum on (sa, sb): translated by a corner, or combined with
    another arc via (sqrt(s1) + sqrt(s2))^2."""
    if isinstance(shift_or_other, HyperbolaArc):
        other = shift_or_other
        r = exact_sqrt(alpha.s) + exact_sqrt(other.s)
        a = alpha.a + other.a
        b = alpha.b + other.b
        s = r * r
    else:
        cx, cy = shift_or_other
        a, b, s = alpha.a + cx, alpha.b + cy, alpha.s
    probe = HyperbolaArc(a, b, s, a, None)
    xlo = a if sa is None else probe.x_at_slope(sa)
    xhi = None if sb == 0 else probe.x_at_slope(sb)
    return HyperbolaArc(a, b, s, xlo, xhi)


def minkowski_sum(a: NewtonBody, b: NewtonBody) -> NewtonBody:
    """Exact Minkowski sum: pieces interleaved by slope, equal-slope segments
    concatenated, overlapping arcs combined."""
    crits: set[ExactReal] = set()
    for body in (a, b):
        for piece in body.pieces:
            lo, hi = _piece_slope_range(piece)
            if lo is not None:
                crits.add(lo)
            if hi != 0:
                crits.add(hi)
    breaks = sorted(crits)
    bounds: list[tuple[Optional[ExactReal], ExactReal]] = []
    prev: Optional[ExactReal] = None
    for br in breaks:
        bounds.append((prev, br))
        prev = br
    bounds.append((prev, ExactReal(0)))

    pieces: list[Piece] = []
    for sa, sb in bounds:
        state_a = _state_at(a, sa, sb)
        state_b = _state_at(b, sa, sb)
        if state_a[0] == "arc" and state_b[0] == "arc":
            pieces.append(_emit_arc(state_a[1], state_b[1], sa, sb))
        elif state_a[0] == "arc":
            pieces.append(_emit_arc(state_a[1], state_b[1], sa, sb))
        elif state_b[0] == "arc":
            pieces.append(_emit_arc(state_b[1], state_a[1], sa, sb))
        if sb != 0:
            segs = _segments_at(a, sb) + _segments_at(b, sb)
            if segs:
                pa = _pos_at_slope(state_a, sb)
                pb = _pos_at_slope(state_b, sb)
                x1, y1 = pa[0] + pb[0], pa[1] + pb[1]
                dx = sum((s.x2 - s.x1 for s in segs), ExactReal(0))
                dy = sum((s.y2 - s.y1 for s in segs), ExactReal(0))
                pieces.append(Segment(x1, y1, x1 + dx, y1 + dy))
    return make_body(pieces, a.x0 + b.x0, a.y0 + b.y0,
                     a.attained_x and b.attained_x,
                     a.attained_y and b.attained_y)


# -- gauge --------------------------------------------------------------


def gauge(body: NewtonBody, p: tuple[ExactLike, ExactLike]) -> ExactReal:
    """sup { t > 0 : p in t*body } for strictly positive p, computed from the
    unique boundary crossing of the ray through p."""
    px, py = as_exact(p[0]), as_exact(p[1])
    if px.sign() <= 0 or py.sign() <= 0:
        raise ValueError("gauge requires a strictly positive point")
    if body.is_quadrant():
        raise GaugeUnboundedError("gauge is infinite on the full quadrant")
    candidates: list[ExactReal] = []  # values of u = 1/t
    if body.attained_x and body.x0.sign() > 0:
        u = body.x0 / px
        if u * py >= body.top_y():
            candidates.append(u)
    if body.attained_y and body.y0.sign() > 0:
        u = body.y0 / py
        if u * px >= body.end_x():
            candidates.append(u)
    for piece in body.pieces:
        if isinstance(piece, Segment):
            den = (piece.x2 - piece.x1) * py - (piece.y2 - piece.y1) * px
            u = (piece.x2 * piece.y1 - piece.x1 * piece.y2) / den
            x = u * px
            if piece.x1 <= x <= piece.x2:
                candidates.append(u)
        else:
            # (u px - a)(u py - b) = s, larger root in u
            bterm = piece.a * py + piece.b * px
            disc = bterm * bterm - 4 * px * py * (piece.a * piece.b - piece.s)
            u = (bterm + exact_sqrt(disc)) / (2 * px * py)
            x = u * px
            lo_ok = x > piece.xlo if piece.asymptotic_start else x >= piece.xlo
            hi_ok = piece.xhi is None or x <= piece.xhi
            if lo_ok and hi_ok:
                candidates.append(u)
    if not candidates:
        raise AssertionError("positive ray must cross the boundary")
    best = candidates[0]
    for u in candidates[1:]:
        if u != best:
            raise AssertionError("boundary crossing must be unique")
    return 1 / best


# -- support function ---------------------------------------------------


def support_value(body: NewtonBody, u: tuple[float, float]) -> float:
    """sup over the body of u1*x + u2*y for u <= 0 (finite exactly there)."""
    u1, u2 = float(u[0]), float(u[1])
    if u1 > 0 or u2 > 0 or (u1 == 0 and u2 == 0):
        raise ValueError("support direction must be nonzero with u <= 0")
    if u1 == 0:
        return u2 * float(body.y0)
    if u2 == 0:
        return u1 * float(body.x0)
    best = -float("inf")
    if not body.pieces:
        return u1 * float(body.x0) + u2 * float(body.y0)
    for piece in body.pieces:
        pts = [piece.start(), piece.end()]
        for pt in pts:
            if pt is not None:
                best = max(best, u1 * float(pt[0]) + u2 * float(pt[1]))
        if isinstance(piece, HyperbolaArc):
            a, b, s = float(piece.a), float(piece.b), float(piece.s)
            xstar = a + (s * u2 / u1) ** 0.5
            lo = float(piece.xlo)
            hi = float("inf") if piece.xhi is None else float(piece.xhi)
            if lo < xstar < hi:
                best = max(best, u1 * a + u2 * b - 2.0 * (u1 * u2 * s) ** 0.5)
    return best


# -- body specifications ------------------------------------------------


def _parse_point(obj) -> tuple[Fraction, Fraction]:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise BodySpecError(f"expected a coordinate pair, got {obj!r}")
    return parse_rational(str(obj[0])), parse_rational(str(obj[1]))


def from_spec(spec: dict) -> NewtonBody:
    """Build a body from its JSON-style description."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise BodySpecError("body spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "polyhedral":
        verts = spec.get("vertices")
        if not verts:
            raise BodySpecError("polyhedral spec needs a nonempty 'vertices' list")
        return staircase_hull([_parse_point(v) for v in verts])
    if kind == "hyperbola":
        try:
            a = parse_rational(str(spec["a"]))
            b = parse_rational(str(spec["b"]))
            s = parse_rational(str(spec["s"]))
        except KeyError as exc:
            raise BodySpecError(f"hyperbola spec is missing {exc}") from exc
        if a < 0 or b < 0:
            raise BodySpecError("hyperbola asymptotes must be nonnegative")
        if s <= 0:
            raise BodySpecError("hyperbola parameter s must be positive")
        return hyperbola_body(a, b, s)
    if kind == "diagonal":
        ms = spec.get("m")
        if not isinstance(ms, (list, tuple)) or len(ms) != 2:
            raise BodySpecError("diagonal spec needs m = [m1, m2]")
        m1, m2 = (parse_rational(str(v)) for v in ms)
        if m1 <= 0 or m2 <= 0:
            raise BodySpecError("diagonal weights must be positive")
        return staircase_hull([(m1, Fraction(0)), (Fraction(0), m2)])
    if kind == "scale":
        if "c" not in spec or "body" not in spec:
            raise BodySpecError("scale spec needs 'c' and 'body'")
        c = parse_rational(str(spec["c"]))
        if c <= 0:
            raise BodySpecError("scale factor must be positive")
        return scale(from_spec(spec["body"]), c)
    if kind == "sum":
        bodies = spec.get("bodies")
        if not bodies:
            raise BodySpecError("sum spec needs a nonempty 'bodies' list")
        acc = from_spec(bodies[0])
        for sub in bodies[1:]:
            acc = minkowski_sum(acc, from_spec(sub))
        return acc
    if kind == "canonical":
        return _from_canonical(spec)
    raise BodySpecError(f"unknown body kind {kind!r}")


def _from_canonical(spec: dict) -> NewtonBody:
    try:
        x0 = parse_exact(str(spec["x0"]))
        y0 = parse_exact(str(spec["y0"]))
        ax = bool(spec["attained_x"])
        ay = bool(spec["attained_y"])
        raw = spec["pieces"]
    except KeyError as exc:
        raise BodySpecError(f"canonical spec is missing {exc}") from exc
    pieces: list[Piece] = []
    for item in raw:
        t = item.get("type")
        if t == "segment":
            (x1, y1), (x2, y2) = item["p1"], item["p2"]
            pieces.append(Segment(parse_exact(str(x1)), parse_exact(str(y1)),
                                  parse_exact(str(x2)), parse_exact(str(y2))))
        elif t == "arc":
            xhi = item.get("xhi")
            pieces.append(HyperbolaArc(
                parse_exact(str(item["a"])), parse_exact(str(item["b"])),
                parse_exact(str(item["s"])), parse_exact(str(item["xlo"])),
                None if xhi is None else parse_exact(str(xhi))))
        else:
            raise BodySpecError(f"unknown piece type {t!r}")
    return make_body(pieces, x0, y0, ax, ay)


def to_canonical_spec(body: NewtonBody) -> dict:
    """Canonical JSON-ready dump; from_spec on it reproduces the body."""
    pieces = []
    for piece in body.pieces:
        if isinstance(piece, Segment):
            pieces.append({
                "type": "segment",
                "p1": [format_exact(piece.x1), format_exact(piece.y1)],
                "p2": [format_exact(piece.x2), format_exact(piece.y2)],
            })
        else:
            pieces.append({
                "type": "arc",
                "a": format_exact(piece.a),
                "b": format_exact(piece.b),
                "s": format_exact(piece.s),
                "xlo": format_exact(piece.xlo),
                "xhi": None if piece.xhi is None else format_exact(piece.xhi),
            })
    return {
        "kind": "canonical",
        "x0": format_exact(body.x0),
        "y0": format_exact(body.y0),
        "attained_x": body.attained_x,
        "attained_y": body.attained_y,
        "pieces": pieces,
    }
