"""Shared fixture bodies, helpers, and random-body strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from njump.body import (
    NewtonBody,
    corner_body,
    hyperbola_body,
    minkowski_sum,
    scale,
    staircase_hull,
)


def poly(*verts) -> NewtonBody:
    return staircase_hull([(Fraction(x), Fraction(y)) for x, y in verts])


def hyp(a, b, s) -> NewtonBody:
    return hyperbola_body(Fraction(a), Fraction(b), Fraction(s))


def fixture_bodies() -> list[NewtonBody]:
    """Ten bodies exercising every boundary shape the library supports."""
    return [
        hyp(1, 1, 1),
        hyp(0, 0, 1),
        hyp(2, 1, 1),
        hyp(0, 1, 2),
        poly((2, 0), (0, 3)),
        poly((1, 1)),
        poly((1, 2), (3, 1)),
        minkowski_sum(hyp(1, 1, 1), poly((1, 0))),
        minkowski_sum(poly((0, 2), (2, 0)), hyp(0, 0, 1)),
        scale(hyp(1, 1, 1), Fraction(3, 2)),
    ]


# -- random body strategies ------------------------------------------------

fracs = st.fractions(min_value=0, max_value=6, max_denominator=4)
pos_fracs = st.fractions(min_value=Fraction(1, 4), max_value=6, max_denominator=4)
lattice_points = st.tuples(st.integers(min_value=1, max_value=9),
                           st.integers(min_value=1, max_value=9))


@st.composite
def polyhedral_bodies(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    verts = draw(st.lists(st.tuples(fracs, fracs), min_size=n, max_size=n))
    if all(vx == 0 and vy == 0 for vx, vy in verts):
        verts.append((Fraction(1), Fraction(1)))
    return staircase_hull(verts)


@st.composite
def hyperbola_bodies(draw):
    return hyperbola_body(draw(fracs), draw(fracs), draw(pos_fracs))


@st.composite
def newton_bodies(draw):
    kind = draw(st.integers(min_value=0, max_value=3))
    if kind == 0:
        return draw(polyhedral_bodies())
    if kind == 1:
        return draw(hyperbola_bodies())
    if kind == 2:
        return scale(draw(hyperbola_bodies()), draw(pos_fracs))
    return minkowski_sum(draw(polyhedral_bodies()), draw(hyperbola_bodies()))


__all__ = [
    "poly", "hyp", "fixture_bodies", "corner_body",
    "fracs", "pos_fracs", "lattice_points",
    "polyhedral_bodies", "hyperbola_bodies", "newton_bodies",
]
