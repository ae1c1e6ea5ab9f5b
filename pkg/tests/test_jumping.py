"""Jumping values: frozen small enumerations and lattice-window properties.

Pure and mixed enumerations are checked against closed-form families
(harmonic pq/(p+q), square roots, diagonal sums) and against each other;
gap and multiple checks replay the consistency rules the reports promise.
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import (
    fixture_bodies,
    hyp,
    hyperbola_bodies,
    newton_bodies,
    poly,
    polyhedral_bodies,
)
from njump.body import gauge, minkowski_sum, scale
from njump.exact import NotRepresentableError, ZERO, as_exact, compare, exact_sqrt
from njump.jumping import (
    CSV_HEADER,
    JumpReport,
    NoSolutionError,
    cluster_points,
    enumerate_jumping,
    enumerate_mixed,
    gap_check,
    jump_report_rows,
    lct,
    mixed_gauge,
    mtimes_check,
)

F = Fraction


def fr(*pairs):
    return tuple(as_exact(F(a, b)) for a, b in pairs)


# -- smallest jumping value ----------------------------------------------


def test_lct_frozen_values():
    assert lct(hyp(1, 1, 1)) == F(1, 2)
    assert lct(hyp(0, 0, 1)) == 1
    assert lct(poly((2, 0), (0, 3))) == F(5, 6)


@given(newton_bodies())
def test_lct_is_first_enumerated_value(body):
    assume(not body.is_quadrant())
    first = lct(body)
    assume(compare(first, 4) <= 0)
    report = enumerate_jumping(body, 4, 6)
    assert report.values and report.values[0] == first


# -- pure enumeration ------------------------------------------------------


def test_enumerate_square_root_family():
    # boundary xy = 1: the gauge at (p, q) is sqrt(pq)
    report = enumerate_jumping(hyp(0, 0, 1), 2, 16)
    assert report.values == (as_exact(1), exact_sqrt(2), exact_sqrt(3), as_exact(2))
    assert report.clusters == ()
    assert report.residuals == ()


def test_enumerate_harmonic_family():
    # boundary (x-1)(y-1) = 1: the gauge at (p, q) is pq/(p+q)
    report = enumerate_jumping(hyp(1, 1, 1), 1, 12)
    want = tuple(as_exact(F(k, k + 1)) for k in range(1, 13)) + (as_exact(1),)
    assert report.values == want
    assert report.clusters == (as_exact(1),)
    assert report.residuals == ((as_exact(F(12, 13)), as_exact(1)),)
    assert report.witness_of(F(1, 2)) == (1, 1)
    assert report.witness_of(1) == (2, 2)
    with pytest.raises(KeyError):
        report.witness_of(F(5, 7))


def test_enumerate_polyhedral_diagonal():
    report = enumerate_jumping(poly((2, 0), (0, 3)), 1, 8)
    assert report.values == (as_exact(F(5, 6)),)
    assert report.clusters == ()
    assert report.residuals == ()


def test_enumerate_wide_window_residuals():
    report = enumerate_jumping(hyp(1, 1, 1), 3, 60)
    assert set(report.clusters) <= set(report.values)
    assert report.residuals == (
        (as_exact(F(60, 61)), as_exact(1)),
        (as_exact(F(60, 31)), as_exact(2)),
        (as_exact(F(20, 7)), as_exact(3)),
    )


def test_enumerate_quadrant_is_empty():
    report = enumerate_jumping(poly((0, 0)), 5, 8)
    assert report.values == () and report.clusters == () and report.residuals == ()


def test_enumerate_validation():
    with pytest.raises(ValueError):
        enumerate_jumping(hyp(1, 1, 1), 0, 8)
    with pytest.raises(ValueError):
        enumerate_jumping(hyp(1, 1, 1), 1, 1)
    with pytest.raises(ValueError):
        cluster_points(hyp(1, 1, 1), -1)


# -- cluster points ---------------------------------------------------------


def test_cluster_frozen_values():
    assert cluster_points(hyp(1, 1, 1), 3) == (as_exact(1), as_exact(2), as_exact(3))
    assert cluster_points(hyp(0, 0, 1), 10) == ()
    assert cluster_points(hyp(2, 1, 1), 2) == fr((1, 2), (1, 1), (3, 2), (2, 1))


def test_integer_clusters_are_witnessed():
    # every cluster k of the harmonic family is a value ((2k, 2k) works),
    # and the stored witness is the lexicographically first one
    report = enumerate_jumping(hyp(1, 1, 1), 3, 6)
    assert set(report.clusters) <= set(report.values)
    assert report.witness_of(2) == (3, 6)


@given(polyhedral_bodies())
def test_polyhedral_bodies_have_no_clusters(body):
    assert cluster_points(body, 10) == ()


@given(hyperbola_bodies(), st.integers(min_value=2, max_value=5))
def test_cluster_multiples_stay_clusters(body, m):
    clusters = cluster_points(body, 12)
    for c in clusters:
        scaled = as_exact(m) * c
        if compare(scaled, 12) <= 0:
            assert scaled in clusters


@given(hyperbola_bodies())
def test_cluster_spacing_bounded_below(body):
    clusters = cluster_points(body, 10)
    assume(len(clusters) >= 2)
    sources = []
    if body.x0 > ZERO and not body.attained_x:
        sources.append(body.x0.as_fraction())
    if body.y0 > ZERO and not body.attained_y:
        sources.append(body.y0.as_fraction())
    floor_gap = F(1)
    for m in sources:
        floor_gap /= m.numerator
    for a, b in zip(clusters, clusters[1:]):
        diff = (b - a).as_fraction()
        assert diff >= floor_gap


# -- mixed enumeration ------------------------------------------------------


def test_mixed_gauge_frozen_values():
    trivial = poly((0, 0))
    shifted = minkowski_sum(hyp(1, 1, 1), poly((1, 0)))
    assert mixed_gauge(shifted, trivial, (1, 1)) == (as_exact(3) - exact_sqrt(5)) / 2
    assert mixed_gauge(hyp(1, 1, 1), poly((1, 0)), (2, 1)) == F(1, 2)
    assert mixed_gauge(hyp(0, 0, 1), hyp(1, 1, 1), (2, 3)) == exact_sqrt(2) - 1


def test_mixed_gauge_no_solution():
    with pytest.raises(NoSolutionError):
        # (1, 1) sits outside the reference body, never on the sum boundary
        mixed_gauge(hyp(0, 0, 1), hyp(1, 1, 1), (1, 1))
    with pytest.raises(NoSolutionError):
        # scaling the full quadrant never moves the sum
        mixed_gauge(poly((0, 0)), hyp(1, 1, 1), (2, 2))
    with pytest.raises(ValueError):
        mixed_gauge(hyp(1, 1, 1), hyp(1, 1, 1), (0, 2))


def test_enumerate_mixed_root_shift_family():
    # c with (p-1)(q-1) = (c+1)^2: the values are sqrt(k) - 1
    report = enumerate_mixed(hyp(0, 0, 1), hyp(1, 1, 1), 2, 12)
    want = tuple(sorted(exact_sqrt(k) - 1 for k in range(2, 10)))
    assert report.values == want
    assert report.clusters == ()
    assert report.residuals == ()


def test_enumerate_mixed_shifted_harmonic():
    # the x-shifted reference reproduces the harmonic value set
    report = enumerate_mixed(hyp(1, 1, 1), poly((1, 0)), 1, 12)
    pure = enumerate_jumping(hyp(1, 1, 1), 1, 12)
    assert report.values == pure.values
    assert report.clusters == (as_exact(1),)
    assert report.residuals == ((as_exact(F(11, 12)), as_exact(1)),)


@settings(max_examples=20, deadline=None)
@given(newton_bodies())
def test_mixed_with_trivial_reference_matches_pure(body):
    assume(not body.is_quadrant())
    mixed = enumerate_mixed(body, poly((0, 0)), 2, 4)
    pure = enumerate_jumping(body, 2, 4)
    assert mixed.values == pure.values
    assert mixed.clusters == pure.clusters
    assert mixed.residuals == pure.residuals


@settings(max_examples=15, deadline=None)
@given(hyperbola_bodies(), st.integers(min_value=1, max_value=3),
       st.integers(min_value=1, max_value=3))
def test_mixed_value_is_boundary_crossing(body, px, py):
    reference = hyp(1, 1, 1)
    assume(reference.contains((px, py), strict=True))
    try:
        c = mixed_gauge(body, reference, (px, py))
    except NotRepresentableError:
        assume(False)  # arc+arc sums may leave the quadratic fields
        return
    assert c.sign() > 0
    # strictly inside just below, outside strictly above
    below = c * F(99, 100)
    above = c * F(101, 100)
    if below.is_rational:
        inner = minkowski_sum(scale(body, below.as_fraction()), reference)
        assert inner.contains((px, py))
    if above.is_rational:
        outer = minkowski_sum(scale(body, above.as_fraction()), reference)
        assert not outer.contains((px, py), strict=True)


# -- witnesses and window growth -------------------------------------------


@given(newton_bodies())
@settings(max_examples=40, deadline=None)
def test_witnesses_reproduce_values(body):
    assume(not body.is_quadrant())
    report = enumerate_jumping(body, 2, 5)
    for v, w in zip(report.values, report.witnesses):
        assert gauge(body, w) == v
    for a, b in zip(report.values, report.values[1:]):
        assert compare(a, b) < 0
    for v in report.values:
        assert compare(v, 2) <= 0


@given(hyperbola_bodies())
@settings(max_examples=25, deadline=None)
def test_window_refinement_is_monotone(body):
    assume(not body.is_quadrant())
    small = enumerate_jumping(body, 3, 4)
    large = enumerate_jumping(body, 3, 8)
    assert set(small.values) <= set(large.values)
    for lo, hi in large.residuals:
        assert any(compare(plo, lo) <= 0 and compare(hi, phi) <= 0
                   for plo, phi in small.residuals)


# -- consistency checks ------------------------------------------------------


def test_gap_check_harmonic():
    report = enumerate_jumping(hyp(1, 1, 1), 1, 12)
    result = gap_check(report, lct(hyp(1, 1, 1)))
    assert result.passed
    assert result.checked == 12 and result.skipped == 1


def test_gap_check_square_roots():
    # consecutive root differences against the unit threshold
    report = enumerate_jumping(hyp(0, 0, 1), 2, 16)
    result = gap_check(report, lct(hyp(0, 0, 1)))
    assert result.passed
    assert result.checked == 4 and result.skipped == 0


def test_gap_check_diagonal():
    report = enumerate_jumping(poly((2, 0), (0, 3)), 2, 8)
    assert report.values == fr((5, 6), (7, 6), (4, 3), (3, 2), (5, 3), (11, 6), (2, 1))
    result = gap_check(report, F(5, 6))
    assert result.passed and result.skipped == 0


def test_gap_check_flags_wide_gap():
    fake = JumpReport(F(2), 2,
                      (as_exact(F(1, 4)), as_exact(2)),
                      ((1, 1), (2, 2)), (), ())
    result = gap_check(fake, F(1, 2))
    assert not result.passed
    assert result.violations == ((as_exact(F(1, 4)), as_exact(2)),)


def test_mtimes_doubling():
    report = mtimes_check(hyp(1, 1, 1), [(1, 1)], 2)
    assert report.passed
    assert ((1, 1), 2, as_exact(1)) in report.verified


def test_mtimes_trivial_multiplier():
    for body in fixture_bodies():
        if body.is_quadrant():
            continue
        assert mtimes_check(body, [(1, 1)], 1).passed


@settings(max_examples=20, deadline=None)
@given(newton_bodies(), st.integers(min_value=1, max_value=3),
       st.integers(min_value=1, max_value=3))
def test_mtimes_property(body, px, py):
    assume(not body.is_quadrant())
    assert mtimes_check(body, [(px, py)], 3).passed


# -- delimited rows -----------------------------------------------------------


def test_report_rows_format():
    report = enumerate_jumping(hyp(1, 1, 1), 1, 12)
    rows = jump_report_rows(report)
    assert CSV_HEADER == "kind,value,approx,p,q"
    assert rows[0] == "listed,1/2,0.5,1,1"
    assert "cluster,1,1.0,," in rows
    assert "residual,12/13..1,1.0,," in rows
    assert len(rows) == len(report.values) + len(report.clusters) + len(report.residuals)
