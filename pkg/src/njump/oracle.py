"""Floating-point cross-check of the exact pipeline.

Weights are evaluated as convex functions of log-moduli; a lattice
point's membership in a multiplier ideal is probed by watching the
growth of truncated integrals of the corresponding density.  The probe
only adjudicates cases separated from the decision boundary by a
margin; at the boundary quadrature cannot decide, and the exact
pipeline is the authority; the oracle validates it, never feeds it.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .body import HyperbolaArc, LatticePoint, NewtonBody, gauge, scale, support_value
from .exact import Rational, as_exact, compare
from .ideals import MonomialIdeal


@dataclass(frozen=True)
class SupportOf:
    body: NewtonBody


@dataclass(frozen=True)
class GuanLi:
    M: int
    K: int

    def __post_init__(self):
        if self.M < 2 or self.K < 1:
            raise ValueError("need M >= 2 and K >= 1")


@dataclass(frozen=True)
class Diagonal:
    m1: Fraction
    m2: Fraction

    def __post_init__(self):
        if self.m1 <= 0 or self.m2 <= 0:
            raise ValueError("weights must be positive")


@dataclass(frozen=True)
class MonomialLog:
    ideal: MonomialIdeal


WeightFn = SupportOf | GuanLi | Diagonal | MonomialLog


@dataclass(frozen=True)
class ProbeResult:
    verdict: str  # Convergent | Divergent | Inconclusive
    slope: float
    samples: tuple[tuple[float, float], ...]


class MarginViolation(ValueError):
    def __init__(self, cases):
        self.cases = tuple(cases)
        super().__init__(f"{len(self.cases)} case(s) too close to the boundary")


@dataclass(frozen=True)
class AgreementReport:
    total: int
    agreed: int
    mismatches: tuple[tuple[int, bool, str], ...]
    rows: tuple[tuple[int, str, LatticePoint, bool, str, float, bool], ...]


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x, dtype=float)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _guanli_terms(M: int, K: int, s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
    """Sum of M^-k * log(exp(s1) + k^-b_k exp(b_k s2)), b_k = M^(2k)."""
    total = np.zeros(np.broadcast(s1, s2).shape, dtype=float)
    for k in range(1, K + 1):
        bk = float(M) ** (2 * k)
        total += (float(M) ** -k) * np.logaddexp(s1, bk * (s2 - math.log(k)))
    return total


def _support_grid(body: NewtonBody, s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
    """Vectorized support values over arrays of directions <= 0."""
    x0, y0 = float(body.x0), float(body.y0)
    corners: list[tuple[float, float]] = []
    if not body.pieces:
        corners.append((x0, y0))
    for piece in body.pieces:
        for pt in (piece.start(), piece.end()):
            if pt is not None:
                corners.append((float(pt[0]), float(pt[1])))
    best = np.full(np.broadcast(s1, s2).shape, -np.inf)
    for cx, cy in corners:
        best = np.maximum(best, s1 * cx + s2 * cy)
    interior = (s1 < 0) & (s2 < 0)
    for piece in body.pieces:
        if not isinstance(piece, HyperbolaArc):
            continue
        a, b, s = float(piece.a), float(piece.b), float(piece.s)
        lo = float(piece.xlo)
        hi = np.inf if piece.xhi is None else float(piece.xhi)
        with np.errstate(divide="ignore", invalid="ignore"):
            xstar = a + np.sqrt(s * s2 / np.where(interior, s1, -1.0))
            tangent = s1 * a + s2 * b - 2.0 * np.sqrt(
                np.where(interior, s1 * s2 * s, 0.0))
        mask = interior & (xstar > lo) & (xstar < hi)
        best = np.where(mask, np.maximum(best, tangent), best)
    # axis-parallel directions: the supremum moves to an asymptote
    best = np.where((s1 == 0) & (s2 < 0), s2 * y0, best)
    best = np.where((s2 == 0) & (s1 < 0), s1 * x0, best)
    return np.where((s1 == 0) & (s2 == 0), 0.0, best)


def _weight_grid(w: WeightFn, s1: np.ndarray, s2: np.ndarray) -> np.ndarray:
    if isinstance(w, SupportOf):
        return _support_grid(w.body, s1, s2)
    if isinstance(w, GuanLi):
        return s1 + _guanli_terms(w.M, w.K, s1, s2)
    if isinstance(w, Diagonal):
        return np.logaddexp(float(w.m1) * s1, float(w.m2) * s2)
    if isinstance(w, MonomialLog):
        stack = np.stack([a * s1 + b * s2 for a, b in w.ideal.gens])
        peak = stack.max(axis=0)
        return peak + np.log(np.exp(stack - peak).sum(axis=0))
    raise TypeError(f"not a weight function: {w!r}")


def weight_eval(w: WeightFn, s: tuple[float, float]) -> float:
    """Value of the weight's convex log-moduli profile at s <= 0."""
    s1, s2 = float(s[0]), float(s[1])
    if s1 > 0 or s2 > 0:
        raise ValueError("log-moduli must be nonpositive")
    return float(_weight_grid(w, np.asarray(s1), np.asarray(s2)))


def guanli_gradient(M: int, K: int, s: tuple[float, float]) -> tuple[float, float]:
    """Exact partial derivatives of the truncated log-series weight.

    As s2 falls the gradient tends to (1 + 1/(M-1), 0): every term's
    logistic factor saturates toward the first slot.
    """
    if M < 2 or K < 1:
        raise ValueError("need M >= 2 and K >= 1")
    s1, s2 = float(s[0]), float(s[1])
    if s1 > 0 or s2 > 0:
        raise ValueError("log-moduli must be nonpositive")
    ks = np.arange(1, K + 1, dtype=float)
    bk = float(M) ** (2 * ks)
    tk = bk * (s2 - np.log(ks))
    d1 = 1.0 + float(np.sum(float(M) ** -ks * _sigmoid(np.asarray(s1 - tk))))
    d2 = float(np.sum(float(M) ** ks * _sigmoid(np.asarray(tk - s1))))
    return (d1, d2)


def integrability_probe(
    w: WeightFn, c: float, point: LatticePoint, tmax: float, grid: int
) -> ProbeResult:
    """Growth classification of the truncated density integrals.

    One tensor trapezoid grid over (-tmax, 0)^2 is summed on nested
    quarter boxes anchored at the origin corner; shrinking relative
    increments mean convergence, steady log-linear growth divergence.
    """
    if tmax < 10:
        raise ValueError("tmax must be at least 10")
    if grid < 64:
        raise ValueError("grid must be at least 64")
    grid += (-grid) % 4
    a1, a2 = int(point[0]), int(point[1])
    nodes = np.linspace(-tmax, 0.0, grid + 1)
    h = tmax / grid
    S1, S2 = np.meshgrid(nodes, nodes, indexing="ij")
    exponent = (2.0 * (a1 + 1) * S1 + 2.0 * (a2 + 1) * S2
                - 2.0 * c * _weight_grid(w, S1, S2))
    quarters = grid // 4
    ts, logs = [], []
    for m in (1, 2, 3, 4):
        # each box gets its own shift so no sub-box underflows to zero
        start = grid - m * quarters
        sub = exponent[start:, start:]
        shift = float(sub.max())
        dens = np.exp(sub - shift)
        cells = 0.25 * h * h * (dens[:-1, :-1] + dens[1:, :-1]
                                + dens[:-1, 1:] + dens[1:, 1:])
        ts.append(m * tmax / 4.0)
        logs.append(math.log(float(cells.sum())) + shift)
    # boxes are nested, so I_m <= I_{m+1} and the ratio below is <= 1
    rel = [1.0 - math.exp(logs[i] - logs[i + 1]) for i in range(3)]
    slope = float(np.polyfit(ts, logs, 1)[0])
    if all(r < 1e-6 for r in rel):
        verdict = "Convergent"
    elif slope > 0.01:
        verdict = "Divergent"
    else:
        verdict = "Inconclusive"
    return ProbeResult(verdict, slope, tuple(zip(ts, logs)))


def agreement_report(
    body: NewtonBody,
    cases: Sequence[tuple[Rational, LatticePoint]],
    margin: float,
    tmax: float,
    grid: int = 640,
    jobs: int = 1,
) -> AgreementReport:
    """Exact membership vs numeric probe on margin-separated cases.

    Every case's weight c must sit a relative margin away from the
    decision boundary (the gauge of the shifted point), checked
    exactly; boundary-ambiguous cases are refused up front.
    """
    margin_f = Fraction(margin)
    if margin_f <= 0:
        raise ValueError("margin must be positive")
    parsed = [(Fraction(c), (int(a[0]), int(a[1]))) for c, a in cases]
    offending = []
    for idx, (c, a) in enumerate(parsed):
        if c <= 0:
            raise ValueError("weights must be positive")
        g = gauge(body, (a[0] + 1, a[1] + 1))
        if (compare(g, c * (1 - margin_f)) > 0
                and compare(g, c * (1 + margin_f)) < 0):
            offending.append((idx, c, a))
    if offending:
        raise MarginViolation(offending)

    def probe(case: tuple[Fraction, LatticePoint]) -> ProbeResult:
        c, a = case
        return integrability_probe(SupportOf(body), float(c), a, tmax, grid)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(probe, parsed))
    else:
        results = [probe(case) for case in parsed]

    rows = []
    mismatches = []
    agreed = 0
    for idx, ((c, a), res) in enumerate(zip(parsed, results)):
        member = scale(body, c).contains((a[0] + 1, a[1] + 1), strict=True)
        expected = "Convergent" if member else "Divergent"
        ok = res.verdict == expected
        agreed += ok
        if not ok:
            mismatches.append((idx, member, res.verdict))
        rows.append((idx, str(c), a, member, res.verdict, res.slope, ok))
    return AgreementReport(len(parsed), agreed, tuple(mismatches), tuple(rows))
