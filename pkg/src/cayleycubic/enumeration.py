"""Exact counts of rational points of bounded height, by two routes.

* ``count_direct``: brute-force scan of primitive integer vectors on the
  surface with t0 >= 1 (the slow oracle, capped by default),
* ``count_by_lines``: sum over the ruling of exact primitive lattice
  point counts inside each line's height ellipse.

Both produce exact integers for an exact rational bound B^2 and must
agree; the acceptance suite checks equality for every integer
B^2 <= 900.  Also here: the integer-point counters of the two affine
models and the truncated height zeta sum.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterator

import numpy as np

from . import kernels
from .geometry import (LineIndex, LineParam, ProjPoint, line_det,
                       line_of_point, param_line, param_of_point,
                       quad_form_of_line)
from .heights import HeightBound, height_proj

DEFAULT_DIRECT_CAP = Fraction(10_000)
AFFINE_CAP = 10 ** 5
_I64_GUARD = 2 ** 62


class DirectCapExceeded(ValueError):
    """Raised when the slow direct oracle is asked for an unreasonable bound."""


def _bsq(bound: HeightBound) -> tuple[int, int]:
    b = bound.b_squared
    return b.numerator, b.denominator


# ---------------------------------------------------------------------------
# direct route
# ---------------------------------------------------------------------------

def enumerate_direct(bound: HeightBound,
                     cap: Fraction = DEFAULT_DIRECT_CAP) -> Iterator[ProjPoint]:
    """All points of V with H^2 <= B^2, one primitive t0 >= 1 vector each.

    Pure-python reference implementation; the kernels reproduce its count.
    On the surface t0 = 0 forces t1 = 0, so t0 >= 1 enumerates exactly one
    representative per projective point of V.
    """
    P, Q = _bsq(bound)
    if bound.b_squared > cap:
        raise DirectCapExceeded(
            f"direct enumeration capped at B^2 <= {cap}; use count_by_lines")
    t0 = 1
    while t0 * t0 * Q <= P:
        t0sq = t0 * t0
        r1 = math.isqrt((P - t0sq * Q) // Q)
        for t1 in range(-r1, r1 + 1):
            part1 = t0sq + t1 * t1
            rem = (P - part1 * Q) // Q
            if rem < 0:
                continue
            r2 = math.isqrt(rem)
            for t2 in range(-r2, r2 + 1):
                num = t0 * t1 * t2 - t1 ** 3
                if num % t0sq != 0:
                    continue
                t3 = num // t0sq
                if (part1 + t2 * t2 + t3 * t3) * Q > P:
                    continue
                if math.gcd(math.gcd(t0, abs(t1)), math.gcd(abs(t2), abs(t3))) == 1:
                    yield ProjPoint(t0, t1, t2, t3)
        t0 += 1


def count_direct(bound: HeightBound, cap: Fraction = DEFAULT_DIRECT_CAP) -> int:
    P, Q = _bsq(bound)
    if bound.b_squared > cap:
        raise DirectCapExceeded(
            f"direct counting capped at B^2 <= {cap}; use count_by_lines")
    if P * Q < _I64_GUARD:
        return int(kernels.count_direct_i64(P, Q))
    return sum(1 for _ in enumerate_direct(bound, cap=cap))


def direct_h2_array(bound: HeightBound, cap: Fraction = DEFAULT_DIRECT_CAP) -> np.ndarray:
    """Sorted squared heights of all direct-enumerated points."""
    P, Q = _bsq(bound)
    if bound.b_squared > cap:
        raise DirectCapExceeded(
            f"direct counting capped at B^2 <= {cap}; use count_by_lines")
    values = kernels.direct_h2_values(P, Q)
    return np.sort(values)


# ---------------------------------------------------------------------------
# line route
# ---------------------------------------------------------------------------

def candidate_lines(bound: HeightBound) -> list[LineIndex]:
    """Lines that can carry a point of height <= B, sorted by (mu, lambda).

    A line holds a point with tau0 >= 1 only if its height form satisfies
    det <= B^2 * C (the form is >= det/C * tau0^2), and det >= max^6,
    C <= 2 max^2 confine max(|lambda|, mu) to max^4 <= 2 B^2.
    """
    P, Q = _bsq(bound)
    box = 1
    while Q * (box + 1) ** 4 <= 2 * P:
        box += 1
    out = []
    for mu in range(1, box + 1):
        for lam in range(-box, box + 1):
            if math.gcd(abs(lam), mu) != 1:
                continue
            y = LineIndex(lam, mu)
            _, _, C = quad_form_of_line(y)
            if line_det(y) * Q <= P * C:
                out.append(y)
    out.sort(key=lambda y: (y.mu, y.lam))
    return out


def _line_rows(A: int, B2: int, C: int, det: int, P: int, Q: int):
    t0 = 1
    while det * t0 * t0 * Q <= C * P:
        disc = C * P * Q - det * t0 * t0 * Q * Q
        r = math.isqrt(disc)
        a = -B2 * t0 * Q
        m = C * Q
        hi = (a + r) // m
        lo = -((-a + r) // m)
        yield t0, lo, hi
        t0 += 1


def enumerate_line(y: LineIndex, bound: HeightBound) -> Iterator[LineParam]:
    """Normalized primitive (tau0 >= 1, tau1) with Q(tau0, tau1) <= B^2.

    Row endpoints come from exact integer square roots, so boundary points
    are never lost or gained to rounding.
    """
    A, B2, C = quad_form_of_line(y)
    det = A * C - B2 * B2
    P, Q = _bsq(bound)
    for t0, lo, hi in _line_rows(A, B2, C, det, P, Q):
        for t1 in range(lo, hi + 1):
            if math.gcd(t0, abs(t1)) == 1:
                yield LineParam(t0, t1)


def count_line(y: LineIndex, bound: HeightBound) -> int:
    """Number of points of V on the line V_y with height <= B (exact)."""
    A, B2, C = quad_form_of_line(y)
    det = A * C - B2 * B2
    P, Q = _bsq(bound)
    if C * P * Q < _I64_GUARD:
        return int(kernels.count_line_i64(A, B2, C, det, P, Q))
    return sum(1 for _ in enumerate_line(y, bound))


def count_by_lines(bound: HeightBound, threads: int | None = None) -> int:
    """N(V; B) as the sum of per-line counts over the ruling."""
    lines = candidate_lines(bound)
    counts = kernels.map_ordered(lambda y: count_line(y, bound), lines, threads)
    return sum(counts)


def lines_h2_array(bound: HeightBound, threads: int | None = None) -> np.ndarray:
    """Sorted squared heights of all points enumerated line by line."""
    P, Q = _bsq(bound)

    def job(y: LineIndex) -> np.ndarray:
        A, B2, C = quad_form_of_line(y)
        det = A * C - B2 * B2
        if C * P * Q < _I64_GUARD:
            return kernels.line_h2_values(A, B2, C, det, P, Q)
        return np.array([A * t.tau0 ** 2 + 2 * B2 * t.tau0 * t.tau1 + C * t.tau1 ** 2
                         for t in enumerate_line(y, bound)], dtype=np.int64)

    chunks = kernels.map_ordered(job, candidate_lines(bound), threads)
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(chunks))


def counts_at_integer_bounds(limit_bsq: int, threads: int | None = None
                             ) -> tuple[np.ndarray, np.ndarray]:
    """(direct, lines) counts at every integer B^2 in [1, limit_bsq].

    One enumeration sweep per route; cumulative counts by binary search.
    """
    bound = HeightBound.from_b_squared(limit_bsq)
    direct = direct_h2_array(bound, cap=Fraction(limit_bsq))
    lines = lines_h2_array(bound, threads)
    grid = np.arange(1, limit_bsq + 1)
    return (np.searchsorted(direct, grid, side="right"),
            np.searchsorted(lines, grid, side="right"))


# ---------------------------------------------------------------------------
# affine integer models
# ---------------------------------------------------------------------------

def count_affine_integers(model: str, B: int) -> int:
    """Integer points in [-B, B]^3 on an affine model of the surface.

    model 'm1': x*y*z = x^2 + y^3;  model 'm2': x*y = x^2*z + y^3.
    O(B^2) scan over (x, y) with an exact divisibility test for z.
    """
    if B < 0:
        raise ValueError("B must be nonnegative")
    if B > AFFINE_CAP:
        raise ValueError(f"affine counting capped at B <= {AFFINE_CAP}")
    if B == 0:
        return 1  # only (0, 0, 0) on either model
    if model == "m1":
        return int(kernels.affine_count_m1(B))
    if model == "m2":
        return int(kernels.affine_count_m2(B))
    raise ValueError(f"unknown model {model!r}; expected 'm1' or 'm2'")


# ---------------------------------------------------------------------------
# height zeta partial sums
# ---------------------------------------------------------------------------

def z_partial(s: float, bound: HeightBound, threads: int | None = None) -> float:
    """Truncated height zeta sum over points of height <= B, for s > 2."""
    if s <= 2:
        raise ValueError("z_partial requires s > 2 (abscissa of convergence)")
    h2 = lines_h2_array(bound, threads)
    return math.fsum(float(v) ** (-s / 2.0) for v in h2)


# ---------------------------------------------------------------------------
# per-point CSV dump
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointRow:
    point: ProjPoint
    line: LineIndex
    tau: LineParam
    h2: int


def point_rows(bound: HeightBound) -> list[PointRow]:
    """One row per point of height <= B, sorted by (h2, t0, t1, t2, t3)."""
    rows = []
    for y in candidate_lines(bound):
        for tau in enumerate_line(y, bound):
            t = param_line(y, tau)
            rows.append(PointRow(t, y, tau, height_proj(t)))
    rows.sort(key=lambda r: (r.h2,) + r.point.coords)
    return rows


def write_points_csv(out: IO[str], bound: HeightBound) -> int:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["t0", "t1", "t2", "t3", "lambda", "mu", "tau0", "tau1", "h2"])
    rows = point_rows(bound)
    for r in rows:
        writer.writerow([*r.point.coords, r.line.lam, r.line.mu,
                         r.tau.tau0, r.tau.tau1, r.h2])
    return len(rows)


def partition_check(bound: HeightBound) -> bool:
    """Every direct-enumerated point lies on exactly one line, consistently.

    Rebuilds each direct point's line and parameter and checks the
    param_line round trip; set equality with the line-route enumeration.
    """
    direct_points = set(enumerate_direct(bound))
    line_points = set()
    for y in candidate_lines(bound):
        for tau in enumerate_line(y, bound):
            t = param_line(y, tau)
            if t in line_points:
                return False  # a point on two lines
            line_points.add(t)
    if direct_points != line_points:
        return False
    for t in direct_points:
        y = line_of_point(t)
        if param_line(y, param_of_point(t, y)) != t:
            return False
    return True
