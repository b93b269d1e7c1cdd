"""Numba implementations of the hot counting/summation kernels.

Every function here has a same-named twin in ``_kernels_numpy``; the
dispatch table lives in ``kernels``.  All integer arithmetic stays inside
int64 (callers guard the ranges), all float accumulation is Kahan
compensated so results do not depend on threading.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def _isqrt64(n):
    # floor square root on int64; float seed, then exact correction
    if n <= 0:
        return np.int64(0)
    r = np.int64(math.sqrt(n))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit(**_JIT)
def series_block(mu_lo, mu_hi, lam_bound, use_det):
    """Sum of 1/sqrt(poly(lam, mu)) over coprime pairs, mu in [mu_lo, mu_hi].

    poly is the sextic lam^6 + 2 lam^4 mu^2 + lam^2 mu^4 + mu^6 when
    use_det is False, and the swapped-coefficient variant
    lam^6 + lam^4 mu^2 + 2 lam^2 mu^4 + mu^6 (the determinant of the
    line's height form) when True.  Both sums agree exactly over the
    symmetric box; keeping both orderings lets the two constant routes
    stay textually independent.
    """
    total = 0.0
    comp = 0.0
    for mu in range(mu_lo, mu_hi + 1):
        mu2 = float(mu) * float(mu)
        mu4 = mu2 * mu2
        mu6 = mu4 * mu2
        for lam in range(-lam_bound, lam_bound + 1):
            if math.gcd(lam if lam >= 0 else -lam, mu) != 1:
                continue
            l2 = float(lam) * float(lam)
            l4 = l2 * l2
            if use_det:
                poly = l4 * l2 + l4 * mu2 + 2.0 * l2 * mu4 + mu6
            else:
                poly = l4 * l2 + 2.0 * l4 * mu2 + l2 * mu4 + mu6
            term = 1.0 / math.sqrt(poly)
            y = term - comp
            t = total + y
            comp = (t - total) - y
            total = t
    return total


@njit(**_JIT)
def count_line_i64(A, B2, C, det, P, Q):
    """Primitive pairs (tau0 >= 1, tau1) with A t0^2 + 2 B2 t0 t1 + C t1^2 <= P/Q.

    Row bounds come from exact integer square roots, one gcd test per pair.
    """
    count = np.int64(0)
    t0 = np.int64(1)
    while det * t0 * t0 * Q <= C * P:
        disc = C * P * Q - det * t0 * t0 * Q * Q
        r = _isqrt64(disc)
        a = -B2 * t0 * Q
        m = C * Q
        hi = (a + r) // m
        lo = -((-a + r) // m)
        for t1 in range(lo, hi + 1):
            if math.gcd(t0, t1 if t1 >= 0 else -t1) == 1:
                count += 1
        t0 += 1
    return count


@njit(**_JIT)
def count_direct_i64(P, Q):
    """Points on the cubic with t0 >= 1, gcd 1, squared norm <= P/Q."""
    count = np.int64(0)
    t0 = np.int64(1)
    while t0 * t0 * Q <= P:
        t0sq = t0 * t0
        r1 = _isqrt64(P // Q - t0sq)
        for t1 in range(-r1, r1 + 1):
            part1 = t0sq + t1 * t1
            if part1 * Q > P:
                continue
            r2 = _isqrt64(P // Q - part1)
            for t2 in range(-r2, r2 + 1):
                part2 = part1 + t2 * t2
                if part2 * Q > P:
                    continue
                num = t0 * t1 * t2 - t1 * t1 * t1
                if num % t0sq != 0:
                    continue
                t3 = num // t0sq
                if (part2 + t3 * t3) * Q > P:
                    continue
                g = math.gcd(math.gcd(t0, t1 if t1 >= 0 else -t1),
                             math.gcd(t2 if t2 >= 0 else -t2,
                                      t3 if t3 >= 0 else -t3))
                if g == 1:
                    count += 1
        t0 += 1
    return count


@njit(**_JIT)
def direct_h2_values(P, Q):
    """Squared norms (times Q) of all direct-enumerated points, unsorted."""
    out = np.empty(1024, dtype=np.int64)
    n = 0
    t0 = np.int64(1)
    while t0 * t0 * Q <= P:
        t0sq = t0 * t0
        r1 = _isqrt64(P // Q - t0sq)
        for t1 in range(-r1, r1 + 1):
            part1 = t0sq + t1 * t1
            if part1 * Q > P:
                continue
            r2 = _isqrt64(P // Q - part1)
            for t2 in range(-r2, r2 + 1):
                part2 = part1 + t2 * t2
                if part2 * Q > P:
                    continue
                num = t0 * t1 * t2 - t1 * t1 * t1
                if num % t0sq != 0:
                    continue
                t3 = num // t0sq
                h2 = part2 + t3 * t3
                if h2 * Q > P:
                    continue
                g = math.gcd(math.gcd(t0, t1 if t1 >= 0 else -t1),
                             math.gcd(t2 if t2 >= 0 else -t2,
                                      t3 if t3 >= 0 else -t3))
                if g == 1:
                    if n == out.shape[0]:
                        grown = np.empty(2 * n, dtype=np.int64)
                        grown[:n] = out
                        out = grown
                    out[n] = h2
                    n += 1
        t0 += 1
    return out[:n]


@njit(**_JIT)
def line_h2_values(A, B2, C, det, P, Q):
    """Q(tau0, tau1) for each primitive pair with tau0 >= 1, unsorted."""
    out = np.empty(1024, dtype=np.int64)
    n = 0
    t0 = np.int64(1)
    while det * t0 * t0 * Q <= C * P:
        disc = C * P * Q - det * t0 * t0 * Q * Q
        r = _isqrt64(disc)
        a = -B2 * t0 * Q
        m = C * Q
        hi = (a + r) // m
        lo = -((-a + r) // m)
        for t1 in range(lo, hi + 1):
            if math.gcd(t0, t1 if t1 >= 0 else -t1) == 1:
                if n == out.shape[0]:
                    grown = np.empty(2 * n, dtype=np.int64)
                    grown[:n] = out
                    out = grown
                out[n] = A * t0 * t0 + 2 * B2 * t0 * t1 + C * t1 * t1
                n += 1
        t0 += 1
    return out[:n]


@njit(**_JIT)
def affine_count_m1(B):
    """Integer points of x*y*z = x^2 + y^3 in the cube [-B, B]^3.

    (x,y,z) -> (-x,y,-z) pairs the x != 0 solutions, so only x >= 1 is
    scanned; x = 0 forces y = 0 and leaves z free.
    """
    count = np.int64(2 * B + 1)
    for x in range(1, B + 1):
        xsq = x * x
        for y in range(-B, B + 1):
            if y == 0:
                continue
            num = xsq + y * y * y
            den = x * y
            if num % den != 0:
                continue
            z = num // den
            if -B <= z <= B:
                count += 2
    return count


@njit(**_JIT)
def affine_count_m2(B):
    """Integer points of x*y = x^2 z + y^3 in the cube [-B, B]^3."""
    count = np.int64(2 * B + 1)  # x = 0 forces y = 0, z free
    for x in range(-B, B + 1):
        if x == 0:
            continue
        xsq = x * x
        for y in range(-B, B + 1):
            num = x * y - y * y * y
            if num % xsq != 0:
                continue
            z = num // xsq
            if -B <= z <= B:
                count += 1
    return count


@njit(**_JIT)
def grid_rows(p, a1, a2, s, J, K, n_lo, n_hi):
    """Partial sums of the p-adic grid oracle over rep rows n in [n_lo, n_hi).

    Cells are n/p^J + p^K Z_p; the height is evaluated at the
    representative, the character exactly.  Returns (re, im).
    """
    side = np.int64(1)
    for _ in range(J + K):
        side *= p
    pJ = np.int64(1)
    for _ in range(J):
        pJ *= p
    vcap = 3 * J

    cos_t = np.empty(pJ, dtype=np.float64)
    sin_t = np.empty(pJ, dtype=np.float64)
    for r in range(pJ):
        ang = 2.0 * math.pi * r / pJ
        cos_t[r] = math.cos(ang)
        sin_t[r] = math.sin(ang)

    vm = np.empty(side, dtype=np.int64)
    for m in range(side):
        if m == 0:
            vm[m] = vcap
        else:
            v = 0
            w = m
            while w % p == 0 and v < vcap:
                w //= p
                v += 1
            vm[m] = v

    re = 0.0
    im = 0.0
    cre = 0.0
    cim = 0.0
    for n in range(n_lo, n_hi):
        vn = vm[n] if n < side else 0
        e1 = J - vn
        if e1 < 0:
            e1 = 0
        for m in range(side):
            e2 = J - vm[m]
            if e2 < 0:
                e2 = 0
            N = n * m * pJ - m * m * m
            if N == 0:
                e3 = 0
            else:
                if N < 0:
                    N = -N
                v = 0
                while N % p == 0 and v < vcap:
                    N //= p
                    v += 1
                e3 = vcap - v
            e = e1
            if e2 > e:
                e = e2
            if e3 > e:
                e = e3
            ht = float(p) ** e
            w = ht ** (-s)
            r = (a1 * n + a2 * m) % pJ
            tr = w * cos_t[r]
            ti = w * sin_t[r]
            y = tr - cre
            t = re + y
            cre = (t - re) - y
            re = t
            y = ti - cim
            t = im + y
            cim = (t - im) - y
            im = t
    return re, im


@njit(**_JIT)
def zeta3_partial(N):
    """Sum of n^-3 for n = N down to 1 (ascending magnitude)."""
    total = 0.0
    for n in range(N, 0, -1):
        x = float(n)
        total += 1.0 / (x * x * x)
    return total
