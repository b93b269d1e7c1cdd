"""Pure-numpy twins of the numba kernels (fallback backend).

Same names, same integer results as ``_kernels_numba``; vectorised per
row instead of jitted loops.
"""

from __future__ import annotations

import math

import numpy as np


def _isqrt_floor(n: int) -> int:
    return math.isqrt(n) if n > 0 else 0


def series_block(mu_lo, mu_hi, lam_bound, use_det):
    lam = np.arange(-lam_bound, lam_bound + 1, dtype=np.int64)
    l2 = lam.astype(np.float64) ** 2
    l4 = l2 * l2
    l6 = l4 * l2
    lam_abs = np.abs(lam)
    total = 0.0
    for mu in range(mu_lo, mu_hi + 1):
        mask = np.gcd(lam_abs, mu) == 1
        mu2 = float(mu) ** 2
        mu4 = mu2 * mu2
        mu6 = mu4 * mu2
        if use_det:
            poly = l6 + l4 * mu2 + 2.0 * l2 * mu4 + mu6
        else:
            poly = l6 + 2.0 * l4 * mu2 + l2 * mu4 + mu6
        total += float(np.sum(1.0 / np.sqrt(poly[mask])))
    return total


def _line_rows(A, B2, C, det, P, Q):
    t0 = 1
    while det * t0 * t0 * Q <= C * P:
        disc = C * P * Q - det * t0 * t0 * Q * Q
        r = _isqrt_floor(disc)
        a = -B2 * t0 * Q
        m = C * Q
        hi = (a + r) // m
        lo = -((-a + r) // m)
        yield t0, lo, hi
        t0 += 1


def count_line_i64(A, B2, C, det, P, Q):
    count = 0
    for t0, lo, hi in _line_rows(A, B2, C, det, P, Q):
        t1 = np.arange(lo, hi + 1, dtype=np.int64)
        count += int(np.count_nonzero(np.gcd(t0, np.abs(t1)) == 1))
    return count


def count_direct_i64(P, Q):
    return int(direct_h2_values(P, Q).shape[0])


def direct_h2_values(P, Q):
    chunks = []
    t0 = 1
    while t0 * t0 * Q <= P:
        t0sq = t0 * t0
        r1 = _isqrt_floor((P - t0sq * Q) // Q)
        for t1 in range(-r1, r1 + 1):
            part1 = t0sq + t1 * t1
            r2 = _isqrt_floor((P - part1 * Q) // Q)
            t2 = np.arange(-r2, r2 + 1, dtype=np.int64)
            num = t0 * t1 * t2 - t1 ** 3
            ok = num % t0sq == 0
            t2 = t2[ok]
            t3 = num[ok] // t0sq
            h2 = part1 + t2 * t2 + t3 * t3
            ok = h2 * Q <= P
            t2, t3, h2 = t2[ok], t3[ok], h2[ok]
            g = np.gcd(np.gcd(t0, abs(t1)), np.gcd(np.abs(t2), np.abs(t3)))
            chunks.append(h2[g == 1])
        t0 += 1
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def line_h2_values(A, B2, C, det, P, Q):
    chunks = []
    for t0, lo, hi in _line_rows(A, B2, C, det, P, Q):
        t1 = np.arange(lo, hi + 1, dtype=np.int64)
        t1 = t1[np.gcd(t0, np.abs(t1)) == 1]
        chunks.append(A * t0 * t0 + 2 * B2 * t0 * t1 + C * t1 * t1)
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def affine_count_m1(B):
    count = 2 * B + 1
    y = np.arange(-B, B + 1, dtype=np.int64)
    y = y[y != 0]
    y3 = y ** 3
    for x in range(1, B + 1):
        num = x * x + y3
        den = x * y
        ok = num % den == 0
        z = num[ok] // den[ok]
        count += 2 * int(np.count_nonzero(np.abs(z) <= B))
    return count


def affine_count_m2(B):
    count = 2 * B + 1
    y = np.arange(-B, B + 1, dtype=np.int64)
    y3 = y ** 3
    for x in range(-B, B + 1):
        if x == 0:
            continue
        num = x * y - y3
        ok = num % (x * x) == 0
        z = num[ok] // (x * x)
        count += int(np.count_nonzero(np.abs(z) <= B))
    return count


def _vp_capped(arr, p, cap):
    v = np.zeros(arr.shape, dtype=np.int64)
    work = np.abs(arr)
    zero = work == 0
    alive = ~zero
    for _ in range(cap):
        div = alive & (work % p == 0)
        if not div.any():
            break
        v[div] += 1
        work[div] //= p
        alive = div
    v[zero] = cap
    np.minimum(v, cap, out=v)
    return v


def grid_rows(p, a1, a2, s, J, K, n_lo, n_hi):
    side = p ** (J + K)
    pJ = p ** J
    vcap = 3 * J
    m = np.arange(side, dtype=np.int64)
    vm = _vp_capped(m, p, vcap)
    e2 = np.maximum(0, J - vm)
    m3 = m * m * m
    ang = 2.0 * np.pi * np.arange(pJ) / pJ
    cos_t = np.cos(ang)
    sin_t = np.sin(ang)
    re = 0.0
    im = 0.0
    for n in range(n_lo, n_hi):
        e1 = max(0, J - int(vm[n]))
        N = n * m * pJ - m3
        e3 = vcap - _vp_capped(N, p, vcap)
        e = np.maximum(e1, np.maximum(e2, e3))
        w = float(p) ** (-s * e.astype(np.float64))
        r = (a1 * n + a2 * m) % pJ
        re += float(np.dot(w, cos_t[r]))
        im += float(np.dot(w, sin_t[r]))
    return re, im


def zeta3_partial(N):
    n = np.arange(N, 0, -1, dtype=np.float64)
    return float(np.sum(1.0 / n ** 3))
