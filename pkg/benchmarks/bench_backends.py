#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Runs each hot kernel workload under both backends and prints a timing
table plus the speedup.  Results are asserted equal (exact for integer
counts, 1e-9 relative for float sums) so the benchmark doubles as an
end-to-end backend consistency check.

    python benchmarks/bench_backends.py [--repeat 3]
"""

import argparse
import math
import time

from cayleycubic import enumeration, kernels
from cayleycubic._backend import NUMBA_AVAILABLE
from cayleycubic.constants import series_s_half
from cayleycubic.heights import HeightBound
from cayleycubic.local_zeta import hhat_p_grid_oracle

WORKLOADS = [
    ("count_by_lines(B=500)",
     lambda: enumeration.count_by_lines(HeightBound.from_height(500))),
    ("count_direct(B^2=10^4)",
     lambda: enumeration.count_direct(HeightBound.from_b_squared(10 ** 4))),
    ("series_s_half(T=1500)",
     lambda: series_s_half(1500).value),
    ("affine m1 (B=3000)",
     lambda: enumeration.count_affine_integers("m1", 3000)),
    ("affine m2 (B=3000)",
     lambda: enumeration.count_affine_integers("m2", 3000)),
    ("grid oracle p=3 (0,1)",
     lambda: hhat_p_grid_oracle(3, (0, 1))),
]


def run(repeat: int) -> None:
    if not NUMBA_AVAILABLE:
        raise SystemExit("numba unavailable; nothing to compare")
    rows = []
    for label, fn in WORKLOADS:
        results = {}
        timings = {}
        for backend in ("numba", "numpy"):
            with kernels.use_backend(backend):
                fn()  # warm up (JIT compile / cache touch)
                best = min(_timed(fn)[0] for _ in range(repeat))
                timings[backend] = best
                results[backend] = fn()
        a, b = results["numba"], results["numpy"]
        if isinstance(a, int):
            assert a == b, (label, a, b)
        else:
            assert math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9), (label, a, b)
        rows.append((label, timings["numba"], timings["numpy"]))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  {'numba':>10}  {'numpy':>10}  speedup")
    for label, t_nb, t_np in rows:
        print(f"{label.ljust(width)}  {t_nb * 1e3:>8.1f}ms  {t_np * 1e3:>8.1f}ms"
              f"  {t_np / t_nb:>6.1f}x")


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return time.perf_counter() - start, value


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    run(parser.parse_args().repeat)
