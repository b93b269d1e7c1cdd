"""Dispatch layer over the numba / numpy kernel twins.

Usage::

    from cayleycubic import kernels
    kernels.backend()            # "numba" or "numpy"
    kernels.count_line_i64(...)  # routed to the active backend

The active backend defaults per ``CAYLEY_BACKEND`` (see ``_backend``);
``set_backend``/``use_backend`` switch it, mainly for tests and the
benchmark script.
"""

from __future__ import annotations

import contextlib
import importlib
from concurrent.futures import ThreadPoolExecutor

from . import _backend

_FUNCS = (
    "series_block",
    "count_line_i64",
    "count_direct_i64",
    "direct_h2_values",
    "line_h2_values",
    "affine_count_m1",
    "affine_count_m2",
    "grid_rows",
    "zeta3_partial",
)

_modules: dict[str, object] = {}
_active = _backend.default_backend()


def _module(name: str):
    if name not in _modules:
        _modules[name] = importlib.import_module(f"._kernels_{name}", __package__)
    return _modules[name]


def backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not _backend.NUMBA_AVAILABLE:
        raise RuntimeError("numba backend requested but numba is unavailable")
    _module(name)
    _active = name


@contextlib.contextmanager
def use_backend(name: str):
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def __getattr__(name: str):
    if name in _FUNCS:
        return getattr(_module(_active), name)
    raise AttributeError(name)


def map_ordered(fn, jobs, threads: int | None = None) -> list:
    """Apply fn over jobs, optionally on a thread pool, preserving order.

    Kernels release the GIL (numba nogil / numpy ufuncs), so threads give
    real parallelism; the result list order is fixed by the job order, so
    reductions stay deterministic regardless of thread count.
    """
    jobs = list(jobs)
    if threads is None or threads <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs))
