"""Backend selection for the hot numeric kernels.

Two interchangeable kernel implementations exist:

* ``numba``: ``@njit``-compiled loops (default when numba imports cleanly),
* ``numpy``: vectorised pure-numpy fallbacks.

The environment variable ``CAYLEY_BACKEND`` picks the default at import
time (``numba`` or ``numpy``); ``kernels.set_backend`` can switch at
runtime, which the benchmark harness and the cross-backend tests use.
Both backends compute identical integers; float accumulations may differ
by rounding order, which every consumer tolerates.
"""

from __future__ import annotations

import os

ENV_VAR = "CAYLEY_BACKEND"

try:
    import numba  # noqa: F401

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only on stripped installs
    NUMBA_AVAILABLE = False


def default_backend() -> str:
    choice = os.environ.get(ENV_VAR, "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba" and not NUMBA_AVAILABLE:
            raise RuntimeError(
                f"{ENV_VAR}=numba requested but numba is not importable"
            )
        return choice
    if choice:
        raise RuntimeError(
            f"unrecognised {ENV_VAR}={choice!r}; expected 'numba' or 'numpy'"
        )
    return "numba" if NUMBA_AVAILABLE else "numpy"
