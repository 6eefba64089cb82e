"""Backend selection for the compiled numeric kernels.

The hot loops in :mod:`fraccurv._numeric` are plain-Python functions written
so that numba's nopython mode can compile them.  Which flavour runs is fixed
at import time by the ``FRACCURV_BACKEND`` environment variable:

* ``FRACCURV_BACKEND=numba`` -- compile with ``@njit`` (the default whenever
  numba is importable),
* ``FRACCURV_BACKEND=numpy`` -- run the identical kernels uncompiled.

The numpy path produces the same results and is much slower; it exists as a
fallback for environments without numba and as the baseline for
``benchmarks/bench_backends.py``.
"""

import os

_requested = os.environ.get("FRACCURV_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(
        "FRACCURV_BACKEND must be 'numba' or 'numpy', got %r" % _requested
    )

_njit = None
if _requested == "numba":
    try:
        from numba import njit as _njit
    except ImportError:
        _njit = None

ACTIVE_BACKEND = "numba" if _njit is not None else "numpy"


def maybe_jit(fn):
    """Compile ``fn`` with numba when the numba backend is active."""
    if _njit is None:
        return fn
    return _njit(cache=True, nogil=True)(fn)
