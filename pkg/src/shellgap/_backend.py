"""Kernel backend selection.

Hot numeric kernels (Bessel evaluation, lattice sums) are written as plain
scalar/array functions and compiled with numba when available.  The pure
numpy/python path is kept as a first-class fallback and can be forced with::

    SHELLGAP_BACKEND=numpy   # never use numba
    SHELLGAP_BACKEND=numba   # require numba, fail loudly if missing
    SHELLGAP_BACKEND=auto    # default: numba if importable

``benchmarks/bench_backends.py`` compares the two lanes.
"""

import os

_requested = os.environ.get("SHELLGAP_BACKEND", "auto").strip().lower()
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"SHELLGAP_BACKEND={_requested!r} (expected auto, numba or numpy)")

USING_NUMBA = False
_njit = None
if _requested in ("auto", "numba"):
    try:
        from numba import njit as _njit  # type: ignore

        USING_NUMBA = True
    except ImportError:
        if _requested == "numba":
            raise

BACKEND = "numba" if USING_NUMBA else "numpy"


def jit_kernel(fn):
    """Compile ``fn`` with numba on the numba lane, return it unchanged otherwise."""
    if USING_NUMBA:
        return _njit(cache=True)(fn)
    return fn
