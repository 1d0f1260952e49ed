"""Switch between numba-compiled kernels and their plain Python bodies.

Set ``PDCENTER_DISABLE_NUMBA=1`` before import to run every kernel through
the interpreter; this is also the path taken when numba cannot be imported.
"""
import os

_DISABLED = os.environ.get("PDCENTER_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLED:
        raise ImportError
    import numba

    NUMBA_ENABLED = True
except ImportError:
    numba = None
    NUMBA_ENABLED = False


def njit(func):
    """Compile ``func`` with numba when available, else return it unchanged.

    The compiled dispatcher keeps the interpreted body on ``.py_func``; the
    fallback function gets the same attribute so callers can always reach it.
    """
    if NUMBA_ENABLED:
        return numba.njit(cache=True, nogil=True)(func)
    func.py_func = func
    return func
