"""Backend selection for the hot kernels.

Set ``MODSPEC_NUMPY_ONLY=1`` before import to force the vectorized numpy
kernels even when numba is installed.
"""

import os

_FLAG = "MODSPEC_NUMPY_ONLY"


def _numba_requested():
    return os.environ.get(_FLAG, "").strip().lower() in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def njit(func):
    """Compile ``func`` with numba when enabled; return None otherwise."""
    if not HAVE_NUMBA:
        return None
    import numba

    return numba.njit(cache=True, nogil=True)(func)
