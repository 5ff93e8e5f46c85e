"""Hot numeric kernels.

Each kernel exists as a numba loop implementation (``*_numba``, ``None`` when
numba is disabled) and a vectorized numpy implementation (``*_numpy``). The
unsuffixed name dispatches according to ``modspec._backend.BACKEND``.
"""

from .._backend import BACKEND, HAVE_NUMBA
from .jacobi import jacobi_batch, jacobi_batch_numba, jacobi_batch_numpy

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "jacobi_batch",
    "jacobi_batch_numba",
    "jacobi_batch_numpy",
]

from . import bipartition, sweep  # noqa: E402
