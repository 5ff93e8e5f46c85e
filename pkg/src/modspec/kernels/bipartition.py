"""Exhaustive 2-way modularity scan over bitmask-encoded subsets.

For a modularity matrix ``m`` at total weight one, ``Q(U) = 2 * 1_U^T m 1_U``.
Masks enumerate subsets containing vertex 0: ``mask = 1 | (r << 1)`` for
``r`` in ``[0, 2^(n-1) - 1)``, excluding the full vertex set.
"""

import numpy as np

from .._backend import njit

TIE_TOL = 1e-12


def _scan_loops(m, tie_tol):
    n = m.shape[0]
    count = (1 << (n - 1)) - 1
    best = -np.inf
    for r in range(count):
        mask = 1 | (r << 1)
        q = 0.0
        for i in range(n):
            if (mask >> i) & 1:
                for j in range(n):
                    if (mask >> j) & 1:
                        q += m[i, j]
        q *= 2.0
        if q > best:
            best = q
    # second pass: first mask within tie_tol of the maximum
    for r in range(count):
        mask = 1 | (r << 1)
        q = 0.0
        for i in range(n):
            if (mask >> i) & 1:
                for j in range(n):
                    if (mask >> j) & 1:
                        q += m[i, j]
        q *= 2.0
        if q >= best - tie_tol:
            return mask, q
    return 0, best


scan_numba = njit(_scan_loops)


def _q_values(m, masks):
    n = m.shape[0]
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(float)
    return 2.0 * np.einsum("bi,ij,bj->b", bits, m, bits)


def scan_numpy(m, tie_tol=TIE_TOL, chunk=1 << 16):
    n = m.shape[0]
    count = (1 << (n - 1)) - 1
    best = -np.inf
    for start in range(0, count, chunk):
        r = np.arange(start, min(count, start + chunk), dtype=np.int64)
        best = max(best, float(_q_values(m, 1 | (r << 1)).max()))
    for start in range(0, count, chunk):
        r = np.arange(start, min(count, start + chunk), dtype=np.int64)
        masks = 1 | (r << 1)
        q = _q_values(m, masks)
        hit = np.flatnonzero(q >= best - tie_tol)
        if hit.size:
            return int(masks[hit[0]]), float(q[hit[0]])
    return 0, best


def scan(m, tie_tol=TIE_TOL):
    m = np.ascontiguousarray(m, dtype=np.float64)
    if scan_numba is not None:
        mask, q = scan_numba(m, tie_tol)
        return int(mask), float(q)
    return scan_numpy(m, tie_tol)
