"""Cyclic Jacobi eigensolver for stacks of dense symmetric matrices.

Both kernels take ``a`` of shape ``(B, n, n)`` and return
``(eigenvalues (B, n), eigenvectors (B, n, n), sweeps (B,))``. Eigenvalues
come back unsorted (the diagonal after convergence); column ``i`` of the
eigenvector block pairs with eigenvalue ``i``. ``sweeps[b] == -1`` means the
off-diagonal norm did not drop below ``rel_tol * ||a_b||_F`` within
``max_sweeps`` row-cyclic sweeps.
"""

import math

import numpy as np

from .._backend import njit

REL_TOL = 1e-12
MAX_SWEEPS = 100


def _jacobi_one(a, v, rel_tol, max_sweeps):
    # in place: a is diagonalized, v accumulates rotations (must start as I)
    n = a.shape[0]
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    target = rel_tol * math.sqrt(fro)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if math.sqrt(off) <= target:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + math.hypot(theta, 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    if k == p or k == q:
                        continue
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                    a[p, k] = a[k, p]
                    a[q, k] = a[k, q]
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1


def _jacobi_batch_loops(a, rel_tol, max_sweeps):
    b, n, _ = a.shape
    work = a.copy()
    vecs = np.zeros((b, n, n))
    vals = np.zeros((b, n))
    sweeps = np.zeros(b, dtype=np.int64)
    for m in range(b):
        for i in range(n):
            vecs[m, i, i] = 1.0
        sweeps[m] = _jacobi_one_impl(work[m], vecs[m], rel_tol, max_sweeps)
        for i in range(n):
            vals[m, i] = work[m, i, i]
    return vals, vecs, sweeps


_jacobi_one_numba = njit(_jacobi_one)
_jacobi_one_impl = _jacobi_one_numba if _jacobi_one_numba is not None else _jacobi_one
jacobi_one_numba = _jacobi_one_numba
jacobi_batch_numba = njit(_jacobi_batch_loops)


def jacobi_batch_numpy(a, rel_tol=REL_TOL, max_sweeps=MAX_SWEEPS):
    """Same rotation sequence as the loop kernel, vectorized across the batch."""
    a = np.array(a, dtype=float, copy=True)
    b, n, _ = a.shape
    v = np.broadcast_to(np.eye(n), (b, n, n)).copy()
    sweeps = np.full(b, -1, dtype=np.int64)
    offmask = ~np.eye(n, dtype=bool)
    target = rel_tol * np.sqrt(np.einsum("bij,bij->b", a, a))
    active = np.ones(b, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum(a[:, offmask] ** 2, axis=1))
        done = active & (off <= target)
        sweeps[done] = sweep
        active &= ~done
        if not active.any() or sweep == max_sweeps:
            break
        idx = np.flatnonzero(active)
        sub = a[idx]
        vs = v[idx]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = sub[:, p, q].copy()
                rot = apq != 0.0
                if not rot.any():
                    continue
                safe = np.where(rot, apq, 1.0)
                # tiny apq sends theta to inf and t to 0, the limiting rotation
                with np.errstate(over="ignore"):
                    theta = (sub[:, q, q] - sub[:, p, p]) / (2.0 * safe)
                    t = 1.0 / (np.abs(theta) + np.hypot(theta, 1.0))
                t = np.where(theta < 0.0, -t, t)
                t = np.where(rot, t, 0.0)
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                app = sub[:, p, p].copy()
                aqq = sub[:, q, q].copy()
                colp = sub[:, :, p].copy()
                colq = sub[:, :, q].copy()
                newp = c[:, None] * colp - s[:, None] * colq
                newq = s[:, None] * colp + c[:, None] * colq
                sub[:, :, p] = newp
                sub[:, :, q] = newq
                sub[:, p, :] = newp
                sub[:, q, :] = newq
                sub[:, p, p] = app - t * apq
                sub[:, q, q] = aqq + t * apq
                sub[:, p, q] = np.where(rot, 0.0, apq)
                sub[:, q, p] = sub[:, p, q]
                vp = vs[:, :, p].copy()
                vq = vs[:, :, q].copy()
                vs[:, :, p] = c[:, None] * vp - s[:, None] * vq
                vs[:, :, q] = s[:, None] * vp + c[:, None] * vq
        a[idx] = sub
        v[idx] = vs
    vals = np.diagonal(a, axis1=1, axis2=2).copy()
    return vals, v, sweeps


def _jacobi_batch_numba_wrapper(a, rel_tol=REL_TOL, max_sweeps=MAX_SWEEPS):
    return jacobi_batch_numba(np.ascontiguousarray(a, dtype=np.float64), rel_tol, max_sweeps)


jacobi_batch = _jacobi_batch_numba_wrapper if jacobi_batch_numba is not None else jacobi_batch_numpy
