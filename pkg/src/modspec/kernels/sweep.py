"""Per-graph verification kernel for exhaustive sweeps over small simple graphs.

Input is a stack of 0/1 adjacency matrices ``adj`` of shape ``(B, n, n)``.
Output is ``(vals, ints)``:

* ``vals`` (float64, ``(B, NF)``) indexed by the ``F_*`` constants,
* ``ints`` (int64, ``(B, NI)``) indexed by the ``I_*`` constants.

Rows for disconnected graphs only carry ``I_CONN = 0``; everything else is
NaN / -1. Triples follow the library convention: lexicographically first
sorted triple with exactly one induced edge, reordered so the edge is (a, b).
"""

import math

import numpy as np

from .._backend import njit
from .jacobi import MAX_SWEEPS, REL_TOL, _jacobi_one_impl, jacobi_batch_numpy

(
    F_LMAX_M,
    F_LMAX_MD,
    F_LMIN_MD,
    F_LAM1_L,
    F_LMIN_L,
    F_LMAX_L,
    F_MAXABS_M,
    F_MAXABS_MD,
    F_MAXABS_L,
    F_RES_M,
    F_RES_MD,
    F_RES_L,
    F_GRAM,
    F_TRACE_M,
    F_MINOR,
    F_MINOR_CF,
    F_WDOT,
    F_WVAL,
    F_WVAL_CF,
    F_P1_MAX,
    F_P1_INFEAS,
) = range(21)
NF = 21

I_CONN, I_A, I_B, I_C, I_PART, I_K, I_NOCONV = range(7)
NI = 7


# ----------------------------------------------------------------------
# numba loops
# ----------------------------------------------------------------------


def _connected(adj):
    n = adj.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    seen[0] = True
    stack[0] = 0
    top = 1
    count = 1
    while top > 0:
        top -= 1
        v = stack[top]
        for u in range(n):
            if adj[v, u] and not seen[u]:
                seen[u] = True
                stack[top] = u
                top += 1
                count += 1
    return count == n


def _decompose_stats(a, work, v):
    # returns (lmax, lmin, second smallest, residual, gram, converged)
    n = a.shape[0]
    for i in range(n):
        for j in range(n):
            work[i, j] = a[i, j]
            v[i, j] = 1.0 if i == j else 0.0
    sweeps = _jacobi_one_impl(work, v, REL_TOL, MAX_SWEEPS)
    lmax = -np.inf
    lmin = np.inf
    for i in range(n):
        lam = work[i, i]
        if lam > lmax:
            lmax = lam
        if lam < lmin:
            lmin = lam
    second = np.inf
    found_min = False
    for i in range(n):
        lam = work[i, i]
        if lam == lmin and not found_min:
            found_min = True
            continue
        if lam < second:
            second = lam
    res = 0.0
    for i in range(n):
        lam = work[i, i]
        acc = 0.0
        for r in range(n):
            s = -lam * v[r, i]
            for c in range(n):
                s += a[r, c] * v[c, i]
            acc += s * s
        acc = math.sqrt(acc)
        if acc > res:
            res = acc
    gram = 0.0
    for i in range(n):
        for j in range(n):
            s = 0.0
            for r in range(n):
                s += v[r, i] * v[r, j]
            if i == j:
                s -= 1.0
            if abs(s) > gram:
                gram = abs(s)
    return lmax, lmin, second, res, gram, sweeps >= 0


def _max_abs(a):
    n = a.shape[0]
    best = 0.0
    for i in range(n):
        for j in range(n):
            if abs(a[i, j]) > best:
                best = abs(a[i, j])
    return best


def _sweep_loops(adj):
    bsz, n, _ = adj.shape
    vals = np.full((bsz, NF), np.nan)
    ints = np.full((bsz, NI), -1, dtype=np.int64)
    w = np.zeros((n, n))
    m = np.zeros((n, n))
    md = np.zeros((n, n))
    lap = np.zeros((n, n))
    work = np.zeros((n, n))
    vec = np.zeros((n, n))
    d = np.zeros(n)
    sd = np.zeros(n)
    label = np.zeros(n, dtype=np.int64)
    chosen = np.zeros(n, dtype=np.bool_)
    r = np.zeros(n)
    for g in range(bsz):
        a = adj[g]
        if not _connected(a):
            ints[g, I_CONN] = 0
            continue
        ints[g, I_CONN] = 1
        two_e = 0.0
        for i in range(n):
            d[i] = 0.0
            for j in range(n):
                w[i, j] = 1.0 if a[i, j] else 0.0
                d[i] += w[i, j]
            two_e += d[i]
            sd[i] = math.sqrt(d[i])
        for i in range(n):
            for j in range(n):
                m[i, j] = w[i, j] - d[i] * d[j] / two_e
                md[i, j] = m[i, j] / (sd[i] * sd[j])
                lap[i, j] = (1.0 if i == j else 0.0) - w[i, j] / (sd[i] * sd[j])
        # exact symmetry, as the library builders guarantee
        for i in range(n):
            for j in range(i + 1, n):
                m[j, i] = m[i, j]
                md[j, i] = md[i, j]
                lap[j, i] = lap[i, j]
        tr = 0.0
        for i in range(n):
            tr += m[i, i]
        vals[g, F_TRACE_M] = tr

        # forbidden triple
        ta = -1
        tb = -1
        tc = -1
        for x in range(n):
            if ta >= 0:
                break
            for y in range(x + 1, n):
                if ta >= 0:
                    break
                for z in range(y + 1, n):
                    exy = a[x, y] != 0
                    exz = a[x, z] != 0
                    eyz = a[y, z] != 0
                    if int(exy) + int(exz) + int(eyz) == 1:
                        if exy:
                            ta, tb, tc = x, y, z
                        elif exz:
                            ta, tb, tc = x, z, y
                        else:
                            ta, tb, tc = y, z, x
                        break
        ints[g, I_A] = ta
        ints[g, I_B] = tb
        ints[g, I_C] = tc

        # greedy maximal independent sets, then the full multipartite check
        for i in range(n):
            label[i] = -1
        k = 0
        placed = 0
        while placed < n:
            for i in range(n):
                chosen[i] = False
            for v in range(n):
                if label[v] >= 0:
                    continue
                ok = True
                for u in range(n):
                    if chosen[u] and a[v, u]:
                        ok = False
                        break
                if ok:
                    chosen[v] = True
                    label[v] = k
                    placed += 1
            k += 1
        part = True
        for i in range(n):
            for j in range(i + 1, n):
                if (a[i, j] != 0) != (label[i] != label[j]):
                    part = False
        ints[g, I_PART] = 1 if part else 0
        ints[g, I_K] = k

        # spectra
        noconv = 0
        lmax, lmin, _, res_m, gram_m, ok1 = _decompose_stats(m, work, vec)
        vals[g, F_LMAX_M] = lmax
        vals[g, F_RES_M] = res_m
        lmax, lmin, _, res_md, gram_md, ok2 = _decompose_stats(md, work, vec)
        vals[g, F_LMAX_MD] = lmax
        vals[g, F_LMIN_MD] = lmin
        vals[g, F_RES_MD] = res_md
        lmax, lmin, second, res_l, gram_l, ok3 = _decompose_stats(lap, work, vec)
        vals[g, F_LMAX_L] = lmax
        vals[g, F_LMIN_L] = lmin
        vals[g, F_LAM1_L] = second
        vals[g, F_RES_L] = res_l
        vals[g, F_GRAM] = max(gram_m, max(gram_md, gram_l))
        if not (ok1 and ok2 and ok3):
            noconv = 1
        ints[g, I_NOCONV] = noconv
        vals[g, F_MAXABS_M] = _max_abs(m)
        vals[g, F_MAXABS_MD] = _max_abs(md)
        vals[g, F_MAXABS_L] = _max_abs(lap)

        # certificates from the triple
        if ta >= 0:
            i0, i1, i2 = ta, tb, tc
            det = (
                m[i0, i0] * (m[i1, i1] * m[i2, i2] - m[i1, i2] * m[i2, i1])
                - m[i0, i1] * (m[i1, i0] * m[i2, i2] - m[i1, i2] * m[i2, i0])
                + m[i0, i2] * (m[i1, i0] * m[i2, i1] - m[i1, i1] * m[i2, i0])
            )
            vals[g, F_MINOR] = det
            vals[g, F_MINOR_CF] = d[tc] * d[tc] / two_e
            xa = 1.0
            xb = 1.0
            xc = -(sd[ta] + sd[tb]) / sd[tc]
            vals[g, F_WDOT] = xa * sd[ta] + xb * sd[tb] + xc * sd[tc]
            q = (
                xa * xa * md[ta, ta]
                + xb * xb * md[tb, tb]
                + xc * xc * md[tc, tc]
                + 2.0 * xa * xb * md[ta, tb]
                + 2.0 * xa * xc * md[ta, tc]
                + 2.0 * xb * xc * md[tb, tc]
            )
            vals[g, F_WVAL] = q
            vals[g, F_WVAL_CF] = 2.0 / (sd[ta] * sd[tb])

        # pair representations on every non-adjacent pair
        p1max = -np.inf
        p1inf = 0.0
        any_pair = False
        for i in range(n):
            for j in range(i + 1, n):
                if a[i, j]:
                    continue
                any_pair = True
                s = math.sqrt(d[j] * d[j] * d[i] + d[i] * d[i] * d[j])
                for t in range(n):
                    r[t] = 0.0
                r[i] = d[j] / s
                r[j] = -d[i] / s
                obj = 0.0
                mean = 0.0
                var = 0.0
                for p in range(n):
                    mean += d[p] * r[p]
                    var += d[p] * r[p] * r[p]
                    for qq in range(p + 1, n):
                        diff = r[p] - r[qq]
                        obj += w[p, qq] * diff * diff
                if obj > p1max:
                    p1max = obj
                inf = max(abs(mean), abs(var - 1.0))
                if inf > p1inf:
                    p1inf = inf
        if any_pair:
            vals[g, F_P1_MAX] = p1max
            vals[g, F_P1_INFEAS] = p1inf
    return vals, ints


_connected_numba = njit(_connected)
_decompose_stats_numba = njit(_decompose_stats)
_max_abs_numba = njit(_max_abs)
_connected = _connected_numba if _connected_numba is not None else _connected
_decompose_stats = _decompose_stats_numba if _decompose_stats_numba is not None else _decompose_stats
_max_abs = _max_abs_numba if _max_abs_numba is not None else _max_abs
_sweep_numba_compiled = njit(_sweep_loops)


def _connected_batch_loops(adj):
    out = np.zeros(adj.shape[0], dtype=np.bool_)
    for g in range(adj.shape[0]):
        out[g] = _connected(adj[g])
    return out


connected_batch_numba = njit(_connected_batch_loops)


def _sweep_numba_entry(adj):
    return _sweep_numba_compiled(np.ascontiguousarray(adj, dtype=np.uint8))


sweep_numba = _sweep_numba_entry if _sweep_numba_compiled is not None else None


# ----------------------------------------------------------------------
# vectorized numpy
# ----------------------------------------------------------------------


def connected_batch_numpy(adj):
    b, n, _ = adj.shape
    reach = adj.astype(bool) | np.eye(n, dtype=bool)
    steps = 1
    while steps < n:
        reach = np.matmul(reach.astype(np.int32), reach.astype(np.int32)) > 0
        steps *= 2
    return reach[:, 0, :].all(axis=1)


def _triples(n):
    return np.array([(x, y, z) for x in range(n) for y in range(x + 1, n) for z in range(y + 1, n)],
                    dtype=np.int64).reshape(-1, 3)


def _decompose_stats_numpy(a):
    vals, vecs, sweeps = jacobi_batch_numpy(a)
    srt = np.sort(vals, axis=1)
    res = np.linalg.norm(np.matmul(a, vecs) - vecs * vals[:, None, :], axis=1).max(axis=1)
    eye = np.eye(a.shape[1])
    gram = np.abs(np.matmul(vecs.transpose(0, 2, 1), vecs) - eye).max(axis=(1, 2))
    return srt[:, -1], srt[:, 0], srt[:, 1], res, gram, sweeps >= 0


def sweep_numpy(adj):
    adj = np.asarray(adj, dtype=np.uint8)
    bsz, n, _ = adj.shape
    vals = np.full((bsz, NF), np.nan)
    ints = np.full((bsz, NI), -1, dtype=np.int64)
    conn = connected_batch_numpy(adj)
    ints[:, I_CONN] = conn
    idx = np.flatnonzero(conn)
    if idx.size == 0:
        return vals, ints
    a = adj[idx].astype(bool)
    w = a.astype(float)
    cnt = idx.size
    rows = np.arange(cnt)
    d = w.sum(axis=2)
    two_e = d.sum(axis=1)
    sd = np.sqrt(d)
    m = w - d[:, :, None] * d[:, None, :] / two_e[:, None, None]
    outer_sd = sd[:, :, None] * sd[:, None, :]
    md = m / outer_sd
    lap = np.eye(n)[None] - w / outer_sd
    iu = np.triu_indices(n, 1)
    for mat in (m, md, lap):
        mat[:, iu[1], iu[0]] = mat[:, iu[0], iu[1]]
    out = np.full((cnt, NF), np.nan)
    iout = np.full((cnt, NI), -1, dtype=np.int64)
    iout[:, I_CONN] = 1
    out[:, F_TRACE_M] = np.einsum("bii->b", m)

    # forbidden triple
    tri = _triples(n)
    if tri.size:
        x, y, z = tri[:, 0], tri[:, 1], tri[:, 2]
        exy, exz, eyz = a[:, x, y], a[:, x, z], a[:, y, z]
        single = (exy.astype(int) + exz + eyz) == 1
        has = single.any(axis=1)
        first = np.argmax(single, axis=1)
        tx, ty, tz = x[first], y[first], z[first]
        fxy = exy[rows, first]
        fxz = exz[rows, first]
        ta = np.where(fxy, tx, np.where(fxz, tx, ty))
        tb = np.where(fxy, ty, np.where(fxz, tz, tz))
        tc = np.where(fxy, tz, np.where(fxz, ty, tx))
        iout[:, I_A] = np.where(has, ta, -1)
        iout[:, I_B] = np.where(has, tb, -1)
        iout[:, I_C] = np.where(has, tc, -1)
    else:
        has = np.zeros(cnt, dtype=bool)

    # greedy classes
    label = np.full((cnt, n), -1, dtype=np.int64)
    k = np.zeros(cnt, dtype=np.int64)
    for cls in range(n):
        chosen = np.zeros((cnt, n), dtype=bool)
        for v in range(n):
            free = label[:, v] < 0
            blocked = (a[:, v, :] & chosen).any(axis=1)
            take = free & ~blocked
            chosen[:, v] = take
            label[take, v] = cls
        k += chosen.any(axis=1)
    cross = label[:, :, None] != label[:, None, :]
    offd = ~np.eye(n, dtype=bool)
    iout[:, I_PART] = ((a == cross) | ~offd).all(axis=(1, 2))
    iout[:, I_K] = k

    # spectra
    lmax, _, _, res_m, gram_m, ok1 = _decompose_stats_numpy(m)
    out[:, F_LMAX_M] = lmax
    out[:, F_RES_M] = res_m
    lmax, lmin, _, res_md, gram_md, ok2 = _decompose_stats_numpy(md)
    out[:, F_LMAX_MD] = lmax
    out[:, F_LMIN_MD] = lmin
    out[:, F_RES_MD] = res_md
    lmax, lmin, second, res_l, gram_l, ok3 = _decompose_stats_numpy(lap)
    out[:, F_LMAX_L] = lmax
    out[:, F_LMIN_L] = lmin
    out[:, F_LAM1_L] = second
    out[:, F_RES_L] = res_l
    out[:, F_GRAM] = np.maximum(gram_m, np.maximum(gram_md, gram_l))
    iout[:, I_NOCONV] = ~(ok1 & ok2 & ok3)
    out[:, F_MAXABS_M] = np.abs(m).max(axis=(1, 2))
    out[:, F_MAXABS_MD] = np.abs(md).max(axis=(1, 2))
    out[:, F_MAXABS_L] = np.abs(lap).max(axis=(1, 2))

    # certificates
    hi = np.flatnonzero(has)
    if hi.size:
        ta, tb, tc = iout[hi, I_A], iout[hi, I_B], iout[hi, I_C]
        sel = np.stack([ta, tb, tc], axis=1)
        sub = m[hi[:, None, None], sel[:, :, None], sel[:, None, :]]
        out[hi, F_MINOR] = (
            sub[:, 0, 0] * (sub[:, 1, 1] * sub[:, 2, 2] - sub[:, 1, 2] * sub[:, 2, 1])
            - sub[:, 0, 1] * (sub[:, 1, 0] * sub[:, 2, 2] - sub[:, 1, 2] * sub[:, 2, 0])
            + sub[:, 0, 2] * (sub[:, 1, 0] * sub[:, 2, 1] - sub[:, 1, 1] * sub[:, 2, 0])
        )
        out[hi, F_MINOR_CF] = d[hi, tc] ** 2 / two_e[hi]
        sa, sb, sc = sd[hi, ta], sd[hi, tb], sd[hi, tc]
        xc = -(sa + sb) / sc
        out[hi, F_WDOT] = sa + sb + xc * sc
        mdh = md[hi]
        r3 = np.arange(hi.size)
        out[hi, F_WVAL] = (
            mdh[r3, ta, ta]
            + mdh[r3, tb, tb]
            + xc * xc * mdh[r3, tc, tc]
            + 2.0 * mdh[r3, ta, tb]
            + 2.0 * xc * mdh[r3, ta, tc]
            + 2.0 * xc * mdh[r3, tb, tc]
        )
        out[hi, F_WVAL_CF] = 2.0 / (sa * sb)

    # pair representations
    p1max = np.full(cnt, -np.inf)
    p1inf = np.zeros(cnt)
    anyp = np.zeros(cnt, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            act = ~a[:, i, j]
            if not act.any():
                continue
            anyp |= act
            di, dj = d[:, i], d[:, j]
            s = np.sqrt(dj * dj * di + di * di * dj)
            r = np.zeros((cnt, n))
            r[:, i] = dj / s
            r[:, j] = -di / s
            diff = r[:, :, None] - r[:, None, :]
            obj = 0.5 * np.einsum("bpq,bpq->b", w, diff * diff)
            mean = np.einsum("bp,bp->b", d, r)
            var = np.einsum("bp,bp->b", d, r * r)
            inf = np.maximum(np.abs(mean), np.abs(var - 1.0))
            p1max = np.where(act, np.maximum(p1max, obj), p1max)
            p1inf = np.where(act, np.maximum(p1inf, inf), p1inf)
    out[:, F_P1_MAX] = np.where(anyp, p1max, np.nan)
    out[:, F_P1_INFEAS] = np.where(anyp, p1inf, np.nan)

    vals[idx] = out
    ints[idx] = iout
    return vals, ints


sweep = sweep_numba if sweep_numba is not None else sweep_numpy
connected_batch = (
    (lambda adj: connected_batch_numba(np.ascontiguousarray(adj, dtype=np.uint8)))
    if connected_batch_numba is not None
    else connected_batch_numpy
)
