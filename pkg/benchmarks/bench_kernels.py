"""Time the numba kernels against their vectorized numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Each row reports the best of ``--repeat`` runs after one warm-up call (which
also triggers numba compilation) and checks that both backends agree.
"""

import argparse
import json
import time

import numpy as np

from modspec.enumeration import enumerate_labeled
from modspec.kernels import HAVE_NUMBA, bipartition, jacobi, sweep


def best_time(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def sym_batch(rng, b, n):
    a = rng.normal(size=(b, n, n))
    return np.triu(a) + np.swapaxes(np.triu(a, 1), 1, 2)


def cases(rng):
    a = sym_batch(rng, 2000, 8)
    yield ("jacobi batch 2000 x 8x8",
           lambda: jacobi.jacobi_batch_numba(a.copy(), jacobi.REL_TOL, jacobi.MAX_SWEEPS),
           lambda: jacobi.jacobi_batch_numpy(a.copy()),
           lambda x, y: float(np.abs(x[0] - y[0]).max()))
    big = sym_batch(rng, 20, 40)
    yield ("jacobi batch 20 x 40x40",
           lambda: jacobi.jacobi_batch_numba(big.copy(), jacobi.REL_TOL, jacobi.MAX_SWEEPS),
           lambda: jacobi.jacobi_batch_numpy(big.copy()),
           lambda x, y: float(np.abs(x[0] - y[0]).max()))
    adj = np.concatenate([b.adjacency for b in enumerate_labeled(6).batches()])
    yield (f"sweep {len(adj)} connected graphs, n=6",
           lambda: sweep.sweep_numba(adj),
           lambda: sweep.sweep_numpy(adj),
           lambda x, y: float(np.nanmax(np.abs(x[0] - y[0]))))
    n = 18
    w = np.triu(rng.random((n, n)), 1)
    w = (w + w.T) / (2 * np.triu(w, 1).sum())
    d = w.sum(axis=1)
    m = w - np.outer(d, d)
    yield (f"bipartition scan n={n}",
           lambda: bipartition.scan_numba(m, bipartition.TIE_TOL),
           lambda: bipartition.scan_numpy(m),
           lambda x, y: abs(x[1] - y[1]) + float(x[0] != y[0]))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="also write results to this file")
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        raise SystemExit("numba backend unavailable (unset MODSPEC_NUMPY_ONLY or install numba)")

    rng = np.random.default_rng(0)
    rows = []
    print(f"{'kernel':40s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s} {'max diff':>10s}")
    for name, fast, slow, diff in cases(rng):
        t_fast = best_time(fast, args.repeat)
        t_slow = best_time(slow, args.repeat)
        delta = diff(fast(), slow())
        rows.append({"kernel": name, "numba_s": t_fast, "numpy_s": t_slow, "max_diff": delta})
        print(f"{name:40s} {t_fast:10.4f} {t_slow:10.4f} {t_slow / t_fast:8.1f} {delta:10.1e}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
