"""Exhaustive confirmation of the four-way equivalence on streams of small graphs.

For each connected graph the sweep kernel evaluates four predicates:

* no induced 3-vertex subgraph with exactly one edge,
* greedy partition recovery yields a complete multipartite structure,
* ``lambda_max(M) <= tol``,
* ``lambda_max(M_D) <= tol``,

and, whenever a forbidden triple exists, the principal-minor and witness
certificates derived from it. A graph where the predicates disagree, or a
certificate fails its closed form, is a discrepancy.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .enumeration import Batch, GraphStream, adjacency_to_graph6, enumerate_labeled
from .kernels import sweep as K

log = logging.getLogger(__name__)

MINOR_REL_TOL = 1e-10
WITNESS_DOT_TOL = 1e-12
WITNESS_REL_TOL = 1e-10
MAX_REPORTED = 20


@dataclass
class SweepStats:
    """Reduced statistics over one vertex count (or a merged range)."""

    n: int
    graphs: int = 0
    connected: int = 0
    multipartite: int = 0
    complete: int = 0
    triple_free: int = 0
    nsd_m: int = 0
    nsd_md: int = 0
    discrepancies: int = 0
    examples: list = field(default_factory=list)  # (graph6, reason)
    certificates: int = 0
    max_minor_rel_err: float = 0.0
    min_minor: float = np.inf
    max_witness_dot: float = 0.0
    max_witness_rel_err: float = 0.0
    min_witness_value: float = np.inf
    max_scaled_residual: float = 0.0  # residual / (n max|entry|)
    max_gram: float = 0.0
    no_convergence: int = 0
    md_range: tuple = (np.inf, -np.inf)
    ld_range: tuple = (np.inf, -np.inf)
    max_trace_m: float = -np.inf
    max_lam1_indefinite: float = -np.inf  # must stay below 1
    max_lam1_dev_multipartite: float = 0.0  # |lambda_1 - 1| over CM graphs with k < n
    max_lam1_dev_complete: float = 0.0  # |lambda_1 - n/(n-1)| over K_n
    max_pair_objective: float = -np.inf
    max_pair_infeasibility: float = 0.0
    min_lmax_m_indefinite: float = np.inf
    min_lmax_md_indefinite: float = np.inf
    max_lmax_m_nsd: float = -np.inf
    max_lmax_md_nsd: float = -np.inf

    @property
    def indefinite(self) -> int:
        return self.connected - self.multipartite

    @property
    def ok(self) -> bool:
        return self.discrepancies == 0 and self.no_convergence == 0

    def merge(self, other: "SweepStats") -> "SweepStats":
        out = SweepStats(self.n)
        for name in ("graphs", "connected", "multipartite", "complete", "triple_free", "nsd_m",
                     "nsd_md", "discrepancies", "certificates", "no_convergence"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        for name in ("max_minor_rel_err", "max_witness_dot", "max_witness_rel_err",
                     "max_scaled_residual", "max_gram", "max_trace_m", "max_lam1_indefinite",
                     "max_lam1_dev_multipartite", "max_lam1_dev_complete", "max_pair_objective",
                     "max_pair_infeasibility", "max_lmax_m_nsd", "max_lmax_md_nsd"):
            setattr(out, name, max(getattr(self, name), getattr(other, name)))
        for name in ("min_minor", "min_witness_value", "min_lmax_m_indefinite", "min_lmax_md_indefinite"):
            setattr(out, name, min(getattr(self, name), getattr(other, name)))
        out.md_range = (min(self.md_range[0], other.md_range[0]), max(self.md_range[1], other.md_range[1]))
        out.ld_range = (min(self.ld_range[0], other.ld_range[0]), max(self.ld_range[1], other.ld_range[1]))
        out.examples = (self.examples + other.examples)[:MAX_REPORTED]
        return out

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "graphs": self.graphs,
            "connected": self.connected,
            "nsd": self.multipartite,
            "indefinite": self.indefinite,
            "complete": self.complete,
            "discrepancies": self.discrepancies,
            "no_convergence": self.no_convergence,
            "max_scaled_residual": self.max_scaled_residual,
            "max_gram_deviation": self.max_gram,
            "max_minor_rel_err": self.max_minor_rel_err,
            "max_witness_dot": self.max_witness_dot,
            "max_witness_rel_err": self.max_witness_rel_err,
            "examples": [list(e) for e in self.examples],
        }


def _tolerances(vals, n, tol_factor, entry_scaled):
    if entry_scaled:
        return tol_factor * n * vals[:, K.F_MAXABS_M], tol_factor * n * vals[:, K.F_MAXABS_MD]
    t = tol_factor * n
    return np.full(len(vals), t), np.full(len(vals), t)


def _maxz(x, default=-np.inf):
    return float(x.max()) if x.size else default


def _minz(x, default=np.inf):
    return float(x.min()) if x.size else default


def reduce_batch(batch: Batch, vals, ints, tol_factor=1e-9, entry_scaled=False) -> SweepStats:
    """Turn raw kernel output for one batch into :class:`SweepStats`."""
    n = batch.n
    st = SweepStats(n, graphs=int(batch.keys.size))
    conn = ints[:, K.I_CONN] == 1
    st.connected = int(conn.sum())
    if not conn.any():
        return st
    v = vals[conn]
    iv = ints[conn]
    adj = batch.adjacency[conn]
    tol_m, tol_md = _tolerances(v, n, tol_factor, entry_scaled)

    free = iv[:, K.I_A] < 0
    part = iv[:, K.I_PART] == 1
    nsd_m = v[:, K.F_LMAX_M] <= tol_m
    nsd_md = v[:, K.F_LMAX_MD] <= tol_md
    complete = part & (iv[:, K.I_K] == n)
    st.multipartite = int(part.sum())
    st.complete = int(complete.sum())
    st.triple_free = int(free.sum())
    st.nsd_m = int(nsd_m.sum())
    st.nsd_md = int(nsd_md.sum())

    has = ~free
    minor_err = np.abs(v[:, K.F_MINOR] - v[:, K.F_MINOR_CF]) / np.abs(v[:, K.F_MINOR_CF])
    wval_err = np.abs(v[:, K.F_WVAL] - v[:, K.F_WVAL_CF]) / np.abs(v[:, K.F_WVAL_CF])
    wdot = np.abs(v[:, K.F_WDOT])
    cert_bad = has & (
        ~(minor_err <= MINOR_REL_TOL)
        | ~(v[:, K.F_MINOR] > 0)
        | ~(wdot <= WITNESS_DOT_TOL)
        | ~(wval_err <= WITNESS_REL_TOL)
        | ~(v[:, K.F_WVAL] > 0)
    )
    disagree = ~((free == part) & (part == nsd_m) & (nsd_m == nsd_md))
    bad = disagree | cert_bad
    st.discrepancies = int(bad.sum())
    for idx in np.flatnonzero(bad)[:MAX_REPORTED]:
        reason = "certificate" if not disagree[idx] else (
            f"triple_free={bool(free[idx])} partition={bool(part[idx])} "
            f"nsd_m={bool(nsd_m[idx])} nsd_md={bool(nsd_md[idx])}"
        )
        st.examples.append((adjacency_to_graph6(adj[idx]), reason))

    st.certificates = int(has.sum())
    if has.any():
        st.max_minor_rel_err = float(minor_err[has].max())
        st.min_minor = float(v[has, K.F_MINOR].min())
        st.max_witness_dot = float(wdot[has].max())
        st.max_witness_rel_err = float(wval_err[has].max())
        st.min_witness_value = float(v[has, K.F_WVAL].min())

    scale = n * np.stack([v[:, K.F_MAXABS_M], v[:, K.F_MAXABS_MD], v[:, K.F_MAXABS_L]], axis=1)
    res = np.stack([v[:, K.F_RES_M], v[:, K.F_RES_MD], v[:, K.F_RES_L]], axis=1)
    st.max_scaled_residual = float((res / scale).max())
    st.max_gram = float(v[:, K.F_GRAM].max())
    st.no_convergence = int((iv[:, K.I_NOCONV] != 0).sum())
    st.md_range = (float(v[:, K.F_LMIN_MD].min()), float(v[:, K.F_LMAX_MD].max()))
    st.ld_range = (float(v[:, K.F_LMIN_L].min()), float(v[:, K.F_LMAX_L].max()))
    st.max_trace_m = float(v[:, K.F_TRACE_M].max())

    lam1 = v[:, K.F_LAM1_L]
    st.max_lam1_indefinite = _maxz(lam1[~part])
    cm_not_complete = part & ~complete
    st.max_lam1_dev_multipartite = _maxz(np.abs(lam1[cm_not_complete] - 1.0), 0.0)
    st.max_lam1_dev_complete = _maxz(np.abs(lam1[complete] - n / (n - 1)), 0.0)
    pairs = ~np.isnan(v[:, K.F_P1_MAX])
    st.max_pair_objective = _maxz(v[pairs, K.F_P1_MAX])
    st.max_pair_infeasibility = _maxz(v[pairs, K.F_P1_INFEAS], 0.0)
    st.min_lmax_m_indefinite = _minz(v[~part, K.F_LMAX_M])
    st.min_lmax_md_indefinite = _minz(v[~part, K.F_LMAX_MD])
    st.max_lmax_m_nsd = _maxz(v[part, K.F_LMAX_M])
    st.max_lmax_md_nsd = _maxz(v[part, K.F_LMAX_MD])
    return st


def _run_batch(args):
    batch, tol_factor, entry_scaled = args
    vals, ints = K.sweep(batch.adjacency)
    return reduce_batch(batch, vals, ints, tol_factor, entry_scaled)


def sweep_stream(stream: GraphStream, tol_factor=1e-9, entry_scaled=False, workers=1,
                 chunk=1 << 15) -> dict:
    """Sweep every graph of ``stream``; returns ``{n: SweepStats}`` in ascending n."""
    jobs = ((b, tol_factor, entry_scaled) for b in stream.batches(chunk))
    out: dict[int, SweepStats] = {}
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = pool.map(_run_batch, jobs)
            for st in results:
                out[st.n] = out[st.n].merge(st) if st.n in out else st
    else:
        for st in map(_run_batch, jobs):
            out[st.n] = out[st.n].merge(st) if st.n in out else st
    return dict(sorted(out.items()))


def sweep_labeled(max_n: int, min_n: int = 2, **kw) -> dict:
    """Sweep all connected labeled graphs with ``min_n <= n <= max_n``."""
    out = {}
    for n in range(min_n, max_n + 1):
        log.info("sweeping labeled graphs on %d vertices", n)
        out.update(sweep_stream(enumerate_labeled(n, connected_only=True), **kw))
    return out
