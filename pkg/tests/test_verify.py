import itertools

import numpy as np
import pytest

from modspec import (
    MultipartiteStructure,
    classify,
    eigendecompose,
    enumerate_labeled,
    is_connected,
    modularity_matrix,
    normalized_laplacian,
    normalized_modularity_matrix,
    pair_bound_witness,
    recover_partition,
)
from modspec.enumeration import Batch
from modspec.graph import GraphKind, WeightedGraph
from modspec.kernels import sweep as K
from modspec.verify import reduce_batch, sweep_labeled, sweep_stream


def _all_adjacency(n):
    return np.concatenate([b.adjacency for b in enumerate_labeled(n, connected_only=False).batches()])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sweep_kernel_matches_library(n):
    adj = _all_adjacency(n)
    vals, ints = K.sweep(adj)
    for row, a in enumerate(adj):
        g = WeightedGraph(a.astype(float), GraphKind.SIMPLE)
        conn = is_connected(g)
        assert ints[row, K.I_CONN] == int(conn)
        if not conn:
            continue
        v, iv = vals[row], ints[row]
        cert = classify(g)
        assert iv[K.I_PART] == int(cert.is_nsd)
        if cert.is_nsd:
            assert iv[K.I_A] == -1
            assert iv[K.I_K] == cert.structure.k
        else:
            assert tuple(iv[[K.I_A, K.I_B, K.I_C]]) == cert.triple.as_tuple()
            assert v[K.F_MINOR] == pytest.approx(cert.minor, rel=1e-12)
            assert v[K.F_WVAL] == pytest.approx(cert.witness_value, rel=1e-12)
        assert v[K.F_LMAX_M] == pytest.approx(cert.eigenvalues_m[0], abs=1e-12)
        assert v[K.F_LMAX_MD] == pytest.approx(cert.eigenvalues_md[0], abs=1e-12)
        lam = eigendecompose(normalized_laplacian(g)).eigenvalues
        assert v[K.F_LAM1_L] == pytest.approx(lam[-2], abs=1e-12)
        assert v[K.F_TRACE_M] == pytest.approx(np.trace(modularity_matrix(g).entries), abs=1e-12)
        md = eigendecompose(normalized_modularity_matrix(g)).eigenvalues
        assert v[K.F_LMIN_MD] == pytest.approx(md[-1], abs=1e-12)
        pairs = [(i, j) for i, j in itertools.combinations(range(n), 2) if not a[i, j]]
        if pairs:
            best = max(pair_bound_witness(g, i, j)[1] for i, j in pairs)
            assert v[K.F_P1_MAX] == pytest.approx(best, abs=1e-12)
        else:
            assert np.isnan(v[K.F_P1_MAX])


def test_sweep_counts_small():
    stats = sweep_labeled(5)
    assert [stats[n].connected for n in (2, 3, 4, 5)] == [1, 4, 38, 728]
    assert all(s.ok for s in stats.values())
    # connected complete multipartite labeled graphs number Bell(n) - 1
    assert [stats[n].multipartite for n in (2, 3, 4, 5)] == [1, 4, 14, 51]
    assert [stats[n].complete for n in (2, 3, 4, 5)] == [1, 1, 1, 1]


def test_reduce_batch_flags_discrepancy():
    adj = _all_adjacency(4)
    keys = np.arange(len(adj))
    vals, ints = K.sweep(adj)
    clean = reduce_batch(Batch(4, keys, adj), vals, ints)
    assert clean.discrepancies == 0
    row = int(np.flatnonzero((ints[:, K.I_CONN] == 1) & (ints[:, K.I_PART] == 0))[0])
    forged = vals.copy()
    forged[row, K.F_LMAX_M] = -1.0  # pretend an indefinite graph looks semidefinite
    bad = reduce_batch(Batch(4, keys, adj), forged, ints)
    assert bad.discrepancies == 1 and "nsd_m=True" in bad.examples[0][1]
    forged = vals.copy()
    forged[row, K.F_WVAL] *= 1 + 1e-6
    bad = reduce_batch(Batch(4, keys, adj), forged, ints)
    assert bad.discrepancies == 1 and bad.examples[0][1] == "certificate"


def test_parallel_sweep_matches_serial():
    serial = sweep_stream(enumerate_labeled(5), chunk=100)
    parallel = sweep_stream(enumerate_labeled(5), chunk=100, workers=2)
    assert serial[5].to_record() == parallel[5].to_record()


def test_partition_stats_agree_with_library():
    nsd = sum(isinstance(recover_partition(g), MultipartiteStructure) for g in enumerate_labeled(5))
    assert sweep_labeled(5, min_n=5)[5].multipartite == nsd
