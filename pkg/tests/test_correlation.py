import itertools

import numpy as np
import pytest

from modspec import (
    Representation,
    build_complete_multipartite,
    classify,
    degrees,
    optimal_representation,
    pair_bound_witness,
    placement_objective,
    symmetric_max_correlation,
)
from modspec.errors import EdgePresent, Infeasible

from conftest import complete, path, random_connected_simple, random_connected_weighted


def test_k3_objective():
    rep, lam1 = optimal_representation(complete(3))
    assert lam1 == pytest.approx(1.5, abs=1e-12)
    assert placement_objective(complete(3), rep) == pytest.approx(1.5, abs=1e-12)


def test_k2_representation():
    rep, lam1 = optimal_representation(complete(2))
    assert lam1 == pytest.approx(2.0, abs=1e-12)
    assert np.allclose(np.abs(rep.values), 1 / np.sqrt(2))
    assert rep.values[0] == pytest.approx(-rep.values[1])


@pytest.mark.parametrize("sizes", [(2, 2), (3, 2, 1), (1, 4), (2, 2, 2)])
def test_multipartite_lambda1_is_one(sizes):
    g = build_complete_multipartite(sizes)
    rep, lam1 = optimal_representation(g)
    assert lam1 == pytest.approx(1.0, abs=1e-12)
    assert placement_objective(g, rep) == pytest.approx(1.0, abs=1e-12)


def test_p4_below_one():
    _, lam1 = optimal_representation(path(4))
    assert lam1 < 1 - 1e-9


def test_constant_representation_infeasible():
    g = path(4)
    with pytest.raises(Infeasible):
        placement_objective(g, Representation(np.full(4, 0.3)))
    with pytest.raises(Infeasible):
        placement_objective(g, Representation(np.zeros(4)))


def test_pair_witness_examples(k23):
    g = build_complete_multipartite([2, 2])
    rep, bound = pair_bound_witness(g, 0, 1)
    assert bound == pytest.approx(1.0, abs=1e-12)
    assert optimal_representation(g)[1] == pytest.approx(bound, abs=1e-12)
    rep, bound = pair_bound_witness(path(4), 0, 2)
    assert bound <= 1 + 1e-10
    assert optimal_representation(path(4))[1] < bound
    with pytest.raises(EdgePresent):
        pair_bound_witness(path(4), 0, 1)


def test_equal_degree_pair():
    # C4 vertices 0 and 2 both have degree 2
    g = build_complete_multipartite([2, 2])
    rep, _ = pair_bound_witness(g, 0, 1)
    assert rep.values[0] == pytest.approx(1 / np.sqrt(4))
    assert rep.values[1] == pytest.approx(-1 / np.sqrt(4))


def test_pair_witness_feasible_on_random_graphs(rng):
    for _ in range(20):
        g = random_connected_weighted(rng, int(rng.integers(3, 10)), p=0.5)
        d = degrees(g).degrees
        for i, j in itertools.combinations(range(g.n), 2):
            if g.weights[i, j] == 0:
                rep, bound = pair_bound_witness(g, i, j)
                assert rep.is_feasible(d)
                assert bound <= 1 + 1e-10
                assert bound >= optimal_representation(g)[1] - 1e-9


@pytest.mark.parametrize("g, mu1", [(complete(4), -1 / 3), (build_complete_multipartite([2, 3]), 0.0)])
def test_symmetric_max_correlation_examples(g, mu1):
    value, _ = symmetric_max_correlation(g)
    assert value == pytest.approx(mu1, abs=1e-12)


def test_symmetric_max_correlation_sign_matches_classification(rng):
    assert symmetric_max_correlation(path(4))[0] > 0
    for _ in range(40):
        g = random_connected_simple(rng, int(rng.integers(3, 9)), p=0.6)
        mu1, rep = symmetric_max_correlation(g)
        assert (mu1 <= 1e-9 * g.n) == classify(g).is_nsd
        w = g.weights / g.total_weight
        assert float(rep.values @ w @ rep.values) == pytest.approx(mu1, abs=1e-8)
