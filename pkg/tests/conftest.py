import itertools

import numpy as np
import pytest

from modspec import build_complete_multipartite, from_edge_list, is_connected
from modspec.graph import GraphKind, WeightedGraph


def edges(n, pairs):
    return from_edge_list(n, [(i, j, 1) for i, j in pairs])


def path(n):
    return edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return edges(n, itertools.combinations(range(n), 2))


def two_triangles():
    return edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])


def random_connected_simple(rng, n, p=0.4):
    while True:
        upper = np.triu(rng.random((n, n)) < p, 1)
        a = (upper | upper.T).astype(float)
        g = WeightedGraph(a, GraphKind.SIMPLE)
        if is_connected(g):
            return g


def random_connected_weighted(rng, n, p=0.5):
    while True:
        mask = np.triu(rng.random((n, n)) < p, 1)
        w = np.where(mask, rng.uniform(0.1, 3.0, (n, n)), 0.0)
        w = w + w.T
        g = WeightedGraph(w, GraphKind.WEIGHTED)
        if is_connected(g):
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


@pytest.fixture
def k23():
    return build_complete_multipartite([2, 3])


# acceptance summary: test_acceptance records one line per criterion here
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
