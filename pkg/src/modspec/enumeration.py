"""Streams of small simple graphs: every labeled graph on n vertices, or a graph6 file."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .errors import GraphError, TooLarge
from .graph import GraphKind, WeightedGraph, encode_graph6, parse_graph6
from .kernels import sweep as _kernels

MAX_LABELED_N = 8
CHUNK = 1 << 16


class Source(enum.Enum):
    GENERATED = "generated"
    GRAPH6_FILE = "graph6-file"


def upper_pairs(n: int) -> np.ndarray:
    """(i, j) pairs in graph6 bit order; bit k of a labeled mask is pair k."""
    return np.array([(i, j) for j in range(1, n) for i in range(j)], dtype=np.int64).reshape(-1, 2)


def masks_to_adjacency(masks: np.ndarray, n: int) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.int64)
    adj = np.zeros((masks.size, n, n), dtype=np.uint8)
    for k, (i, j) in enumerate(upper_pairs(n)):
        bit = ((masks >> k) & 1).astype(np.uint8)
        adj[:, i, j] = bit
        adj[:, j, i] = bit
    return adj


def adjacency_to_graph6(adj: np.ndarray) -> str:
    return encode_graph6(WeightedGraph(adj.astype(float), GraphKind.SIMPLE))


@dataclass
class Batch:
    """Adjacency stack of graphs sharing a vertex count.

    ``keys`` are bitmasks for generated streams and 1-based line numbers for files.
    """

    n: int
    keys: np.ndarray
    adjacency: np.ndarray


class GraphStream:
    """Lazy, re-iterable stream of simple graphs."""

    def __init__(self, source: Source, connected_only: bool, batches: Callable[[int], Iterator[Batch]],
                 n: int | None = None):
        self.source = source
        self.connected_only = connected_only
        self.n = n
        self._batches = batches

    def batches(self, chunk: int = CHUNK) -> Iterator[Batch]:
        for batch in self._batches(chunk):
            if self.connected_only and batch.keys.size:
                keep = _kernels.connected_batch(batch.adjacency)
                batch = Batch(batch.n, batch.keys[keep], batch.adjacency[keep])
            if batch.keys.size:
                yield batch

    def __iter__(self) -> Iterator[WeightedGraph]:
        for batch in self.batches():
            for adj in batch.adjacency:
                yield WeightedGraph(adj.astype(float), GraphKind.SIMPLE)

    def count(self) -> int:
        return sum(b.keys.size for b in self.batches())


def enumerate_labeled(n: int, connected_only: bool = True) -> GraphStream:
    """All labeled simple graphs on ``n`` vertices in ascending bitmask order."""
    if n > MAX_LABELED_N:
        raise TooLarge(f"labeled enumeration is limited to n <= {MAX_LABELED_N}")
    if n < 2:
        raise GraphError(f"labeled enumeration needs n >= 2, got {n}")
    total = 1 << (n * (n - 1) // 2)

    def gen(chunk):
        for start in range(0, total, chunk):
            masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
            yield Batch(n, masks, masks_to_adjacency(masks, n))

    return GraphStream(Source.GENERATED, connected_only, gen, n=n)


def read_graph6_lines(path):
    """Yield ``(line_number, graph)``; blank lines and the optional header are skipped."""
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line == ">>graph6<<":
                continue
            yield lineno, parse_graph6(line, line=lineno)


def stream_graph6_file(path, connected_only: bool = False) -> GraphStream:
    # fail early on unreadable paths
    with open(path, "rb"):
        pass

    def gen(chunk):
        # consecutive runs of equal vertex count, so batches preserve file order
        run: list = []
        for lineno, g in read_graph6_lines(path):
            if run and (run[0][1].n != g.n or len(run) >= chunk):
                yield _batch_of(run[0][1].n, run)
                run = []
            run.append((lineno, g))
        if run:
            yield _batch_of(run[0][1].n, run)

    return GraphStream(Source.GRAPH6_FILE, connected_only, gen)


def _batch_of(n, items):
    keys = np.array([ln for ln, _ in items], dtype=np.int64)
    adj = np.stack([g.weights for _, g in items]).astype(np.uint8)
    return Batch(n, keys, adj)
