"""Graph representation, degrees and ingestion (edge lists, graph6)."""

from __future__ import annotations

import enum
import io
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadGraph6,
    BadIndex,
    BadWeight,
    DuplicateEdge,
    EdgeListParseError,
    EmptyGraph,
    GraphError,
    LoopRejected,
)


class GraphKind(enum.Enum):
    SIMPLE = "simple"
    WEIGHTED = "weighted"


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected graph on vertices ``0..n-1`` stored as a dense weight matrix.

    ``weights`` is symmetric, nonnegative, with zero diagonal. Simple graphs
    carry 0/1 entries and ``kind == GraphKind.SIMPLE``. The array is made
    read-only on construction.
    """

    weights: np.ndarray
    kind: GraphKind = GraphKind.SIMPLE

    def __post_init__(self):
        w = np.array(self.weights, dtype=float, copy=True)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise GraphError(f"weight matrix must be square and nonempty, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise BadWeight("weights must be finite")
        if np.any(w < 0):
            raise BadWeight("weights must be nonnegative")
        if np.any(np.diag(w) != 0):
            raise LoopRejected("diagonal weights must be zero")
        if not np.array_equal(w, w.T):
            raise GraphError("weight matrix must be exactly symmetric")
        if self.kind is GraphKind.SIMPLE and not np.all((w == 0) | (w == 1)):
            raise BadWeight("simple graphs take 0/1 weights only")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_matrix(cls, weights, kind=None) -> "WeightedGraph":
        """Wrap a matrix, inferring the kind from its entries when not given."""
        w = np.asarray(weights, dtype=float)
        if kind is None:
            kind = GraphKind.SIMPLE if np.all((w == 0) | (w == 1)) else GraphKind.WEIGHTED
        return cls(w, kind)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def is_simple(self) -> bool:
        return self.kind is GraphKind.SIMPLE

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def edges(self):
        """Yield ``(i, j, w)`` for ``i < j`` with positive weight."""
        iu, ju = np.nonzero(np.triu(self.weights, 1))
        for i, j in zip(iu.tolist(), ju.tolist()):
            yield i, j, float(self.weights[i, j])

    def adjacent(self, i: int, j: int) -> bool:
        return self.weights[i, j] > 0

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.kind is other.kind and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash((self.kind, self.weights.tobytes()))

    def __repr__(self):
        m = int(np.count_nonzero(self.weights)) // 2
        return f"WeightedGraph(n={self.n}, edges={m}, kind={self.kind.value})"


@dataclass(frozen=True, eq=False)
class DegreeData:
    degrees: np.ndarray
    total: float
    sqrt_degrees: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.degrees)


def from_edge_list(n: int, edges: Iterable[Sequence]) -> WeightedGraph:
    """Build a graph from ``(i, j)`` or ``(i, j, w)`` tuples.

    >>> from_edge_list(2, [(0, 1, 1)]).weights.tolist()
    [[0.0, 1.0], [1.0, 0.0]]
    """
    if n < 1:
        raise BadIndex(f"vertex count must be positive, got {n}")
    w = np.zeros((n, n))
    seen = set()
    all_unit = True
    for edge in edges:
        if len(edge) == 2:
            i, j = edge
            weight = 1.0
        elif len(edge) == 3:
            i, j, weight = edge
            weight = float(weight)
        else:
            raise GraphError(f"edge must be (i, j) or (i, j, w), got {edge!r}")
        i, j = int(i), int(j)
        if not (0 <= i < n and 0 <= j < n):
            raise BadIndex(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise LoopRejected(f"self-loop at vertex {i}")
        if not np.isfinite(weight) or weight <= 0:
            raise BadWeight(f"edge ({i}, {j}) has non-positive weight {weight}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdge(f"duplicate edge {key}")
        seen.add(key)
        w[i, j] = w[j, i] = weight
        all_unit = all_unit and weight == 1.0
    return WeightedGraph(w, GraphKind.SIMPLE if all_unit else GraphKind.WEIGHTED)


def parse_edge_list(text: str) -> WeightedGraph:
    """Parse the ``i j [w]`` line format. The vertex count is ``1 + max index``."""
    edges = []
    n = 0
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise EdgeListParseError(f"expected 'i j [w]', got {raw.strip()!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
            weight = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise EdgeListParseError(f"non-numeric field in {raw.strip()!r}", lineno) from None
        if i < 0 or j < 0:
            raise EdgeListParseError(f"negative vertex index in {raw.strip()!r}", lineno)
        edges.append((i, j, weight, lineno))
        n = max(n, i + 1, j + 1)
    if n == 0:
        raise EdgeListParseError("edge list contains no edges")
    try:
        return from_edge_list(n, [e[:3] for e in edges])
    except GraphError as exc:
        # re-run edge by edge to recover the offending line number
        probe = []
        for e in edges:
            probe.append(e[:3])
            try:
                from_edge_list(n, probe)
            except GraphError:
                raise EdgeListParseError(str(exc), e[3]) from exc
        raise


def degrees(g: WeightedGraph) -> DegreeData:
    d = g.weights.sum(axis=1)
    d.setflags(write=False)
    s = np.sqrt(d)
    s.setflags(write=False)
    return DegreeData(degrees=d, total=float(d.sum()), sqrt_degrees=s)


def is_connected(g: WeightedGraph) -> bool:
    n = g.n
    nbrs = [np.flatnonzero(row > 0) for row in g.weights]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in nbrs[v]:
            if not seen[u]:
                seen[u] = True
                queue.append(u)
    return bool(seen.all())


def normalize_total_weight(g: WeightedGraph) -> WeightedGraph:
    """Scale weights so they sum to one. The result is always WEIGHTED."""
    total = g.total_weight
    if total <= 0:
        raise EmptyGraph("graph has no edges")
    if total == 1.0 and g.kind is GraphKind.WEIGHTED:
        return g
    return WeightedGraph(g.weights / total, GraphKind.WEIGHTED)


# ----------------------------------------------------------------------
# graph6
# ----------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _upper_pairs(n):
    """Vertex pairs in graph6 bit order: column by column over the upper triangle."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def _encode_n(n):
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 68719476736:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError(f"graph6 cannot encode n={n}")


def encode_graph6(g: WeightedGraph) -> str:
    """Encode a simple graph as a graph6 string (no header, no newline)."""
    if not g.is_simple:
        raise GraphError("graph6 encodes simple graphs only")
    n = g.n
    bits = [1 if g.weights[i, j] else 0 for i, j in _upper_pairs(n)]
    bits.extend([0] * (-len(bits) % 6))
    chars = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        chars.append(chr(v + 63))
    return _encode_n(n) + "".join(chars)


def parse_graph6(text: str, line=None) -> WeightedGraph:
    """Decode one graph6 string.

    >>> parse_graph6("Bw").weights.sum()
    6.0
    """
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise BadGraph6("empty graph6 string", line)
    codes = []
    for ch in s:
        c = ord(ch)
        if c < 63 or c > 126:
            raise BadGraph6(f"character {ch!r} outside graph6 range 63..126", line)
        codes.append(c - 63)
    if codes[0] != 63:
        n, pos = codes[0], 1
    elif len(codes) >= 2 and codes[1] != 63:
        if len(codes) < 4:
            raise BadGraph6("truncated vertex count", line)
        n = (codes[1] << 12) | (codes[2] << 6) | codes[3]
        pos = 4
    else:
        if len(codes) < 8:
            raise BadGraph6("truncated vertex count", line)
        n = 0
        for c in codes[2:8]:
            n = (n << 6) | c
        pos = 8
    if n < 1:
        # zero-vertex graphs are legal graph6 but not graphs here
        raise BadGraph6("graph has no vertices", line)
    nbits = n * (n - 1) // 2
    nchars = -(-nbits // 6)
    payload = codes[pos:]
    if len(payload) < nchars:
        raise BadGraph6(f"truncated payload: need {nchars} characters, got {len(payload)}", line)
    if len(payload) > nchars:
        raise BadGraph6(f"trailing data: need {nchars} characters, got {len(payload)}", line)
    bits = np.zeros(nchars * 6, dtype=np.uint8)
    for k, c in enumerate(payload):
        for b in range(6):
            bits[6 * k + b] = (c >> (5 - b)) & 1
    if bits[nbits:].any():
        raise BadGraph6("nonzero padding bits", line)
    w = np.zeros((n, n))
    if nbits:
        iu, ju = np.array(_upper_pairs(n)).T
        on = bits[:nbits].astype(bool)
        w[iu[on], ju[on]] = 1.0
        w[ju[on], iu[on]] = 1.0
    return WeightedGraph(w, GraphKind.SIMPLE)
