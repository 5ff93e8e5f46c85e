"""Newman-Girvan 2-way modularity and its spectral mixing decomposition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Disconnected, GraphError, InternalInconsistency, NotNormalized, TooLarge
from .graph import WeightedGraph, is_connected, normalize_total_weight
from .kernels import bipartition as _scan
from .spectral import eigendecompose, modularity_matrix, normalized_adjacency

MAX_EXHAUSTIVE_N = 24


@dataclass(frozen=True)
class Bipartition:
    """Nonempty proper subset U, canonically the side holding vertex 0."""

    subset: frozenset
    n: int

    @classmethod
    def of(cls, subset, n: int) -> "Bipartition":
        u = frozenset(int(v) for v in subset)
        if not u or len(u) >= n or not all(0 <= v < n for v in u):
            raise GraphError(f"{sorted(u)} is not a nonempty proper subset of {n} vertices")
        if 0 not in u:
            u = frozenset(range(n)) - u
        return cls(u, n)

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "Bipartition":
        return cls.of([v for v in range(n) if (mask >> v) & 1], n)

    @property
    def mask(self) -> int:
        return sum(1 << v for v in self.subset)

    @property
    def indicator(self) -> np.ndarray:
        x = np.zeros(self.n)
        x[list(self.subset)] = 1.0
        return x

    def complement(self) -> frozenset:
        return frozenset(range(self.n)) - self.subset


def _prepare(g: WeightedGraph) -> WeightedGraph:
    # simple graphs are brought to Vol(V) = 1 here; weighted ones must arrive that way
    if g.is_simple:
        return normalize_total_weight(g)
    vol = g.total_weight
    if abs(vol - 1.0) > 1e-9:
        raise NotNormalized(f"total weight is {vol!r}; normalize the graph first")
    return g


def modularity_of_bipartition(g: WeightedGraph, p: Bipartition) -> float:
    """``Q(U, U') = -2 [w(U, U') - Vol(U) Vol(U')]`` at Vol(V) = 1."""
    g = _prepare(g)
    if p.n != g.n:
        raise GraphError("bipartition and graph disagree on the vertex count")
    w = g.weights
    d = w.sum(axis=1)
    u = p.indicator.astype(bool)
    cut = w[np.ix_(u, ~u)].sum()
    q = -2.0 * (cut - d[u].sum() * d[~u].sum())
    m = modularity_matrix(g).entries
    within = m[np.ix_(u, u)].sum() + m[np.ix_(~u, ~u)].sum()
    if abs(q - within) > 1e-10:
        raise InternalInconsistency(f"cut form {q!r} and block-sum form {within!r} disagree")
    return float(q)


def best_bipartition(g: WeightedGraph):
    """Exact Q_2 by exhaustive search; ties go to the smallest bitmask."""
    if g.n > MAX_EXHAUSTIVE_N:
        raise TooLarge(f"exhaustive search limited to n <= {MAX_EXHAUSTIVE_N}, got {g.n}")
    if g.n < 2:
        raise GraphError("need at least two vertices")
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    m = modularity_matrix(_prepare(g)).entries
    mask, q = _scan.scan(m)
    return Bipartition.from_mask(mask, g.n), q


@dataclass(frozen=True, eq=False)
class MixingDecomposition:
    a0: float  # x^T sqrt(d) = Vol(U)
    b0: float  # Vol(U')
    coefficients: np.ndarray  # a_1 .. a_{n-1}
    mus: np.ndarray  # mu_1 .. mu_{n-1}
    terms: np.ndarray  # mu_i a_i^2
    b_deviation: float  # max |b_i + a_i|, i >= 1
    q_direct: float
    q_spectral: float

    @property
    def residual(self) -> float:
        return abs(self.q_direct - self.q_spectral)


def mixing_identity_check(g: WeightedGraph, p: Bipartition) -> MixingDecomposition:
    """Expand ``D^{1/2} 1_U`` in the eigenbasis of ``D^{-1/2} W D^{-1/2}``.

    The top eigenvector (eigenvalue 1) is replaced by the exact ``sqrt(d)``;
    the remaining eigenpairs are shared with the normalized modularity matrix.
    """
    g = _prepare(g)
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    d = g.weights.sum(axis=1)
    sd = np.sqrt(d)
    dec = eigendecompose(normalized_adjacency(g))
    top = int(np.argmax(np.abs(dec.eigenvectors.T @ sd)))
    keep = np.delete(np.arange(g.n), top)
    mus = dec.eigenvalues[keep]
    basis = dec.eigenvectors[:, keep]
    x = sd * p.indicator
    y = sd * (1.0 - p.indicator)
    a = basis.T @ x
    b = basis.T @ y
    a0 = float(x @ sd)
    b0 = float(y @ sd)
    vol_u = float(d[list(p.subset)].sum())
    if abs(a0 - vol_u) > 1e-12 or abs(a0 + b0 - 1.0) > 1e-9:
        raise InternalInconsistency("a_0 / b_0 do not match the volumes")
    terms = mus * a * a
    q_spec = 2.0 * float(terms.sum())
    q_dir = modularity_of_bipartition(g, p)
    if abs(q_dir - q_spec) > 1e-8:
        raise InternalInconsistency(f"Q direct {q_dir!r} vs spectral {q_spec!r}")
    b_dev = float(np.abs(a + b).max()) if a.size else 0.0
    return MixingDecomposition(a0, b0, a, mus, terms, b_dev, q_dir, q_spec)
