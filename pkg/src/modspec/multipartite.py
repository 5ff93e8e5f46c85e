"""Recognition of complete multipartite graphs and their closed-form modularity spectra."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import (
    BadSizes,
    Disconnected,
    InternalInconsistency,
    NotForbidden,
    WeightedUnsupported,
)
from .graph import GraphKind, WeightedGraph, is_connected
from .spectral import eigendecompose


@dataclass(frozen=True)
class ForbiddenTriple:
    """Three vertices inducing exactly one edge, ``a ~ b``; ``c`` touches neither."""

    a: int
    b: int
    c: int

    def as_tuple(self):
        return (self.a, self.b, self.c)

    def check(self, g: WeightedGraph):
        a, b, c = self.a, self.b, self.c
        if len({a, b, c}) != 3 or not all(0 <= v < g.n for v in (a, b, c)):
            raise NotForbidden(f"{self.as_tuple()} is not three distinct vertices of the graph")
        w = g.weights
        if not (w[a, b] > 0 and w[a, c] == 0 and w[b, c] == 0):
            raise NotForbidden(f"{self.as_tuple()} does not induce exactly the edge {a}-{b}")


@dataclass(frozen=True)
class MultipartiteStructure:
    """Color classes in canonical order: sizes nonincreasing, ties by smallest member."""

    classes: tuple

    @classmethod
    def canonical(cls, classes) -> "MultipartiteStructure":
        cl = [tuple(sorted(c)) for c in classes if len(c)]
        cl.sort(key=lambda c: (-len(c), c[0]))
        return cls(tuple(cl))

    @property
    def sizes(self) -> tuple:
        return tuple(len(c) for c in self.classes)

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def n(self) -> int:
        return sum(self.sizes)

    def coloring(self) -> np.ndarray:
        col = np.empty(self.n, dtype=int)
        for idx, cl in enumerate(self.classes):
            col[list(cl)] = idx
        return col

    def verify(self, g: WeightedGraph) -> bool:
        """True iff classes partition the vertices and the edge pattern is exactly multipartite."""
        if g.n != self.n:
            return False
        flat = sorted(v for c in self.classes for v in c)
        if flat != list(range(g.n)):
            return False
        col = self.coloring()
        expected = (col[:, None] != col[None, :]).astype(float)
        return bool(np.array_equal(g.weights, expected))


@dataclass(frozen=True, eq=False)
class PatternMatrix:
    """k x k matrix whose blow-up by the class sizes is the modularity matrix."""

    p: np.ndarray
    sizes: np.ndarray

    @property
    def pn(self) -> np.ndarray:
        return self.p * self.sizes[None, :]

    def symmetric_form(self) -> np.ndarray:
        r = np.sqrt(self.sizes)
        s = self.p * np.outer(r, r)
        return np.triu(s) + np.triu(s, 1).T


def _require_simple(g):
    if g.kind is not GraphKind.SIMPLE:
        raise WeightedUnsupported("combinatorial recognition needs a simple graph")


def find_forbidden_triple(g: WeightedGraph) -> ForbiddenTriple | None:
    """Lexicographically first sorted triple inducing exactly one edge, or None."""
    _require_simple(g)
    adj = g.weights > 0
    for x, y, z in combinations(range(g.n), 3):
        exy, exz, eyz = bool(adj[x, y]), bool(adj[x, z]), bool(adj[y, z])
        if int(exy) + int(exz) + int(eyz) != 1:
            continue
        if exy:
            return ForbiddenTriple(x, y, z)
        if exz:
            return ForbiddenTriple(x, z, y)
        return ForbiddenTriple(y, z, x)
    return None


def greedy_classes(g: WeightedGraph) -> list:
    """Peel maximal independent sets off the remaining vertices, ascending index order."""
    adj = g.weights > 0
    remaining = list(range(g.n))
    classes = []
    while remaining:
        chosen = []
        for v in remaining:
            if not any(adj[v, u] for u in chosen):
                chosen.append(v)
        classes.append(chosen)
        taken = set(chosen)
        remaining = [v for v in remaining if v not in taken]
    return classes


def recover_partition(g: WeightedGraph):
    """Return the :class:`MultipartiteStructure` of ``g`` or a :class:`ForbiddenTriple`.

    The returned triple is the lexicographically first one, so it agrees with
    :func:`find_forbidden_triple`.
    """
    _require_simple(g)
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    adj = g.weights > 0
    classes = greedy_classes(g)
    col = np.empty(g.n, dtype=int)
    for idx, cl in enumerate(classes):
        col[cl] = idx
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if col[i] == col[j] or adj[i, j]:
                continue
            # i, j in different classes but non-adjacent: the later one was kept out of
            # the earlier class by some neighbour w there, and {w, later, earlier} is forbidden
            early, late = (i, j) if col[i] < col[j] else (j, i)
            w = next(u for u in classes[col[early]] if u < late and adj[u, late])
            witness = ForbiddenTriple(min(w, late), max(w, late), early)
            witness.check(g)
            first = find_forbidden_triple(g)
            if first is None:
                raise InternalInconsistency(f"triple {witness.as_tuple()} exists but scan found none")
            return first
    structure = MultipartiteStructure.canonical(classes)
    if not structure.verify(g):
        raise InternalInconsistency("recovered classes fail the multipartite edge pattern")
    return structure


def build_complete_multipartite(sizes: Sequence[int]) -> WeightedGraph:
    """K_{n_1..n_k} with classes laid out consecutively: 0..n_1-1, n_1..n_1+n_2-1, ..."""
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise BadSizes(f"class sizes must be positive, got {sizes}")
    col = np.repeat(np.arange(len(sizes)), sizes)
    w = (col[:, None] != col[None, :]).astype(float)
    return WeightedGraph(w, GraphKind.SIMPLE)


def pattern_matrix(sizes: Sequence[int]) -> PatternMatrix:
    nk = np.asarray(sizes, dtype=float)
    if nk.size < 2 or np.any(nk < 1):
        raise BadSizes(f"need at least two positive class sizes, got {list(sizes)}")
    n = nk.sum()
    two_e = n * n - np.sum(nk * nk)
    deg = n - nk
    p = (1.0 - np.eye(nk.size)) - np.outer(deg, deg) / two_e
    pm = PatternMatrix(p, nk)
    pn = pm.pn
    worst = np.abs(pn.sum(axis=1)).max()
    if worst > 1e-12 * nk.size * max(1.0, np.abs(pn).max()):
        raise InternalInconsistency(f"rows of PN do not sum to zero ({worst:.3e})")
    return pm


@dataclass(frozen=True)
class ClosedFormSpectrum:
    negatives: tuple  # k - 1 values, descending
    zero_multiplicity: int

    def full(self) -> np.ndarray:
        """All n eigenvalues, descending."""
        return np.concatenate([np.zeros(self.zero_multiplicity), np.asarray(self.negatives)])


def closed_form_modularity_spectrum(sizes: Sequence[int]) -> ClosedFormSpectrum:
    """Spectrum of M(K_{n_1..n_k}) from the k x k symmetrized pattern problem."""
    pm = pattern_matrix(sizes)
    k = pm.p.shape[0]
    vals = eigendecompose(pm.symmetric_form()).eigenvalues
    z = int(np.argmin(np.abs(vals)))
    if abs(vals[z]) > 1e-9 * k:
        raise InternalInconsistency(f"pattern problem has no zero eigenvalue (nearest {vals[z]:.3e})")
    rest = np.delete(vals, z)
    if np.any(rest >= -1e-9):
        raise InternalInconsistency(f"pattern problem has a non-negative extra eigenvalue {rest.max():.3e}")
    n = int(pm.sizes.sum())
    return ClosedFormSpectrum(tuple(float(x) for x in rest), n - k + 1)


def null_space_basis_normalized(structure: MultipartiteStructure) -> np.ndarray:
    """Orthonormal basis (as columns) of the zero eigenspace of M_D(K_{n_1..n_k}).

    Within-class contrast vectors (Helmert basis per class) span the vectors
    summing to zero on every class; ``sqrt(d)`` completes the space.
    """
    n = structure.n
    cols = []
    for cl in structure.classes:
        cl = list(cl)
        for m in range(1, len(cl)):
            v = np.zeros(n)
            v[cl[:m]] = 1.0
            v[cl[m]] = -m
            cols.append(v / np.sqrt(m * (m + 1)))
    sd = np.empty(n)
    for cl in structure.classes:
        sd[list(cl)] = np.sqrt(n - len(cl))
    cols.append(sd / np.linalg.norm(sd))
    return np.column_stack(cols)
