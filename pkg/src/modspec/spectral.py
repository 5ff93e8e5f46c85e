"""Modularity, normalized modularity and normalized Laplacian matrices and their spectra."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import Disconnected, EmptyGraph, GraphError, IsolatedVertex, NoConvergence
from .graph import WeightedGraph, degrees, is_connected, normalize_total_weight
from .kernels import jacobi as _jacobi


class MatrixLabel(enum.Enum):
    MODULARITY = "modularity"
    NORMALIZED_MODULARITY = "normalized-modularity"
    NORMALIZED_LAPLACIAN = "normalized-laplacian"
    NORMALIZED_ADJACENCY = "normalized-adjacency"
    GENERIC = "generic"


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    entries: np.ndarray
    label: MatrixLabel = MatrixLabel.GENERIC
    # sqrt-degree vector of the source graph, kept for the null-vector invariant
    sqrt_degrees: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        a = np.array(self.entries, dtype=float, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError(f"expected a square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise GraphError("matrix is not exactly symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)
        tol = 1e-12 * a.shape[0] * max(1.0, self.max_abs)
        if self.label is MatrixLabel.MODULARITY:
            worst = np.abs(a.sum(axis=1)).max()
            if worst > tol:
                raise GraphError(f"modularity rows do not sum to zero (worst {worst:.3e})")
        if self.label is MatrixLabel.NORMALIZED_MODULARITY and self.sqrt_degrees is not None:
            worst = np.abs(a @ self.sqrt_degrees).max()
            if worst > tol * max(1.0, np.abs(self.sqrt_degrees).max()):
                raise GraphError(f"normalized modularity does not annihilate sqrt(d) ({worst:.3e})")

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    @property
    def max_abs(self) -> float:
        return float(np.abs(self.entries).max()) if self.entries.size else 0.0

    def __str__(self):
        return "\n".join(" ".join(f"{x: .6g}" for x in row) for row in self.entries)


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues sorted descending with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual: float
    gram_deviation: float
    sweeps: int

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def default_tolerance(m: SymmetricMatrix, factor: float = 1e-9) -> float:
    """Zero-vs-positive eigenvalue threshold ``factor * n * max|entry|``."""
    return factor * m.order * m.max_abs


def _require_spectral(g: WeightedGraph):
    if g.total_weight <= 0:
        raise EmptyGraph("graph has no edges")


def _working_weights(g: WeightedGraph) -> np.ndarray:
    # weighted graphs are taken at total weight 1; simple graphs keep the raw 0/1 entries
    if g.is_simple:
        return g.weights
    return normalize_total_weight(g).weights


def _sqrt_inverse_degrees(w: np.ndarray) -> np.ndarray:
    d = w.sum(axis=1)
    if np.any(d <= 0):
        bad = int(np.flatnonzero(d <= 0)[0])
        raise IsolatedVertex(f"vertex {bad} has zero degree")
    return 1.0 / np.sqrt(d)


def _symmetrize(a: np.ndarray) -> np.ndarray:
    # kill last-bit asymmetry from products like d_i d_j / s
    return np.triu(a) + np.triu(a, 1).T


def modularity_matrix(g: WeightedGraph) -> SymmetricMatrix:
    """``A - d d^T / 2e`` for simple graphs, ``W - d d^T`` after normalizing weighted ones."""
    _require_spectral(g)
    w = _working_weights(g)
    d = w.sum(axis=1)
    total = d.sum()
    m = _symmetrize(w - np.outer(d, d) / total)
    return SymmetricMatrix(m, MatrixLabel.MODULARITY)


def normalized_modularity_matrix(g: WeightedGraph) -> SymmetricMatrix:
    _require_spectral(g)
    w = _working_weights(g)
    inv = _sqrt_inverse_degrees(w)
    m = modularity_matrix(g).entries
    md = _symmetrize(m * np.outer(inv, inv))
    return SymmetricMatrix(md, MatrixLabel.NORMALIZED_MODULARITY, sqrt_degrees=1.0 / inv)


def normalized_adjacency(g: WeightedGraph) -> SymmetricMatrix:
    """``D^{-1/2} W D^{-1/2}``; invariant under positive rescaling of the weights."""
    _require_spectral(g)
    w = _working_weights(g)
    inv = _sqrt_inverse_degrees(w)
    return SymmetricMatrix(_symmetrize(w * np.outer(inv, inv)), MatrixLabel.NORMALIZED_ADJACENCY)


def normalized_laplacian(g: WeightedGraph) -> SymmetricMatrix:
    na = normalized_adjacency(g).entries
    return SymmetricMatrix(np.eye(g.n) - na, MatrixLabel.NORMALIZED_LAPLACIAN)


def build_matrix(g: WeightedGraph, label: MatrixLabel) -> SymmetricMatrix:
    builders = {
        MatrixLabel.MODULARITY: modularity_matrix,
        MatrixLabel.NORMALIZED_MODULARITY: normalized_modularity_matrix,
        MatrixLabel.NORMALIZED_LAPLACIAN: normalized_laplacian,
        MatrixLabel.NORMALIZED_ADJACENCY: normalized_adjacency,
    }
    return builders[label](g)


def orient_columns(vecs: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry (first one on near-ties) is positive."""
    vecs = vecs.copy()
    mags = np.abs(vecs)
    peak = mags.max(axis=0)
    lead = np.argmax(mags >= peak * (1 - 1e-8), axis=0)
    signs = np.sign(vecs[lead, np.arange(vecs.shape[1])])
    signs[signs == 0] = 1.0
    return vecs * signs


def eigendecompose(m) -> SpectralDecomposition:
    """Full eigendecomposition by cyclic Jacobi sweeps.

    Accepts a :class:`SymmetricMatrix` or a plain symmetric array.
    """
    a = m.entries if isinstance(m, SymmetricMatrix) else np.asarray(m, dtype=float)
    if not np.array_equal(a, a.T):
        raise GraphError("eigendecompose needs an exactly symmetric matrix")
    vals, vecs, sweeps = _jacobi.jacobi_batch(a[None, :, :])
    if sweeps[0] < 0:
        raise NoConvergence(
            f"Jacobi did not converge in {_jacobi.MAX_SWEEPS} sweeps (n={a.shape[0]})"
        )
    vals, vecs = vals[0], vecs[0]
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = orient_columns(vecs[:, order])
    resid = np.linalg.norm(a @ vecs - vecs * vals, axis=0).max() if a.size else 0.0
    gram = np.abs(vecs.T @ vecs - np.eye(a.shape[0])).max()
    vals.setflags(write=False)
    vecs.setflags(write=False)
    return SpectralDecomposition(vals, vecs, float(resid), float(gram), int(sweeps[0]))


@dataclass(frozen=True)
class Correspondence:
    """Nontrivial normalized-modularity eigenvalues paired with ``1 - lambda_i``."""

    pairs: list  # (mu_i, lambda_i), mu descending / lambda ascending
    max_deviation: float
    trivial_eigenvalue: float  # the M_D eigenvalue set aside as the sqrt(d) direction
    null_residual: float  # ||M_D sqrt(d)|| / ||sqrt(d)||


def mu_lambda_correspondence(g: WeightedGraph) -> Correspondence:
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    md = normalized_modularity_matrix(g)
    ld = normalized_laplacian(g)
    mu = eigendecompose(md).eigenvalues
    lam = eigendecompose(ld).eigenvalues[::-1]  # ascending, lam[0] ~ 0
    # the sqrt(d) direction of M_D sits at eigenvalue 0; drop the eigenvalue nearest zero
    k = int(np.argmin(np.abs(mu)))
    trivial = float(mu[k])
    rest = np.delete(mu, k)
    nontrivial_lam = lam[1:]
    dev = float(np.abs(rest - (1.0 - nontrivial_lam)).max()) if rest.size else 0.0
    sd = degrees(g).sqrt_degrees
    null_res = float(np.linalg.norm(md.entries @ sd) / np.linalg.norm(sd))
    pairs = [(float(a), float(b)) for a, b in zip(rest, nontrivial_lam)]
    return Correspondence(pairs, dev, trivial, null_res)
