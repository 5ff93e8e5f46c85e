"""Quadratic placement, the lambda_1 <= 1 test representation, and symmetric maximal correlation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Disconnected, EdgePresent, GraphError, Infeasible, InternalInconsistency
from .graph import WeightedGraph, degrees, is_connected, normalize_total_weight
from .spectral import eigendecompose, normalized_adjacency, normalized_laplacian

FEASIBILITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Representation:
    """One real coordinate per vertex."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float, copy=True)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def moments(self, d: np.ndarray):
        """``(sum d_i r_i, sum d_i r_i^2)``."""
        r = self.values
        return float(d @ r), float(d @ (r * r))

    def is_feasible(self, d: np.ndarray, tol: float = FEASIBILITY_TOL) -> bool:
        mean, var = self.moments(d)
        return abs(mean) <= tol and abs(var - 1.0) <= tol


def _objective(w, r):
    diff = r[:, None] - r[None, :]
    return 0.5 * float(np.sum(w * diff * diff))


def placement_objective(g: WeightedGraph, r: Representation) -> float:
    """``sum_{i<j} w_ij (r_i - r_j)^2`` for a feasible representation."""
    d = degrees(g).degrees
    if r.values.shape != (g.n,):
        raise GraphError(f"representation has {r.values.size} coordinates for {g.n} vertices")
    if not r.is_feasible(d):
        mean, var = r.moments(d)
        raise Infeasible(f"sum d r = {mean:.3e}, sum d r^2 = {var:.12g}")
    return _objective(g.weights, r.values)


def optimal_representation(g: WeightedGraph):
    """``D^{-1/2} u_1`` for the second-smallest normalized Laplacian eigenpair."""
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    dec = eigendecompose(normalized_laplacian(g))
    lam1 = float(dec.eigenvalues[-2])
    u1 = dec.eigenvectors[:, -2]
    d = degrees(g).degrees
    rep = Representation(u1 / np.sqrt(d))
    value = placement_objective(g, rep)
    if abs(value - lam1) > 1e-8:
        raise InternalInconsistency(f"objective {value!r} differs from lambda_1 {lam1!r}")
    return rep, lam1


def pair_bound_witness(g: WeightedGraph, i: int, j: int):
    """Feasible representation supported on a non-adjacent pair, objective exactly 1.

    ``r_i = d_j / s``, ``r_j = -d_i / s``, ``s = sqrt(d_j^2 d_i + d_i^2 d_j)``.
    """
    if i == j or not (0 <= i < g.n and 0 <= j < g.n):
        raise GraphError(f"({i}, {j}) is not a pair of distinct vertices")
    if g.weights[i, j] != 0:
        raise EdgePresent(f"vertices {i} and {j} are adjacent")
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    d = degrees(g).degrees
    s = np.sqrt(d[j] ** 2 * d[i] + d[i] ** 2 * d[j])
    r = np.zeros(g.n)
    r[i] = d[j] / s
    r[j] = -d[i] / s
    rep = Representation(r)
    bound = placement_objective(g, rep)
    if bound > 1.0 + 1e-10:
        raise InternalInconsistency(f"pair representation objective {bound!r} exceeds 1")
    return rep, bound


def symmetric_max_correlation(g: WeightedGraph):
    """Second-largest eigenvalue of ``D^{-1/2} W D^{-1/2}`` and its maximizing representation.

    Computed at total weight one; the representation satisfies
    ``sum d_i r_i = 0`` and ``sum d_i r_i^2 = 1`` for the normalized degrees.
    """
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    h = normalize_total_weight(g)
    dec = eigendecompose(normalized_adjacency(h))
    d = h.weights.sum(axis=1)
    sd = np.sqrt(d)
    top = int(np.argmax(np.abs(dec.eigenvectors.T @ sd)))
    if top != 0 or abs(dec.eigenvalues[0] - 1.0) > 1e-9:
        raise InternalInconsistency("leading eigenpair of D^-1/2 W D^-1/2 is not (1, sqrt d)")
    mu1 = float(dec.eigenvalues[1])
    rep = Representation(dec.eigenvectors[:, 1] / sd)
    if not rep.is_feasible(d):
        raise InternalInconsistency("maximizing representation is infeasible")
    r = rep.values
    corr = float(r @ h.weights @ r)
    if abs(corr - mu1) > 1e-8:
        raise InternalInconsistency(f"sum w r r = {corr!r} differs from mu_1 = {mu1!r}")
    return mu1, rep
