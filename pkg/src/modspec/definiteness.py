"""Negative semidefiniteness of M and M_D with certificates in both directions."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import Disconnected, EmptyGraph, GraphError, InternalInconsistency, WeightedUnsupported
from .graph import WeightedGraph, degrees, is_connected
from .multipartite import ForbiddenTriple, MultipartiteStructure, recover_partition
from .spectral import (
    SymmetricMatrix,
    default_tolerance,
    eigendecompose,
    modularity_matrix,
    normalized_modularity_matrix,
)


class Verdict(enum.Enum):
    NEGATIVE_SEMIDEFINITE = "NSD"
    INDEFINITE = "indefinite"


def is_negative_semidefinite(m, tol: float | None = None) -> bool:
    """True iff the largest eigenvalue of ``m`` is at most ``tol``."""
    if not isinstance(m, SymmetricMatrix):
        m = SymmetricMatrix(np.asarray(m, dtype=float))
    if tol is None:
        tol = default_tolerance(m)
    return eigendecompose(m).max_eigenvalue <= tol


def det3(a: np.ndarray) -> float:
    return float(
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


def _rel_err(x, ref):
    return abs(x - ref) / max(abs(ref), np.finfo(float).tiny)


def principal_minor_certificate(g: WeightedGraph, t: ForbiddenTriple) -> float:
    """Determinant of the 3x3 principal submatrix of M on (a, b, c).

    Checked against the closed form ``w_ab^2 d_c^2 / S`` with ``S`` the total
    degree of the weights M is built from; for a simple graph this is
    ``d_c^2 / 2e``.
    """
    t.check(g)
    m = modularity_matrix(g).entries
    idx = [t.a, t.b, t.c]
    minor = det3(m[np.ix_(idx, idx)])
    w = g.weights if g.is_simple else g.weights / g.total_weight
    d = w.sum(axis=1)
    closed = w[t.a, t.b] ** 2 * d[t.c] ** 2 / d.sum()
    if _rel_err(minor, closed) > 1e-10:
        raise InternalInconsistency(f"minor {minor!r} disagrees with closed form {closed!r}")
    return minor


def witness_vector(g: WeightedGraph, t: ForbiddenTriple):
    """Vector orthogonal to sqrt(d) with a positive M_D quadratic form.

    Support is the triple: ``x_a = x_b = 1`` and ``x_c`` balances the
    sqrt-degree constraint. Returns ``(x, x^T M_D x)``.
    """
    t.check(g)
    md = normalized_modularity_matrix(g).entries
    sd = degrees(g).sqrt_degrees
    x = np.zeros(g.n)
    x[t.a] = x[t.b] = 1.0
    x[t.c] = -(sd[t.a] + sd[t.b]) / sd[t.c]
    dot = float(x @ sd)
    if abs(dot) > 1e-12 * max(1.0, sd[t.a] + sd[t.b]):
        raise InternalInconsistency(f"witness not orthogonal to sqrt(d): {dot!r}")
    direct = float(x @ md @ x)
    closed = 2.0 * g.weights[t.a, t.b] / (sd[t.a] * sd[t.b])
    if _rel_err(direct, closed) > 1e-10:
        raise InternalInconsistency(f"quadratic form {direct!r} disagrees with closed form {closed!r}")
    return x, direct


@dataclass(frozen=True, eq=False)
class Certificate:
    verdict: Verdict
    n: int
    eigenvalues_m: np.ndarray
    eigenvalues_md: np.ndarray
    tolerance_m: float
    tolerance_md: float
    structure: MultipartiteStructure | None = None
    triple: ForbiddenTriple | None = None
    minor: float | None = None
    witness: np.ndarray | None = field(default=None, repr=False)
    witness_value: float | None = None
    witness_residual: float | None = None  # x^T sqrt(d)

    @property
    def is_nsd(self) -> bool:
        return self.verdict is Verdict.NEGATIVE_SEMIDEFINITE

    def recheck(self, g: WeightedGraph) -> bool:
        """Recompute the stored evidence from scratch."""
        if self.is_nsd:
            return self.structure.verify(g) and bool(
                self.eigenvalues_m.max() <= self.tolerance_m
                and self.eigenvalues_md.max() <= self.tolerance_md
            )
        md = normalized_modularity_matrix(g).entries
        q = float(self.witness @ md @ self.witness)
        sd = degrees(g).sqrt_degrees
        return q > 0 and abs(q - self.witness_value) <= 1e-10 * abs(self.witness_value) and abs(
            float(self.witness @ sd)
        ) <= 1e-12 * max(1.0, float(np.abs(self.witness).max()))

    def to_record(self) -> dict:
        rec = {
            "verdict": self.verdict.value,
            "n": self.n,
            "lambda_max_m": float(self.eigenvalues_m[0]),
            "lambda_max_md": float(self.eigenvalues_md[0]),
        }
        if self.is_nsd:
            rec["k"] = self.structure.k
            rec["sizes"] = list(self.structure.sizes)
            rec["classes"] = [list(c) for c in self.structure.classes]
        else:
            rec["triple"] = list(self.triple.as_tuple())
            rec["minor"] = self.minor
            rec["witness"] = [float(v) for v in self.witness]
            rec["witness_dot_sqrt_d"] = self.witness_residual
            rec["quadratic_form"] = self.witness_value
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_record())

    def report(self) -> str:
        lines = []
        if self.is_nsd:
            sizes = ",".join(str(s) for s in self.structure.sizes)
            lines.append(f"complete multipartite, sizes [{sizes}] (k={self.structure.k})")
            lines.append("verdict: M and M_D negative semidefinite")
            for i, cl in enumerate(self.structure.classes, start=1):
                lines.append(f"  V{i}: {' '.join(map(str, cl))}")
        else:
            a, b, c = self.triple.as_tuple()
            lines.append("not complete multipartite")
            lines.append("verdict: M and M_D indefinite")
            lines.append(f"  forbidden triple: ({a}, {b}, {c})  edge {a}-{b}, vertex {c} isolated in the triple")
            lines.append(f"  principal minor of M on (a,b,c): {self.minor:.12g}")
            lines.append("  witness x: " + " ".join(f"{v:.12g}" for v in self.witness))
            lines.append(f"  x . sqrt(d): {self.witness_residual:.3e}")
            lines.append(f"  x^T M_D x: {self.witness_value:.12g}")
        lines.append(f"  lambda_max(M)   = {self.eigenvalues_m[0]: .3e}  (tol {self.tolerance_m:.1e})")
        lines.append(f"  lambda_max(M_D) = {self.eigenvalues_md[0]: .3e}  (tol {self.tolerance_md:.1e})")
        return "\n".join(lines)


def classify(g: WeightedGraph, tol_factor: float = 1e-9) -> Certificate:
    """Decide complete multipartiteness, certified combinatorially and spectrally."""
    if not g.is_simple:
        raise WeightedUnsupported("classification needs a simple graph")
    if g.n < 2:
        raise GraphError("classification needs at least two vertices")
    if g.total_weight <= 0:
        raise EmptyGraph("graph has no edges")
    if not is_connected(g):
        raise Disconnected("graph is not connected")
    m = modularity_matrix(g)
    md = normalized_modularity_matrix(g)
    ev_m = eigendecompose(m).eigenvalues
    ev_md = eigendecompose(md).eigenvalues
    tol_m = default_tolerance(m, tol_factor)
    tol_md = default_tolerance(md, tol_factor)
    found = recover_partition(g)
    if isinstance(found, MultipartiteStructure):
        if ev_m[0] > tol_m or ev_md[0] > tol_md:
            raise InternalInconsistency(
                f"complete multipartite graph with positive eigenvalue "
                f"(M: {ev_m[0]:.3e}, M_D: {ev_md[0]:.3e})"
            )
        return Certificate(Verdict.NEGATIVE_SEMIDEFINITE, g.n, ev_m, ev_md, tol_m, tol_md, structure=found)
    minor = principal_minor_certificate(g, found)
    x, value = witness_vector(g, found)
    if not (ev_m[0] > tol_m and ev_md[0] > tol_md):
        raise InternalInconsistency(
            f"forbidden triple present but spectrum not positive (M: {ev_m[0]:.3e}, M_D: {ev_md[0]:.3e})"
        )
    return Certificate(
        Verdict.INDEFINITE,
        g.n,
        ev_m,
        ev_md,
        tol_m,
        tol_md,
        triple=found,
        minor=minor,
        witness=x,
        witness_value=value,
        witness_residual=float(x @ degrees(g).sqrt_degrees),
    )
