"""Eigenfunctions that vanish on every vertex (principal frequency pi or 2 pi).

On each edge such a function is ``C[e] cos(pi/2 + omega x)``. The vertex
condition reduces to a linear constraint on ``C``: the plain sum around each
vertex vanishes for ``omega = pi``; the head-minus-tail sum vanishes for
``omega = 2 pi``. Bases are null spaces of the unsigned and signed incidence
matrices. The +1/-1 eigenvectors of the Hashimoto matrix serve as an
independent cross-check.

Rows of the incidence matrices run over non-boundary vertices only, so on a
graph with boundary an edge may carry a nonzero weight towards its
boundary end. Pass ``interior_graph(g)`` to restrict to the interior.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, OrientedLineGraph, incidence_signed, incidence_unsigned, oriented_line_graph
from .numerics import DEFAULT_TOL, nullspace

PI = float(np.pi)
TWO_PI = float(2 * np.pi)


class HashimotoCheckError(ArithmeticError):
    """A constructed vector failed the Hashimoto eigenvector check."""


@dataclass(frozen=True, eq=False)
class WMatrix:
    """Edge weights ``C`` (one per oriented edge) for the pi or 2 pi class."""

    graph: Graph
    omega: float
    C: np.ndarray

    @property
    def symmetric(self) -> bool:
        return self.omega == PI

    @property
    def matrix(self) -> np.ndarray:
        """``W[u, v] = C[e]`` and ``W[v, u] = +-C[e]`` for each edge ``e = (u, v)``."""
        n = self.graph.n_vertices
        W = np.zeros((n, n))
        sign = 1.0 if self.symmetric else -1.0
        for e, (u, v) in enumerate(self.graph.edge_array):
            W[u, v] = self.C[e]
            W[v, u] = sign * self.C[e]
        return W

    def row_sums(self) -> np.ndarray:
        """``W 1`` over the non-boundary vertices."""
        return (self.matrix @ np.ones(self.graph.n_vertices))[self.graph.interior_mask]

    def invariant_residual(self) -> float:
        W = self.matrix
        sym = W - W.T if self.symmetric else W + W.T
        return float(max(np.abs(self.row_sums()).max(initial=0.0), np.abs(sym).max(initial=0.0)))


def _basis(g: Graph, omega: float, tol: float) -> list[WMatrix]:
    if g.n_edges == 0:
        return []
    M = incidence_unsigned(g) if omega == PI else incidence_signed(g)
    N = nullspace(M, tol)
    return [WMatrix(g, omega, N[:, k]) for k in range(N.shape[1])]


def pi_basis(g: Graph, tol: float = DEFAULT_TOL) -> list[WMatrix]:
    """Orthonormal (edgewise dot product) symmetric weightings with zero vertex sums."""
    return _basis(g, PI, tol)


def two_pi_basis(g: Graph, tol: float = DEFAULT_TOL) -> list[WMatrix]:
    """Orthonormal basis of circulations: zero net signed flow at each vertex."""
    return _basis(g, TWO_PI, tol)


@dataclass(frozen=True, eq=False)
class EdgeEigenfunction:
    graph: Graph
    omega: float
    C: np.ndarray

    @property
    def B(self) -> np.ndarray:
        return np.full(self.graph.n_edges, np.pi / 2)

    def __call__(self, e: int, x: float | np.ndarray) -> float | np.ndarray:
        return self.C[e] * np.cos(np.pi / 2 + self.omega * np.asarray(x))

    def edge_condition_residual(self) -> float:
        # outward gradient: -f'(0) at the tail, f'(1) at the head
        g = self.graph
        k = self.omega
        total = np.zeros(g.n_vertices)
        for e, (u, v) in enumerate(g.edge_array):
            total[u] += k * self.C[e] * np.sin(np.pi / 2)
            total[v] += -k * self.C[e] * np.sin(np.pi / 2 + k)
        return float(np.abs(total[g.interior_mask]).max(initial=0.0))


def w_to_eigenfunction(W: WMatrix, tol: float = DEFAULT_TOL) -> EdgeEigenfunction:
    scale = np.abs(W.C).max(initial=0.0)
    if scale == 0:
        raise ValueError("zero weighting is not an eigenfunction")
    if W.invariant_residual() > tol * scale:
        raise ValueError(f"W violates its class invariants (residual {W.invariant_residual():.3e})")
    return EdgeEigenfunction(W.graph, W.omega, W.C.copy())


@dataclass(frozen=True, eq=False)
class OLGVector:
    s: np.ndarray
    lam: float
    residual: float


def w_to_olg_vector(W: WMatrix, olg: OrientedLineGraph | None = None, tol: float = DEFAULT_TOL) -> OLGVector:
    """Read ``W`` off along directed edges and check it against the Hashimoto matrix.

    Expected eigenvalue: +1 for the antisymmetric (2 pi) class, -1 for the
    symmetric (pi) class.
    """
    olg = olg or oriented_line_graph(W.graph)
    Wm = W.matrix
    s = np.array([Wm[u, v] for u, v in olg.darts])
    lam = -1.0 if W.symmetric else 1.0
    residual = float(np.abs(olg.T @ s - lam * s).max(initial=0.0))
    if residual > tol:
        raise HashimotoCheckError(f"||T s - {lam:+.0f} s|| = {residual:.3e} exceeds {tol:g}")
    return OLGVector(s, lam, residual)


@dataclass(frozen=True)
class HashimotoEigenspaces:
    plus: np.ndarray  # columns spanning null(T - I)
    minus: np.ndarray  # columns spanning null(T + I)

    @property
    def dims(self) -> tuple[int, int]:
        return self.plus.shape[1], self.minus.shape[1]


def hashimoto_pm1_eigenspaces(olg: OrientedLineGraph, tol: float = DEFAULT_TOL) -> HashimotoEigenspaces:
    I = np.eye(olg.size)
    if olg.size == 0:
        return HashimotoEigenspaces(np.zeros((0, 0)), np.zeros((0, 0)))
    return HashimotoEigenspaces(nullspace(olg.T - I, tol), nullspace(olg.T + I, tol))


def span_residual(basis: np.ndarray, vectors: list[np.ndarray]) -> float:
    """Largest distance from a vector to the column span of an orthonormal ``basis``."""
    worst = 0.0
    for s in vectors:
        proj = basis @ (basis.T @ s) if basis.size else np.zeros_like(s)
        worst = max(worst, float(np.abs(s - proj).max(initial=0.0)))
    return worst
