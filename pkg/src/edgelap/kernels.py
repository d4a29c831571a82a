"""Applications of the eigensystem: Ihara zeta reciprocal, heat flow, waves.

Fields are kept as coefficient vectors over the eigensystem entries. The
heat and wave equations act mode by mode with the edge Laplacian
(``u_t = u_xx`` and ``u_tt = u_xx`` along edges, unit speed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .eigensystem import Eigensystem
from .graph import Graph, adjacency, degrees, oriented_line_graph
from .numerics import determinant


class ZetaMismatchError(ArithmeticError):
    pass


def bass_zeta_recip(g: Graph, u: complex) -> complex:
    """``(1-u^2)^(|E|-|V|) det(I - uA + u^2 (D - I))``."""
    A = adjacency(g)
    n = g.n_vertices
    M = np.eye(n) - u * A + u * u * (np.diag(degrees(g)) - np.eye(n))
    return (1 - u * u) ** (g.n_edges - n) * np.linalg.det(M)


def ihara_zeta_recip(g: Graph, u: complex, check: bool = True, rtol: float = 1e-8) -> complex:
    """``det(I - u T)`` for the Hashimoto matrix ``T`` of ``g``.

    With ``check`` the value is compared against the vertex-sized Bass form;
    a relative mismatch beyond ``rtol`` raises :class:`ZetaMismatchError`.
    """
    T = oriented_line_graph(g).T
    M = np.eye(T.shape[0]) - u * T
    value = determinant(M.astype(complex) if isinstance(u, complex) else M)
    if check and not (g.n_edges < g.n_vertices and abs(1 - u * u) == 0):
        ref = bass_zeta_recip(g, u)
        if abs(value - ref) > rtol * max(abs(value), abs(ref)) + 1e-12:
            raise ZetaMismatchError(f"det(I - uT) = {value} but Bass form gives {ref} at u = {u}")
    return value


def spectral_radius_bound(g: Graph) -> float:
    """``max degree - 1`` bounds the spectral radius of ``T``."""
    return float(max(degrees(g).max(initial=1.0) - 1, 0.0))


# -- fields -------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralField:
    coefficients: np.ndarray
    t: float = 0.0
    velocity: np.ndarray | None = None


def _interval_cos_integral(phi, k, a, b):
    """``int_a^b cos(phi + k x) dx``."""
    return (b - a) * np.cos(phi + k * (a + b) / 2) * np.sinc(k * (b - a) / (2 * np.pi))


def raised_cosine_coefficients(E: Eigensystem, edge: int, center: float = 0.5, radius: float = 0.25) -> np.ndarray:
    """Expansion coefficients of ``(1 + cos(pi (x - center)/radius)) / 2`` on one edge.

    The bump must lie inside the edge. The coefficients are exact inner
    products, valid because the eigensystem is orthonormal.
    """
    a, b = center - radius, center + radius
    if radius <= 0 or a < 0 or b > 1:
        raise ValueError("bump must lie inside the edge")
    q = np.pi / radius
    out = np.empty(len(E))
    for n, en in enumerate(E.entries):
        C, B, w = en.C[edge], en.B[edge], en.omega
        val = 0.5 * _interval_cos_integral(B, w, a, b)
        val += 0.25 * _interval_cos_integral(B - q * center, w + q, a, b)
        val += 0.25 * _interval_cos_integral(B + q * center, w - q, a, b)
        out[n] = C * val
    return out


def heat_field(E: Eigensystem, init: SpectralField, t: float) -> SpectralField:
    w2 = E.frequencies**2
    return SpectralField(init.coefficients * np.exp(-w2 * t), init.t + t)


def wave_field(E: Eigensystem, position: np.ndarray, velocity: np.ndarray, t: float) -> SpectralField:
    """Modal solution of the wave equation after time ``t`` (negative ``t`` runs backwards)."""
    w = E.frequencies
    p = np.asarray(position, dtype=float)
    v = np.asarray(velocity, dtype=float)
    safe = np.where(w == 0, 1.0, w)
    s = np.where(w == 0, t, np.sin(w * t) / safe)
    a = p * np.cos(w * t) + v * s
    adot = -p * w * np.sin(w * t) + v * np.cos(w * t)
    return SpectralField(a, t, adot)


def wave_energy(E: Eigensystem, field: SpectralField) -> float:
    w = E.frequencies
    v = field.velocity if field.velocity is not None else np.zeros_like(field.coefficients)
    return float(0.5 * np.sum(v**2 + (w * field.coefficients) ** 2))


def total_heat(E: Eigensystem, field: SpectralField) -> float:
    """``sum_e int_0^1 u dx`` in closed form."""
    per_mode = np.array(
        [np.sum(en.C * np.cos(en.B + en.omega / 2) * np.sinc(en.omega / (2 * np.pi))) for en in E.entries]
    )
    return float(field.coefficients @ per_mode)


def field_values(E: Eigensystem, field: SpectralField, x: np.ndarray) -> np.ndarray:
    """Field on every edge at positions ``x``; shape ``(|E|, len(x))``."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((E.graph.n_edges, x.size))
    for a, en in zip(field.coefficients, E.entries):
        if a != 0.0:
            out += a * en.C[:, None] * np.cos(en.B[:, None] + en.omega * x[None, :])
    return out


# -- metric geometry ---------------------------------------------------------


def _vertex_distances(g: Graph) -> np.ndarray:
    return shortest_path(adjacency(g), unweighted=True, directed=False)


def _point_to_vertices(g: Graph, D: np.ndarray, point: tuple[int, float]) -> np.ndarray:
    e, x = point
    u, v = g.edge_array[e]
    return np.minimum(x + D[u], (1 - x) + D[v])


def metric_distance(g: Graph, p1: tuple[int, float], p2: tuple[int, float]) -> float:
    """Shortest-path distance between two points ``(edge, x)`` of the metric graph."""
    for e, x in (p1, p2):
        if not 0 <= e < g.n_edges or not 0 <= x <= 1:
            raise ValueError(f"invalid point ({e}, {x})")
    D = _vertex_distances(g)
    to_v = _point_to_vertices(g, D, p1)
    e2, x2 = p2
    a, b = g.edge_array[e2]
    best = min(to_v[a] + x2, to_v[b] + 1 - x2)
    if p1[0] == e2:
        best = min(best, abs(p1[1] - x2))
    if not np.isfinite(best):
        raise ValueError("points lie in different components")
    return float(best)


def distances_from(g: Graph, point: tuple[int, float], x: np.ndarray) -> np.ndarray:
    """Distance from ``point`` to every ``(edge, x[j])``; shape ``(|E|, len(x))``."""
    D = _vertex_distances(g)
    to_v = _point_to_vertices(g, D, point)
    tail, head = g.edge_array.T
    x = np.asarray(x, dtype=float)
    d = np.minimum(to_v[tail][:, None] + x[None, :], to_v[head][:, None] + 1 - x[None, :])
    e0, x0 = point
    d[e0] = np.minimum(d[e0], np.abs(x - x0))
    return d


def leakage(
    E: Eigensystem, field: SpectralField, point: tuple[int, float], distance: float, resolution: int = 64
) -> float:
    """Largest ``|u|`` at sample points farther than ``distance`` from ``point``."""
    x = np.linspace(0.0, 1.0, resolution + 1)
    vals = field_values(E, field, x)
    far = distances_from(E.graph, point, x) > distance
    return float(np.abs(vals[far]).max(initial=0.0))
