"""Eigenfunctions of the edge Laplacian that are nonzero somewhere on the vertices.

Each eigenvector ``g`` of the row-normalised adjacency with eigenvalue
``lam = cos(omega)`` fixes, edge by edge, the unique cosine
``C cos(B + omega x)`` that interpolates ``g`` between the two endpoints.
The frequencies ``omega + 2 pi n`` share the same coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .numerics import DEFAULT_TOL, gram_schmidt, group_degenerate, rw_eig

SPECIAL_TOL = 1e-8
TWO_PI = 2 * np.pi


def canonical_form(z: complex | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split complex amplitudes ``C e^{iB}`` into ``(C, B)`` with ``B`` in ``(-pi/2, pi/2]``.

    The sign of ``C`` absorbs the half-turn, so that ``C cos B`` keeps the
    sign of the value at ``x = 0``.
    """
    z = np.asarray(z, dtype=complex)
    B = np.angle(z)
    C = np.abs(z)
    hi = B > np.pi / 2
    lo = B <= -np.pi / 2
    B = np.where(hi, B - np.pi, np.where(lo, B + np.pi, B))
    C = np.where(hi | lo, -C, C)
    B = np.where(C == 0, 0.0, B)
    return C, B


def principal_frequency(lam: float) -> float:
    if not -1 < lam < 1:
        raise ValueError(f"eigenvalue {lam} is outside (-1, 1); use the special-case constructions")
    return float(np.arccos(lam))


def amplitude_phase(g_u: float, g_v: float, omega: float) -> tuple[float, float]:
    """Amplitude and phase of the cosine through ``g_u`` at x=0 and ``g_v`` at x=1."""
    s = np.sin(omega)
    if abs(s) < 1e-12:
        raise ValueError("omega is a multiple of pi; endpoint values do not determine the cosine")
    if g_u == 0 and g_v == 0:
        raise ValueError("both endpoint values are zero")
    z = complex(g_u, (g_u * np.cos(omega) - g_v) / s)
    C, B = canonical_form(z)
    return float(C), float(B)


@dataclass(frozen=True, eq=False)
class VertexEigenfunction:
    """Principal eigenfunction ``f(e, x) = C[e] cos(B[e] + omega x)``.

    ``g`` runs over every vertex of ``graph`` (boundary vertices hold 0).
    """

    graph: Graph
    omega: float
    lam: float
    g: np.ndarray
    C: np.ndarray
    B: np.ndarray

    def __call__(self, e: int, x: float | np.ndarray) -> float | np.ndarray:
        return self.C[e] * np.cos(self.B[e] + self.omega * np.asarray(x))

    @property
    def amplitudes(self) -> np.ndarray:
        return self.C * np.exp(1j * self.B)


@dataclass(frozen=True, eq=False)
class EigenpairSequence:
    """All frequencies ``|omega + 2 pi n|`` sharing the principal coefficients."""

    principal: VertexEigenfunction

    @property
    def special(self) -> bool:
        w = self.principal.omega
        return w == 0.0 or w == np.pi

    def members(self, cutoff: float) -> list[tuple[float, np.ndarray, np.ndarray, int]]:
        """``(frequency, C, B, n)`` for each member with frequency at most ``cutoff``.

        Members with negative ``omega + 2 pi n`` are rewritten with a positive
        frequency by conjugating the complex amplitude.
        """
        p = self.principal
        w0 = p.omega
        out = []
        n = 0
        while w0 + TWO_PI * n <= cutoff + 1e-12:
            out.append((w0 + TWO_PI * n, p.C, p.B, n))
            n += 1
        if not self.special:
            C, B = canonical_form(np.conj(p.amplitudes))
            m = 1
            while TWO_PI * m - w0 <= cutoff + 1e-12:
                out.append((TWO_PI * m - w0, C, B, -m))
                m += 1
        return sorted(out, key=lambda t: t[0])


def _edge_coefficients(g: Graph, gfull: np.ndarray, lam: float, omega: float, tol: float):
    E = g.edge_array
    C = np.zeros(g.n_edges)
    B = np.zeros(g.n_edges)
    scale = np.abs(gfull).max(initial=0.0)
    for e, (u, v) in enumerate(E):
        gu, gv = gfull[u], gfull[v]
        if max(abs(gu), abs(gv)) <= tol * scale:
            continue
        if omega == 0.0:
            C[e] = (gu + gv) / 2
        elif omega == np.pi:
            C[e] = (gu - gv) / 2
        else:
            C[e], B[e] = amplitude_phase(gu, gv, omega)
    return C, B


def build_vertex_eigenfunctions(g: Graph, tol: float = DEFAULT_TOL) -> list[EigenpairSequence]:
    """One sequence per eigenvector of the row-normalised adjacency of ``g``.

    The computation uses the full graph: boundary vertices hold the value 0
    and still count in the degree of their interior neighbour. Eigenvalues
    within ``SPECIAL_TOL`` of +1 (constant on a boundary-free component) or
    -1 (alternating on a bipartite boundary-free component) give the
    frequency 0 and pi ladders.
    """
    spec = rw_eig(g, tol)
    mask = g.interior_mask
    out: list[EigenpairSequence] = []
    values = list(spec.values)
    for group in group_degenerate(values):
        vecs = gram_schmidt([spec.vectors[:, k] for k in group]).basis
        lam_group = float(np.mean([values[k] for k in group]))
        for vec in vecs:
            lam = lam_group
            if abs(lam - 1) <= SPECIAL_TOL:
                lam, omega = 1.0, 0.0
            elif abs(lam + 1) <= SPECIAL_TOL:
                lam, omega = -1.0, float(np.pi)
            else:
                omega = principal_frequency(lam)
            gfull = np.zeros(g.n_vertices)
            gfull[mask] = vec
            C, B = _edge_coefficients(g, gfull, lam, omega, tol)
            out.append(EigenpairSequence(VertexEigenfunction(g, omega, lam, gfull, C, B)))
    return out
