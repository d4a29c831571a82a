"""Assembly, evaluation and verification of the full edge-Laplacian eigensystem.

Every entry is stored in coefficient form: a frequency ``omega >= 0`` and,
per edge, ``f(e, x) = C[e] cos(B[e] + omega x)``. Inner products, gradients
and energies are evaluated in closed form; sampling happens only on request.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .edge_eigen import PI, TWO_PI, pi_basis, two_pi_basis
from .graph import Graph, degrees, directed_edges, interior_graph, line_graph, row_normalized
from .numerics import DEFAULT_TOL, DEGENERACY_TOL, gram_schmidt, group_degenerate
from .vertex_eigen import build_vertex_eigenfunctions, canonical_form

log = logging.getLogger(__name__)

PROVENANCE_ORDER = ("constant", "vertex", "interior-pi", "interior-2pi")
CUTOFF_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class Entry:
    omega: float
    C: np.ndarray
    B: np.ndarray
    provenance: str
    label: str = ""

    @property
    def eigenvalue(self) -> float:
        return self.omega**2

    @property
    def amplitudes(self) -> np.ndarray:
        return self.C * np.exp(1j * self.B)

    def __call__(self, e, x):
        return self.C[e] * np.cos(self.B[e] + self.omega * np.asarray(x))


@dataclass(frozen=True, eq=False)
class Eigensystem:
    graph: Graph
    cutoff: float
    entries: tuple[Entry, ...]
    orthonormalized: bool = True

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Entry:
        return self.entries[i]

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([en.omega for en in self.entries])

    def frequency_groups(self) -> list[list[int]]:
        return group_degenerate(list(self.frequencies))

    def to_dict(self) -> dict:
        return {
            "graph": self.graph.to_dict(),
            "cutoff": self.cutoff,
            "entries": [
                {
                    "omega": en.omega,
                    "provenance": en.provenance,
                    "label": en.label,
                    "edges": [
                        {"edge": list(edge), "C": float(c), "B": float(b)}
                        for edge, c, b in zip(self.graph.edges, en.C, en.B)
                    ],
                }
                for en in self.entries
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Eigensystem":
        g = Graph.from_dict(data["graph"])
        entries = []
        for item in data["entries"]:
            edges = item["edges"]
            if [tuple(x["edge"]) for x in edges] != list(g.edges):
                raise ValueError("entry edges do not match the graph edge list")
            entries.append(
                Entry(
                    float(item["omega"]),
                    np.array([float(x["C"]) for x in edges]),
                    np.array([float(x["B"]) for x in edges]),
                    item["provenance"],
                    item.get("label", ""),
                )
            )
        return cls(g, float(data["cutoff"]), tuple(entries), True)


# -- closed-form integrals ---------------------------------------------------


def _cos_integral(phi, k):
    """``int_0^1 cos(phi + k x) dx``, stable at ``k = 0``."""
    phi = np.asarray(phi, dtype=float)
    k = np.asarray(k, dtype=float)
    return np.cos(phi + k / 2) * np.sinc(k / (2 * np.pi))


def edge_products(C1, B1, w1, C2, B2, w2) -> np.ndarray:
    """Per-edge ``int_0^1 C1 cos(B1 + w1 x) C2 cos(B2 + w2 x) dx``."""
    return 0.5 * C1 * C2 * (_cos_integral(B1 - B2, w1 - w2) + _cos_integral(B1 + B2, w1 + w2))


def entry_inner(a: Entry, b: Entry) -> float:
    return float(np.sum(edge_products(a.C, a.B, a.omega, b.C, b.B, b.omega)))


def entry_energy(a: Entry) -> float:
    """Dirichlet energy ``sum_e int (f')^2``; ``f' = omega C cos(B + pi/2 + omega x)``."""
    wC = a.omega * a.C
    Bp = a.B + np.pi / 2
    return float(np.sum(edge_products(wC, Bp, a.omega, wC, Bp, a.omega)))


def _amplitude_inner(omega: float):
    def ip(x: np.ndarray, y: np.ndarray) -> float:
        n = x.size // 2
        zx = x[:n] + 1j * x[n:]
        zy = y[:n] + 1j * y[n:]
        return float(np.sum(edge_products(np.abs(zx), np.angle(zx), omega, np.abs(zy), np.angle(zy), omega)))

    return ip


# -- assembly ----------------------------------------------------------------


def _ladder(start: float, step: float, cutoff: float) -> list[tuple[float, int]]:
    out, n = [], 0
    while start + step * n <= cutoff + CUTOFF_SLACK:
        out.append((start + step * n, n))
        n += 1
    return out


def assemble(g: Graph, cutoff: float = TWO_PI, tol: float = DEFAULT_TOL) -> Eigensystem:
    """Every eigenfunction with frequency in ``[0, cutoff]``, orthonormal in ``L2`` of the edges.

    Sources: vertex-supported sequences (both signs of ``arccos(lam) + 2 pi n``),
    the constant and bipartite ladders where they exist, and the pi / 2 pi
    classes of vertex-vanishing weightings on ``pi(2n+1)`` and ``2 pi (n+1)``.
    """
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    raw: list[tuple[float, int, int, np.ndarray, str, str]] = []

    def push(omega, z, prov, label):
        raw.append((omega, PROVENANCE_ORDER.index(prov), len(raw), z, prov, label))

    if g.interior_mask.any():
        for k, seq in enumerate(build_vertex_eigenfunctions(g, tol)):
            prov = "constant" if seq.principal.omega == 0.0 else "vertex"
            for w, C, B, n in seq.members(cutoff):
                push(w, C * np.exp(1j * B), prov, f"lam={seq.principal.lam:.12g} vec={k} n={n}")
    for k, W in enumerate(pi_basis(g, tol)):
        for w, n in _ladder(PI, TWO_PI, cutoff):
            push(w, 1j * W.C, "interior-pi", f"pi-basis={k} n={n}")
    for k, W in enumerate(two_pi_basis(g, tol)):
        for w, n in _ladder(TWO_PI, TWO_PI, cutoff):
            push(w, 1j * W.C, "interior-2pi", f"2pi-basis={k} n={n}")

    raw.sort(key=lambda r: (r[0], r[1], r[2]))
    entries: list[Entry] = []
    for group in group_degenerate([r[0] for r in raw], DEGENERACY_TOL):
        items = [raw[i] for i in group]
        omega = float(np.mean([it[0] for it in items]))
        vecs = [np.concatenate([it[3].real, it[3].imag]) for it in items]
        res = gram_schmidt(vecs, _amplitude_inner(omega), tol=1e-8)
        if res.dropped:
            log.warning("frequency %.12g: dropped %d dependent eigenfunctions", omega, len(res.dropped))
        for k, v in zip(res.kept, res.basis):
            n = v.size // 2
            C, B = canonical_form(v[:n] + 1j * v[n:])
            _, _, _, _, prov, label = items[k]
            entries.append(Entry(omega, C, B, prov, label))
    return Eigensystem(g, float(cutoff), tuple(entries), True)


# -- evaluation and residuals --------------------------------------------------


def evaluate(E: Eigensystem, i: int, e: int, x: float) -> float:
    if not 0 <= i < len(E):
        raise IndexError(f"entry index {i} out of range")
    if not 0 <= e < E.graph.n_edges:
        raise IndexError(f"edge index {e} out of range")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    return float(E[i](e, x))


@dataclass(frozen=True)
class FieldSample:
    x: np.ndarray
    values: np.ndarray  # (|E|, len(x))


def sample(E: Eigensystem, i: int, resolution: int = 32) -> FieldSample:
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    x = np.linspace(0.0, 1.0, resolution + 1)
    en = E[i]
    return FieldSample(x, en.C[:, None] * np.cos(en.B[:, None] + en.omega * x[None, :]))


def edge_condition_residual_coeffs(g: Graph, omega: float, C: np.ndarray, B: np.ndarray) -> float:
    """Largest sum of outward gradients at a non-boundary vertex."""
    total = np.zeros(g.n_vertices)
    if g.n_edges:
        tail, head = g.edge_array.T
        # f' = -omega C sin(B + omega x); outward is -f'(0) at the tail, f'(1) at the head
        np.add.at(total, tail, omega * C * np.sin(B))
        np.add.at(total, head, -omega * C * np.sin(B + omega))
    return float(np.abs(total[g.interior_mask]).max(initial=0.0))


def continuity_residual_coeffs(g: Graph, omega: float, C: np.ndarray, B: np.ndarray) -> float:
    """Largest spread of endpoint values at a vertex; at boundary vertices, the largest ``|f|``."""
    hi = np.full(g.n_vertices, -np.inf)
    lo = np.full(g.n_vertices, np.inf)
    if g.n_edges == 0:
        return 0.0
    tail, head = g.edge_array.T
    for idx, val in ((tail, C * np.cos(B)), (head, C * np.cos(B + omega))):
        np.maximum.at(hi, idx, val)
        np.minimum.at(lo, idx, val)
    touched = np.isfinite(hi)
    spread = np.where(touched, hi - lo, 0.0)
    bnd = ~g.interior_mask & touched
    spread[bnd] = np.maximum(np.abs(hi[bnd]), np.abs(lo[bnd]))
    return float(spread.max(initial=0.0))


def edge_condition_residual(E: Eigensystem, i: int) -> float:
    en = E[i]
    return edge_condition_residual_coeffs(E.graph, en.omega, en.C, en.B)


def continuity_residual(E: Eigensystem, i: int) -> float:
    en = E[i]
    return continuity_residual_coeffs(E.graph, en.omega, en.C, en.B)


def inner_product(E: Eigensystem, i: int, j: int) -> float:
    return entry_inner(E[i], E[j])


def rayleigh_residual(E: Eigensystem, i: int) -> float:
    """``|energy - omega^2 * norm^2|`` for entry ``i``."""
    en = E[i]
    return abs(entry_energy(en) - en.omega**2 * entry_inner(en, en))


def orthogonality_residuals(E: Eigensystem) -> tuple[float, float, list[tuple[int, int, float]]]:
    """``(max |<fi,fj>|, max |<fi,fi> - 1|, offending pairs)`` over the whole system."""
    n = len(E)
    G = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            G[i, j] = G[j, i] = entry_inner(E[i], E[j])
    off = G - np.diag(np.diag(G))
    bad = [(i, j, float(G[i, j])) for i in range(n) for j in range(i + 1, n) if abs(G[i, j]) > 1e-8]
    return float(np.abs(off).max(initial=0.0)), float(np.abs(np.diag(G) - 1).max(initial=0.0)), bad


# -- finite-difference oracle ----------------------------------------------------


def _fd_frequencies(g: Graph, m: int, k: int | None) -> np.ndarray:
    h = 1.0 / m
    node = {}
    for vi in np.flatnonzero(g.interior_mask):
        node[("v", int(vi))] = len(node)
    for e in range(g.n_edges):
        for j in range(1, m):
            node[("e", e, j)] = len(node)
    N = len(node)
    K = np.zeros((N, N))
    mass = np.zeros(N)
    for e, (u, v) in enumerate(g.edge_array):
        chain = [node.get(("v", int(u)))] + [node[("e", e, j)] for j in range(1, m)] + [node.get(("v", int(v)))]
        for a, b in zip(chain[:-1], chain[1:]):
            # a missing node is a Dirichlet boundary vertex
            for p, q in ((a, b), (b, a)):
                if p is not None:
                    K[p, p] += 1 / h
                    if q is not None:
                        K[p, q] -= 1 / h
        for j in range(1, m):
            mass[chain[j]] = h
        for end in (chain[0], chain[-1]):
            if end is not None:
                mass[end] += h / 2
    if N == 0:
        return np.zeros(0)
    s = 1 / np.sqrt(mass)
    H = s[:, None] * K * s[None, :]
    count = N if k is None else min(k, N)
    vals = scipy.linalg.eigh(H, eigvals_only=True, subset_by_index=[0, count - 1])
    return np.sqrt(np.clip(vals, 0.0, None))


def fd_oracle(g: Graph, m: int = 128, k: int | None = None, richardson: bool = False) -> np.ndarray:
    """Lowest ``k`` frequencies of a second-difference discretisation, ascending.

    Each edge is cut into ``m`` segments. A vertex row balances the
    finite-difference fluxes of its incident edges against a lumped mass of
    ``deg * h / 2``; boundary vertices are Dirichlet (value 0). The error
    is ``O(1/m^2)``; ``richardson`` combines ``m`` and ``2m`` to cancel the
    leading term.
    """
    if m < 8:
        raise ValueError("m must be at least 8")
    coarse = _fd_frequencies(g, m, k)
    if not richardson:
        return coarse
    fine = _fd_frequencies(g, 2 * m, k)
    return (4 * fine - coarse) / 3


# -- line graph lift ---------------------------------------------------------------


@dataclass(frozen=True)
class LiftResult:
    mu: float
    h: np.ndarray
    residual: float
    darts: tuple[tuple[int, int], ...] = field(default=())


def line_graph_lift(g: Graph, lam: float, g_vec: np.ndarray, tol: float = DEFAULT_TOL) -> LiftResult:
    """Lift an eigenpair of the row-normalised adjacency to the line graph: ``h[(u,v)] = g[v]``.

    ``g_vec`` runs over the non-boundary vertices of ``g``. The lifted
    operator moves ``(u, v)`` to each ``(v, x)`` with weight ``1/deg(v)``,
    which is the row-normalised line graph when ``g`` has no boundary.
    """
    At = row_normalized(g)
    g_vec = np.asarray(g_vec, dtype=float)
    scale = max(np.abs(g_vec).max(initial=0.0), 1e-300)
    if np.abs(At @ g_vec - lam * g_vec).max(initial=0.0) > tol * scale:
        raise ValueError("input is not an eigenpair of the row-normalised adjacency")
    gi = interior_graph(g)
    darts = tuple(directed_edges(gi))
    U = line_graph(gi)
    d_full = degrees(g)[g.interior_mask]
    heads = np.array([v for _, v in darts], dtype=int)
    if U.size:
        U = U / d_full[heads][:, None]
    h = g_vec[heads] if darts else np.zeros(0)
    residual = float(np.abs(U @ h - lam * h).max(initial=0.0)) if darts else 0.0
    if residual > tol * scale:
        raise ArithmeticError(f"line graph lift residual {residual:.3e} exceeds tolerance")
    return LiftResult(float(lam), h, residual, darts)
