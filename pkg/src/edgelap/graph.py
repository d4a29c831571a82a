"""Graph model, edge-list ingestion and the derived combinatorial matrices.

Vertices carry arbitrary non-negative integer ids; every matrix uses the dense
internal order in which ids first appear. Edges keep the orientation given at
construction: the first endpoint is the ``x = 0`` end, the second the ``x = 1``
end. All edges have unit length.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx
import numpy as np


class GraphFormatError(ValueError):
    """Raised for malformed or invalid edge-list input."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with oriented edges and a separated boundary."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    boundary: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        seen = set()
        index = {v: i for i, v in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise GraphFormatError("duplicate vertex id")
        for u, v in self.edges:
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if u not in index or v not in index:
                raise GraphFormatError(f"edge ({u}, {v}) uses an undeclared vertex")
            key = frozenset((u, v))
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            seen.add(key)
        deg = self.degree_map
        for b in sorted(self.boundary):
            if b not in index:
                raise GraphFormatError(f"boundary vertex {b} is not in the graph")
            if deg[b] != 1:
                raise GraphFormatError(f"boundary vertex {b} has degree {deg[b]}, expected 1")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], boundary: Iterable[int] = ()) -> "Graph":
        edges = tuple((int(u), int(v)) for u, v in edges)
        order: dict[int, None] = {}
        for u, v in edges:
            order.setdefault(u, None)
            order.setdefault(v, None)
        return cls(tuple(order), edges, frozenset(int(b) for b in boundary))

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def degree_map(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """``(|E|, 2)`` array of internal endpoint indices (tail, head)."""
        if not self.edges:
            return np.zeros((0, 2), dtype=int)
        return np.array([(self.index[u], self.index[v]) for u, v in self.edges], dtype=int)

    @cached_property
    def interior_mask(self) -> np.ndarray:
        return np.array([v not in self.boundary for v in self.vertices], dtype=bool)

    @property
    def interior_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v not in self.boundary)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.vertices)
        G.add_edges_from(self.edges)
        return G

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "boundary": sorted(self.boundary),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        return cls(
            tuple(int(v) for v in data["vertices"]),
            tuple((int(u), int(v)) for u, v in data["edges"]),
            frozenset(int(b) for b in data.get("boundary", ())),
        )


# The interior graph is an ordinary Graph with an empty boundary.
InteriorGraph = Graph


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format (``e u v``, ``b v``, ``# comment``).

    Every problem found is collected and reported together, each with its
    line number.
    """
    errors: list[str] = []
    edges: list[tuple[int, int]] = []
    edge_lines: dict[frozenset, int] = {}
    boundary: dict[int, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        try:
            ids = [int(a) for a in args]
        except ValueError:
            errors.append(f"line {lineno}: non-integer vertex id in {raw.strip()!r}")
            continue
        if any(i < 0 for i in ids):
            errors.append(f"line {lineno}: vertex ids must be non-negative")
            continue
        if kind == "e" and len(ids) == 2:
            u, v = ids
            if u == v:
                errors.append(f"line {lineno}: self-loop at vertex {u}")
                continue
            key = frozenset((u, v))
            if key in edge_lines:
                errors.append(f"line {lineno}: duplicate edge ({u}, {v}), first declared on line {edge_lines[key]}")
                continue
            edge_lines[key] = lineno
            edges.append((u, v))
        elif kind == "b" and len(ids) == 1:
            boundary.setdefault(ids[0], lineno)
        else:
            errors.append(f"line {lineno}: malformed line {raw.strip()!r}")

    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    for b, lineno in boundary.items():
        if deg.get(b, 0) != 1:
            errors.append(f"line {lineno}: boundary vertex {b} has degree {deg.get(b, 0)}, expected 1")

    if errors:
        errors.sort(key=lambda msg: int(msg.split(":", 1)[0].split()[1]))
        raise GraphFormatError("\n".join(errors))
    return Graph.from_edges(edges, boundary)


@dataclass(frozen=True)
class ValidationReport:
    n_vertices: int
    n_edges: int
    n_interior_vertices: int
    n_interior_edges: int
    connected: bool
    interior_components: int
    interior_bipartite_components: int
    bipartite: bool
    boundary_separated: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def validate(g: Graph) -> ValidationReport:
    G = g.to_networkx()
    interior = interior_graph(g)
    Gi = interior.to_networkx()
    comps = list(nx.connected_components(Gi))
    bip = sum(1 for c in comps if nx.is_bipartite(Gi.subgraph(c)))
    deg = g.degree_map
    return ValidationReport(
        n_vertices=g.n_vertices,
        n_edges=g.n_edges,
        n_interior_vertices=interior.n_vertices,
        n_interior_edges=interior.n_edges,
        connected=g.n_vertices > 0 and nx.is_connected(G),
        interior_components=len(comps),
        interior_bipartite_components=bip,
        bipartite=bip == len(comps),
        boundary_separated=all(deg[b] == 1 for b in g.boundary),
    )


def adjacency(g: Graph) -> np.ndarray:
    n = g.n_vertices
    A = np.zeros((n, n))
    if g.n_edges:
        i, j = g.edge_array.T
        A[i, j] = 1.0
        A[j, i] = 1.0
    return A


def degrees(g: Graph) -> np.ndarray:
    return adjacency(g).sum(axis=1)


def interior_graph(g: Graph) -> Graph:
    """Drop boundary vertices together with their incident edges."""
    b = g.boundary
    edges = tuple(e for e in g.edges if e[0] not in b and e[1] not in b)
    return Graph(g.interior_vertices, edges, frozenset())


def row_normalized(g: Graph) -> np.ndarray:
    """Row-normalised adjacency over the non-boundary vertices of ``g``.

    Rows are divided by the full degree in ``g``. Without a boundary the rows
    sum to one. With a boundary, the links to (zero-valued) boundary vertices
    still count towards the degree, so rows touching the boundary sum to less
    than one.
    """
    A = adjacency(g)
    d = A.sum(axis=1)
    mask = g.interior_mask
    d_int = d[mask]
    if np.any(d_int == 0):
        bad = [v for v, dv in zip(g.interior_vertices, d_int) if dv == 0]
        raise ValueError(f"isolated interior vertices: {bad}")
    return A[np.ix_(mask, mask)] / d_int[:, None]


def directed_edges(g: Graph) -> list[tuple[int, int]]:
    """Directed edges as internal index pairs: edge k gives rows 2k (tail->head) and 2k+1."""
    out = []
    for u, v in g.edge_array:
        out.append((int(u), int(v)))
        out.append((int(v), int(u)))
    return out


def _successor_matrix(g: Graph, backtrack: bool) -> np.ndarray:
    darts = directed_edges(g)
    by_tail: dict[int, list[int]] = {}
    for k, (a, _) in enumerate(darts):
        by_tail.setdefault(a, []).append(k)
    M = np.zeros((len(darts), len(darts)))
    for k, (u, v) in enumerate(darts):
        for j in by_tail.get(v, ()):
            if backtrack or darts[j][1] != u:
                M[k, j] = 1.0
    return M


def line_graph(g: Graph) -> np.ndarray:
    """Adjacency of the line graph over directed edges, reversals included."""
    return _successor_matrix(g, backtrack=True)


def line_graph_normalized(g: Graph) -> np.ndarray:
    """Line graph adjacency with ``(u,v) -> (v,x)`` weighted by ``1/deg(v)``."""
    U = line_graph(g)
    if U.size == 0:
        return U
    d = degrees(g)
    heads = np.array([v for _, v in directed_edges(g)])
    return U / d[heads][:, None]


@dataclass(frozen=True)
class OrientedLineGraph:
    """Hashimoto (non-backtracking) matrix ``T`` over the directed edges."""

    darts: tuple[tuple[int, int], ...]
    T: np.ndarray

    @property
    def size(self) -> int:
        return len(self.darts)

    def reverse_index(self) -> np.ndarray:
        return np.arange(self.size) ^ 1


def oriented_line_graph(g: Graph) -> OrientedLineGraph:
    return OrientedLineGraph(tuple(directed_edges(g)), _successor_matrix(g, backtrack=False))


def incidence_unsigned(g: Graph) -> np.ndarray:
    """``M[v, e] = 1`` when ``e`` touches ``v``; rows run over non-boundary vertices."""
    M = np.zeros((g.n_vertices, g.n_edges))
    for e, (u, v) in enumerate(g.edge_array):
        M[u, e] = 1.0
        M[v, e] = 1.0
    return M[g.interior_mask]


def incidence_signed(g: Graph) -> np.ndarray:
    """``S[v, e]`` is +1 at the head (x=1 end), -1 at the tail; non-boundary rows only."""
    S = np.zeros((g.n_vertices, g.n_edges))
    for e, (u, v) in enumerate(g.edge_array):
        S[u, e] = -1.0
        S[v, e] = 1.0
    return S[g.interior_mask]
