import numpy as np
import pytest
from hypothesis import given, settings

from edgelap.graph import (
    Graph,
    GraphFormatError,
    adjacency,
    degrees,
    directed_edges,
    incidence_signed,
    incidence_unsigned,
    interior_graph,
    line_graph,
    oriented_line_graph,
    parse_graph,
    row_normalized,
    validate,
)

from conftest import load, simple_graphs

TRIANGLE = "e 0 1\ne 1 2\ne 2 0\n"


def brute_successors(g, backtrack):
    """Enumerate (u,v)->(w,x) pairs directly from the definition."""
    darts = directed_edges(g)
    pairs = set()
    for i, (u, v) in enumerate(darts):
        for j, (w, x) in enumerate(darts):
            if v == w and (backtrack or x != u):
                pairs.add((i, j))
    return pairs


# -- parsing -------------------------------------------------------------------


def test_parse_triangle():
    g = parse_graph(TRIANGLE)
    assert g.vertices == (0, 1, 2)
    assert g.edges == ((0, 1), (1, 2), (2, 0))
    assert g.boundary == frozenset()


def test_parse_boundary_leaf():
    g = parse_graph("e 0 1\nb 1\n")
    assert g.boundary == {1}


def test_parse_rejects_boundary_of_degree_two():
    with pytest.raises(GraphFormatError, match=r"line 3: boundary vertex 1 has degree 2"):
        parse_graph("e 0 1\ne 1 2\nb 1\n")


@pytest.mark.parametrize(
    "text, message",
    [
        ("e 0 0\n", "line 1: self-loop"),
        ("e 0 1\ne 1 0\n", "line 2: duplicate edge"),
        ("e 0\n", "line 1: malformed"),
        ("q 1 2\n", "line 1: malformed"),
        ("e a b\n", "line 1: non-integer"),
        ("e -1 2\n", "line 1: vertex ids must be non-negative"),
        ("e 0 1\nb 7\n", "line 2: boundary vertex 7 has degree 0"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(GraphFormatError, match=message):
        parse_graph(text)


def test_parse_comments_blank_lines_and_id_order():
    g = parse_graph("# header\n\ne 10 3   # trailing\n\ne 3 7\n")
    assert g.vertices == (10, 3, 7)
    assert g.edges == ((10, 3), (3, 7))
    np.testing.assert_array_equal(g.edge_array, [[0, 1], [1, 2]])


def test_graph_constructor_validates():
    with pytest.raises(GraphFormatError):
        Graph.from_edges([(0, 1), (1, 2)], boundary=[1])
    with pytest.raises(GraphFormatError):
        Graph.from_edges([(0, 1), (0, 1)])


# -- validation ------------------------------------------------------------------


def test_validate_triangle():
    r = validate(load("triangle"))
    assert r.connected and not r.bipartite
    assert (r.n_vertices, r.n_edges) == (3, 3)


def test_validate_c4():
    r = validate(load("C4"))
    assert r.connected and r.bipartite


def test_validate_disjoint_edges():
    r = validate(parse_graph("e 0 1\ne 2 3\n"))
    assert not r.connected
    assert r.interior_components == 2


def test_validate_pendant_uses_interior_for_bipartiteness():
    r = validate(load("triangle_pendant"))
    assert r.boundary_separated
    assert (r.n_interior_vertices, r.n_interior_edges) == (3, 3)
    assert not r.bipartite


# -- matrices -------------------------------------------------------------------


def test_adjacency_triangle():
    g = load("triangle")
    np.testing.assert_array_equal(adjacency(g), np.ones((3, 3)) - np.eye(3))
    np.testing.assert_array_equal(degrees(g), [2, 2, 2])


def test_adjacency_single_edge():
    np.testing.assert_array_equal(adjacency(parse_graph("e 0 1")), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(degrees(parse_graph("e 0 1")), [1, 1])


def test_degrees_star():
    np.testing.assert_array_equal(degrees(load("star4")), [3, 1, 1, 1])


@pytest.mark.parametrize("name, d", [("triangle", 2), ("K4", 3)])
def test_row_normalized_regular(name, d):
    g = load(name)
    np.testing.assert_allclose(row_normalized(g), adjacency(g) / d)


def test_row_normalized_path_middle_row():
    np.testing.assert_allclose(row_normalized(load("P3"))[1], [0.5, 0, 0.5])


def test_row_normalized_with_boundary_keeps_full_degree():
    At = row_normalized(load("triangle_pendant"))
    assert At.shape == (3, 3)
    np.testing.assert_allclose(At.sum(axis=1), [2 / 3, 1, 1])


# -- interior graph ----------------------------------------------------------------


def test_interior_graph_examples():
    tri = load("triangle")
    assert interior_graph(tri) == tri
    gi = interior_graph(parse_graph("e 0 1\nb 1"))
    assert gi.vertices == (0,) and gi.edges == ()
    assert interior_graph(load("triangle_pendant")).edges == load("triangle").edges


@given(simple_graphs(boundary=True))
@settings(max_examples=60, deadline=None)
def test_interior_graph_idempotent(g):
    gi = interior_graph(g)
    assert interior_graph(gi) == gi
    assert not (set(gi.vertices) & g.boundary)


# -- line graphs ----------------------------------------------------------------------


def test_line_graph_single_edge():
    np.testing.assert_array_equal(line_graph(parse_graph("e 0 1")), [[0, 1], [1, 0]])


def test_line_graph_triangle_out_degrees():
    U = line_graph(load("triangle"))
    assert U.shape == (6, 6)
    np.testing.assert_array_equal(U.sum(axis=1), 2)
    assert set(zip(*np.nonzero(U))) == brute_successors(load("triangle"), True)


def test_line_graph_path():
    g = load("P3")
    darts = directed_edges(g)
    U = line_graph(g)
    succ = {darts[j] for j in np.flatnonzero(U[darts.index((0, 1))])}
    assert succ == {(1, 0), (1, 2)}


def test_olg_triangle_is_two_directed_three_cycles():
    T = oriented_line_graph(load("triangle")).T
    np.testing.assert_array_equal(T.sum(axis=0), 1)
    np.testing.assert_array_equal(T.sum(axis=1), 1)
    assert np.trace(T) == 0 and np.trace(T @ T) == 0
    np.testing.assert_array_equal(np.linalg.matrix_power(T, 3), np.eye(6))
    # tails of successive darts follow the two orientations of the cycle
    darts = oriented_line_graph(load("triangle")).darts
    k = darts.index((0, 1))
    orbit = [darts[k]]
    for _ in range(2):
        k = int(np.flatnonzero(T[k])[0])
        orbit.append(darts[k])
    assert orbit == [(0, 1), (1, 2), (2, 0)]


def test_olg_single_edge_is_zero():
    np.testing.assert_array_equal(oriented_line_graph(parse_graph("e 0 1")).T, np.zeros((2, 2)))


def test_olg_star_inward_edges():
    olg = oriented_line_graph(load("star4"))
    for k, (u, v) in enumerate(olg.darts):
        expected = 2 if v == 0 else 0
        assert olg.T[k].sum() == expected


@given(simple_graphs())
@settings(max_examples=80, deadline=None)
def test_line_graph_properties(g):
    d = degrees(g)
    olg = oriented_line_graph(g)
    U = line_graph(g)
    heads = np.array([v for _, v in olg.darts])
    np.testing.assert_array_equal(olg.T.sum(axis=1), d[heads] - 1)
    np.testing.assert_array_equal(U.sum(axis=1), d[heads])
    diff = U - olg.T
    assert diff.min() == 0 and diff.sum() == 2 * g.n_edges
    np.testing.assert_array_equal(np.flatnonzero(diff.ravel()), np.arange(olg.size) * olg.size + olg.reverse_index())
    assert set(zip(*np.nonzero(olg.T))) == brute_successors(g, False)


# -- incidence ----------------------------------------------------------------------


def test_incidence_single_edge():
    g = parse_graph("e 0 1")
    np.testing.assert_array_equal(incidence_unsigned(g), [[1], [1]])
    np.testing.assert_array_equal(incidence_signed(g), [[-1], [1]])


@given(simple_graphs())
@settings(max_examples=60, deadline=None)
def test_incidence_row_sums_and_vertex_sums(g):
    M, S = incidence_unsigned(g), incidence_signed(g)
    np.testing.assert_array_equal(M.sum(axis=1), degrees(g))
    indeg = np.bincount(g.edge_array[:, 1], minlength=g.n_vertices)
    outdeg = np.bincount(g.edge_array[:, 0], minlength=g.n_vertices)
    np.testing.assert_array_equal(S.sum(axis=1), indeg - outdeg)
    c = np.random.default_rng(g.n_edges).normal(size=g.n_edges)
    for v in range(g.n_vertices):
        plain = sum(c[e] for e, (a, b) in enumerate(g.edge_array) if v in (a, b))
        signed = sum((1 if b == v else -1) * c[e] for e, (a, b) in enumerate(g.edge_array) if v in (a, b))
        assert np.isclose((M @ c)[v], plain)
        assert np.isclose((S @ c)[v], signed)


def test_incidence_drops_boundary_rows():
    g = load("triangle_pendant")
    assert incidence_unsigned(g).shape == (3, 4)
    assert incidence_signed(g).shape == (3, 4)
