import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgelap.eigensystem import edge_condition_residual_coeffs
from edgelap.graph import parse_graph
from edgelap.vertex_eigen import amplitude_phase, build_vertex_eigenfunctions, principal_frequency

from conftest import load, simple_graphs


def endpoint_oracle(g_u, g_v, omega):
    """Write f = a cos(wx) + b sin(wx) and solve f(0)=g_u, f(1)=g_v; return C cos B, C sin B."""
    a = g_u
    b = (g_v - g_u * math.cos(omega)) / math.sin(omega)
    return a, -b


def test_principal_frequency_examples():
    assert principal_frequency(0.0) == pytest.approx(math.pi / 2)
    assert principal_frequency(-0.5) == pytest.approx(2 * math.pi / 3)
    assert principal_frequency(-1 / 3) == pytest.approx(1.9106332362490186, abs=1e-12)


@pytest.mark.parametrize("lam", [1.0, -1.0, 1.5])
def test_principal_frequency_rejects_special_values(lam):
    with pytest.raises(ValueError):
        principal_frequency(lam)


@pytest.mark.parametrize(
    "g_u, g_v, omega, C, B",
    [
        (1.0, 0.0, math.pi / 2, 1.0, 0.0),
        (0.0, 1.0, math.pi / 2, -1.0, math.pi / 2),
        # endpoint system: C cos B = 1, C sin B = (cos w - 1)/sin w = -sqrt(3)
        (1.0, 1.0, 2 * math.pi / 3, 2.0, -math.pi / 3),
    ],
)
def test_amplitude_phase_examples(g_u, g_v, omega, C, B):
    c, b = amplitude_phase(g_u, g_v, omega)
    assert c == pytest.approx(C, abs=1e-14)
    assert b == pytest.approx(B, abs=1e-14)
    assert c * math.cos(b) == pytest.approx(g_u, abs=1e-14)
    assert c * math.cos(b + omega) == pytest.approx(g_v, abs=1e-14)


@given(
    st.floats(-3, 3, allow_nan=False),
    st.floats(-3, 3, allow_nan=False),
    st.floats(0.05, 2 * math.pi - 0.05).filter(lambda w: abs(w - math.pi) > 0.05),
)
@settings(max_examples=200)
def test_amplitude_phase_against_oracle(g_u, g_v, omega):
    if abs(g_u) + abs(g_v) < 1e-6:
        return
    C, B = amplitude_phase(g_u, g_v, omega)
    cc, cs = endpoint_oracle(g_u, g_v, omega)
    assert C * math.cos(B) == pytest.approx(cc, abs=1e-9)
    assert C * math.sin(B) == pytest.approx(cs, abs=1e-9 * max(1, abs(cs)))
    assert -math.pi / 2 < B <= math.pi / 2
    # magnitude identity: C^2 sin^2 w = g_u^2 + g_v^2 - 2 g_u g_v cos w
    lhs = C**2 * math.sin(omega) ** 2
    rhs = g_u**2 + g_v**2 - 2 * g_u * g_v * math.cos(omega)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


def test_amplitude_phase_domain_errors():
    with pytest.raises(ValueError):
        amplitude_phase(1.0, 0.0, math.pi)
    with pytest.raises(ValueError):
        amplitude_phase(0.0, 0.0, 1.0)


def _omegas(seqs):
    return sorted(round(s.principal.omega, 10) for s in seqs)


def test_build_triangle():
    seqs = build_vertex_eigenfunctions(load("triangle"))
    assert _omegas(seqs) == [0.0, round(2 * math.pi / 3, 10), round(2 * math.pi / 3, 10)]
    const = [s for s in seqs if s.principal.omega == 0.0][0].principal
    assert np.allclose(const.C, const.C[0]) and np.all(const.B == 0)


def test_build_c4():
    seqs = build_vertex_eigenfunctions(load("C4"))
    assert _omegas(seqs) == [0.0, round(math.pi / 2, 10), round(math.pi / 2, 10), round(math.pi, 10)]
    alt = [s.principal for s in seqs if s.principal.omega == math.pi][0]
    assert np.allclose(np.abs(alt.g), 0.5)
    for e, (u, v) in enumerate(alt.graph.edge_array):
        assert alt.g[u] == pytest.approx(-alt.g[v])
        assert alt(e, 0.0) == pytest.approx(alt.g[u])


def test_build_empty_interior():
    assert build_vertex_eigenfunctions(parse_graph("e 0 1\nb 0\nb 1")) == []


def test_build_with_boundary_omits_constant():
    seqs = build_vertex_eigenfunctions(load("triangle_pendant"))
    assert all(0 < s.principal.omega < math.pi for s in seqs)
    for s in seqs:
        assert s.principal.g[3] == 0.0


def test_sequence_members_both_branches():
    seqs = build_vertex_eigenfunctions(load("triangle"))
    s = [s for s in seqs if s.principal.omega > 0][0]
    freqs = [m[0] for m in s.members(4 * math.pi)]
    np.testing.assert_allclose(freqs, [2 * math.pi / 3, 4 * math.pi / 3, 8 * math.pi / 3, 10 * math.pi / 3])


def _check_invariants(seqs, tol=1e-9):
    for s in seqs:
        p = s.principal
        g = p.graph
        scale = np.abs(p.g).max()
        for e, (u, v) in enumerate(g.edge_array):
            assert abs(p(e, 0.0) - p.g[u]) <= tol
            assert abs(p(e, 1.0) - p.g[v]) <= tol
            if 0 < p.omega < math.pi:
                lhs = p.C[e] ** 2 * math.sin(p.omega) ** 2
                rhs = p.g[u] ** 2 + p.g[v] ** 2 - 2 * p.g[u] * p.g[v] * math.cos(p.omega)
                assert abs(lhs - rhs) <= 1e-10
        # vertex condition: sum over incident edges of f(neighbour) - f(v) cos w
        for vi in np.flatnonzero(g.interior_mask):
            nbrs = [b if a == vi else a for a, b in g.edge_array if vi in (a, b)]
            total = sum(p.g[n] - p.g[vi] * math.cos(p.omega) for n in nbrs)
            assert abs(total) <= tol * len(nbrs) * max(scale, 1) * max(abs(math.sin(p.omega)), 1)
        for w, C, B, _ in s.members(6 * math.pi):
            assert edge_condition_residual_coeffs(g, w, C, B) <= 1e-8
            ends0 = C * np.cos(B)
            ends1 = C * np.cos(B + w)
            np.testing.assert_allclose(ends0, p.g[g.edge_array[:, 0]], atol=tol)
            np.testing.assert_allclose(ends1, p.g[g.edge_array[:, 1]], atol=tol)


@pytest.mark.parametrize("name", ["triangle", "C4", "C12", "K4", "P3", "star4", "triangle_pendant"])
def test_invariants_on_fixtures(name):
    _check_invariants(build_vertex_eigenfunctions(load(name)))


@given(simple_graphs(boundary=True))
@settings(max_examples=40, deadline=None)
def test_invariants_random(g):
    _check_invariants(build_vertex_eigenfunctions(g))


def test_sequence_closure_under_two_pi_shift():
    for s in build_vertex_eigenfunctions(load("K4")):
        p = s.principal
        g = p.graph
        r0 = edge_condition_residual_coeffs(g, p.omega, p.C, p.B)
        r1 = edge_condition_residual_coeffs(g, p.omega + 2 * math.pi, p.C, p.B)
        assert abs(r1) <= 1e-8 and abs(r0) <= 1e-8
        np.testing.assert_allclose(p.C * np.cos(p.B + p.omega + 2 * math.pi), p.C * np.cos(p.B + p.omega), atol=1e-12)
