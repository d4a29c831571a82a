"""Verification suites over a graph and its assembled eigensystem."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import eigensystem as es
from .edge_eigen import hashimoto_pm1_eigenspaces, pi_basis, span_residual, two_pi_basis, w_to_olg_vector
from .graph import Graph, interior_graph, oriented_line_graph, validate
from .kernels import bass_zeta_recip, ihara_zeta_recip, spectral_radius_bound
from .numerics import rw_eig

EDGE_TOL = 1e-8
ORTHO_TOL = 1e-8
RAYLEIGH_TOL = 1e-8
HASHIMOTO_TOL = 1e-9
LIFT_TOL = 1e-9
ZETA_RTOL = 1e-8
ORACLE_TOL = 5e-3


@dataclass
class SuiteResult:
    name: str
    passed: bool
    value: float
    threshold: float
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "value": self.value,
            "threshold": self.threshold,
            "detail": self.detail,
        }


@dataclass
class Report:
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "suites": [s.to_dict() for s in self.suites]}


def _suite(name, value, threshold, **detail) -> SuiteResult:
    return SuiteResult(name, bool(value <= threshold), float(value), float(threshold), detail)


def eigensystem_suites(E: es.Eigensystem) -> list[SuiteResult]:
    n = len(E)
    edge = [es.edge_condition_residual(E, i) for i in range(n)]
    cont = [es.continuity_residual(E, i) for i in range(n)]
    ray = [es.rayleigh_residual(E, i) for i in range(n)]
    off, norm, bad = es.orthogonality_residuals(E)
    worst = lambda xs: max(xs, default=0.0)  # noqa: E731
    return [
        _suite("edge_condition", worst(edge), EDGE_TOL, worst_entry=int(np.argmax(edge)) if edge else None),
        _suite("continuity", worst(cont), EDGE_TOL),
        _suite("orthogonality", off, ORTHO_TOL, failing_pairs=[[i, j] for i, j, _ in bad[:20]]),
        _suite("normalization", norm, ORTHO_TOL),
        _suite("rayleigh", worst(ray), RAYLEIGH_TOL),
    ]


def dimension_suite(g: Graph) -> SuiteResult:
    gi = interior_graph(g)
    rep = validate(g)
    n2, n1 = len(two_pi_basis(gi)), len(pi_basis(gi))
    exp2 = gi.n_edges - gi.n_vertices + rep.interior_components
    exp1 = gi.n_edges - gi.n_vertices + rep.interior_bipartite_components
    mismatch = abs(n2 - exp2) + abs(n1 - exp1)
    return _suite(
        "dimension_counts",
        mismatch,
        0,
        two_pi=n2,
        pi=n1,
        expected_two_pi=exp2,
        expected_pi=exp1,
        grounded_two_pi=len(two_pi_basis(g)),
        grounded_pi=len(pi_basis(g)),
    )


def hashimoto_suites(g: Graph) -> list[SuiteResult]:
    gi = interior_graph(g)
    olg = oriented_line_graph(gi)
    plus_vecs, minus_vecs, worst = [], [], 0.0
    for W in two_pi_basis(gi) + pi_basis(gi):
        v = w_to_olg_vector(W, olg, tol=np.inf)
        worst = max(worst, v.residual)
        (plus_vecs if v.lam > 0 else minus_vecs).append(v.s)
    spaces = hashimoto_pm1_eigenspaces(olg)
    contain = max(span_residual(spaces.plus, plus_vecs), span_residual(spaces.minus, minus_vecs))
    return [
        _suite("hashimoto_forward", worst, HASHIMOTO_TOL, vectors=len(plus_vecs) + len(minus_vecs)),
        _suite(
            "hashimoto_containment",
            contain,
            1e-8,
            null_T_minus_I=spaces.dims[0],
            null_T_plus_I=spaces.dims[1],
            constructed_plus=len(plus_vecs),
            constructed_minus=len(minus_vecs),
        ),
    ]


def lift_suite(g: Graph) -> SuiteResult:
    worst, count = 0.0, 0
    graphs = [g] if not g.boundary else [g, interior_graph(g)]
    for h in graphs:
        if not h.interior_mask.any():
            continue
        spec = rw_eig(h)
        for k, lam in enumerate(spec.values):
            res = es.line_graph_lift(h, lam, spec.vectors[:, k], tol=np.inf)
            worst = max(worst, res.residual)
            count += 1
    return _suite("line_graph_lift", worst, LIFT_TOL, eigenpairs=count)


def zeta_samples(g: Graph, count: int = 20, seed: int = 0) -> np.ndarray:
    rho = spectral_radius_bound(g)
    radius = 0.9 / rho if rho > 0 else 0.9
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(size=count))
    theta = rng.uniform(0, 2 * np.pi, size=count)
    return r * np.exp(1j * theta)


def zeta_suite(g: Graph, count: int = 20) -> SuiteResult:
    gi = interior_graph(g)
    worst = 0.0
    for u in zeta_samples(gi, count):
        a = ihara_zeta_recip(gi, complex(u), check=False)
        b = bass_zeta_recip(gi, complex(u))
        worst = max(worst, abs(a - b) / max(abs(a), abs(b), 1e-300))
    return _suite("zeta_bass", worst, ZETA_RTOL, samples=count)


def oracle_suite(E: es.Eigensystem, m: int = 128) -> SuiteResult:
    f = E.frequencies
    o = es.fd_oracle(E.graph, m, len(f) + 1)
    diff = float(np.abs(f - o[: len(f)]).max(initial=0.0)) if len(o) >= len(f) else np.inf
    extra = len(o) > len(f) and o[len(f)] <= E.cutoff + ORACLE_TOL
    return _suite(
        "oracle_agreement",
        np.inf if extra else diff,
        ORACLE_TOL,
        m=m,
        count=len(f),
        next_oracle=float(o[len(f)]) if len(o) > len(f) else None,
    )


def full_report(E: es.Eigensystem, oracle_m: int | None = None) -> Report:
    g = E.graph
    suites = eigensystem_suites(E)
    suites.append(dimension_suite(g))
    suites.extend(hashimoto_suites(g))
    suites.append(lift_suite(g))
    suites.append(zeta_suite(g))
    if oracle_m:
        suites.append(oracle_suite(E, oracle_m))
    return Report(suites)
