"""Dense numerical kernels sized for desk-scale graphs.

The symmetric eigensolver is a cyclic Jacobi method with round-robin pair
ordering, so each round applies ``n/2`` disjoint rotations as one vectorised
update. Null spaces come from the SVD and are then put in a canonical basis
that depends only on the subspace.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .graph import Graph, row_normalized

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-9
DEGENERACY_TOL = 1e-8


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray  # columns

    def __iter__(self):
        return iter((self.values, self.vectors))


def _fix_signs(V: np.ndarray) -> np.ndarray:
    """Make the first entry of largest magnitude (to 1e-9) of every column positive."""
    V = V.copy()
    for k in range(V.shape[1]):
        col = np.abs(V[:, k])
        if col.size == 0:
            continue
        i = int(np.argmax(col >= col.max() * (1 - 1e-9)))
        if V[i, k] < 0:
            V[:, k] = -V[:, k]
    return V


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Rounds of disjoint index pairs covering every pair exactly once (circle method)."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        P, Q = [], []
        for k in range(m // 2):
            a, b = players[k], players[m - 1 - k]
            if a < n and b < n:
                P.append(min(a, b))
                Q.append(max(a, b))
        rounds.append((np.array(P, dtype=int), np.array(Q, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def sym_eig(A: np.ndarray, tol: float = DEFAULT_TOL, max_sweeps: int = 60) -> EigenDecomposition:
    """Full eigendecomposition of a real symmetric matrix by Jacobi rotations.

    Eigenvalues are returned in descending order; each eigenvector has its
    largest-magnitude entry positive.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    n = A.shape[0]
    scale = max(np.abs(A).max(initial=0.0), 1e-300)
    if np.abs(A - A.T).max(initial=0.0) > tol * scale:
        raise ValueError("matrix is not symmetric")
    A = (A + A.T) / 2
    V = np.eye(n)
    if n <= 1:
        return EigenDecomposition(np.diag(A).copy(), V)

    rounds = _round_robin(n)
    target = n * np.finfo(float).eps * np.linalg.norm(A)
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= target:
            break
        for P, Q in rounds:
            apq = A[P, Q]
            active = np.abs(apq) > 1e-300 * scale
            if not active.any():
                continue
            P, Q, apq = P[active], Q[active], apq[active]
            tau = (A[Q, Q] - A[P, P]) / (2 * apq)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1 + tau * tau))
            c = 1 / np.sqrt(1 + t * t)
            s = t * c
            rp, rq = A[P, :].copy(), A[Q, :].copy()
            A[P, :] = c[:, None] * rp - s[:, None] * rq
            A[Q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = A[:, P].copy(), A[:, Q].copy()
            A[:, P] = cp * c - cq * s
            A[:, Q] = cp * s + cq * c
            vp, vq = V[:, P].copy(), V[:, Q].copy()
            V[:, P] = vp * c - vq * s
            V[:, Q] = vp * s + vq * c
    else:
        raise ConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    values = np.diag(A).copy()
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values[order], _fix_signs(V[:, order]))


@dataclass(frozen=True)
class RandomWalkSpectrum:
    """Eigenpairs of the row-normalised adjacency over the non-boundary vertices."""

    values: np.ndarray
    vectors: np.ndarray  # columns; unit Euclidean norm
    vertices: tuple[int, ...]
    matrix: np.ndarray

    def residual(self) -> float:
        if self.values.size == 0:
            return 0.0
        R = self.matrix @ self.vectors - self.vectors * self.values
        return float(np.abs(R).max())


def rw_eig(g: Graph, tol: float = DEFAULT_TOL) -> RandomWalkSpectrum:
    """Spectrum of the row-normalised adjacency via its symmetric similar matrix.

    ``D^-1 A`` is similar to ``D^-1/2 A D^-1/2``; the symmetric eigenvectors
    ``y`` map back through ``g = D^-1/2 y``.
    """
    At = row_normalized(g)
    mask = g.interior_mask
    A = np.zeros((g.n_vertices, g.n_vertices))
    for u, v in g.edge_array:
        A[u, v] = A[v, u] = 1.0
    d = A.sum(axis=1)[mask]
    Dm = 1 / np.sqrt(d)
    Sym = Dm[:, None] * A[np.ix_(mask, mask)] * Dm[None, :]
    values, Y = sym_eig(Sym, tol)
    G = Dm[:, None] * Y
    if G.size:
        G = G / np.linalg.norm(G, axis=0)
    spec = RandomWalkSpectrum(values, _fix_signs(G), g.interior_vertices, At)
    if spec.residual() > tol * max(1.0, np.abs(At).sum(axis=1).max(initial=0.0)):
        raise ConvergenceError(f"random-walk eigenpair residual {spec.residual():.3e} exceeds tolerance")
    return spec


def group_degenerate(values: Sequence[float], tol: float = DEGENERACY_TOL) -> list[list[int]]:
    """Indices of a sorted sequence grouped into runs whose neighbours differ by at most ``tol``."""
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        if groups and abs(v - values[groups[-1][-1]]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


@dataclass(frozen=True)
class GramSchmidtResult:
    basis: list[np.ndarray]
    kept: list[int]
    dropped: list[int]


def gram_schmidt(
    vectors: Sequence[np.ndarray],
    inner: Callable[[np.ndarray, np.ndarray], float] | None = None,
    tol: float = 1e-10,
) -> GramSchmidtResult:
    """Modified Gram-Schmidt with one re-orthogonalisation pass.

    A vector whose residual norm falls below ``tol`` times its original norm
    is treated as dependent and dropped.
    """
    ip = inner or (lambda a, b: float(np.dot(a, b)))
    basis: list[np.ndarray] = []
    kept, dropped = [], []
    for k, v in enumerate(vectors):
        w = np.array(v, dtype=float)
        norm0 = np.sqrt(max(ip(w, w), 0.0))
        if norm0 == 0.0:
            dropped.append(k)
            continue
        for _ in range(2):
            for q in basis:
                w = w - ip(q, w) * q
        norm = np.sqrt(max(ip(w, w), 0.0))
        if norm <= tol * norm0:
            dropped.append(k)
            continue
        basis.append(w / norm)
        kept.append(k)
    if dropped:
        log.debug("gram_schmidt dropped dependent vectors %s", dropped)
    return GramSchmidtResult(basis, kept, dropped)


def _rref_rows(M: np.ndarray, tol: float) -> np.ndarray:
    """Reduced row echelon form of a full-row-rank matrix (partial pivoting)."""
    R = M.copy()
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(R[r:, c])))
        if abs(R[p, c]) <= tol:
            continue
        R[[r, p]] = R[[p, r]]
        R[r] /= R[r, c]
        others = np.arange(rows) != r
        R[others] -= np.outer(R[others, c], R[r])
        r += 1
    return R[:r]


def nullspace(A: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of ``{x : A x = 0}``.

    Singular values at or below ``tol`` times the largest count as zero. The
    returned basis is canonical: Gram-Schmidt applied to the reduced row
    echelon form of the null space, with positive leading entries.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[1]
    if A.shape[0] == 0 or not np.any(A):
        N = np.eye(n)
    else:
        _, s, Vt = np.linalg.svd(A)
        rank = int(np.sum(s > tol * s[0]))
        N = Vt[rank:].T
    if N.shape[1] == 0:
        return np.zeros((n, 0))
    R = _rref_rows(N.T, 1e-8)
    basis = gram_schmidt(list(R)).basis
    return _fix_signs(np.column_stack(basis))


def determinant(A: np.ndarray, tol: float = 1e-12) -> float | complex:
    """Determinant by Gaussian elimination with partial pivoting.

    A pivot column whose largest entry is at or below ``tol`` times the
    matrix max-norm makes the result exactly zero.
    """
    M = np.array(A, dtype=complex if np.iscomplexobj(A) else float)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("matrix must be square")
    if n == 0:
        return M.dtype.type(1)
    scale = np.abs(M).sum(axis=1).max()
    det = M.dtype.type(1)
    for k in range(n):
        p = k + int(np.argmax(np.abs(M[k:, k])))
        if abs(M[p, k]) <= tol * scale:
            return M.dtype.type(0)
        if p != k:
            M[[k, p]] = M[[p, k]]
            det = -det
        det *= M[k, k]
        M[k + 1 :, k:] -= np.outer(M[k + 1 :, k] / M[k, k], M[k, k:])
    return det
