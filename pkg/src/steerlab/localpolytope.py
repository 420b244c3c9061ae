"""Membership in the local (LHV) polytope via deterministic strategies.

``is_local`` minimizes the infinity-norm distance between a table and the
convex hull of deterministic tables. When that distance is positive a second
LP, the dual, returns a functional ``w`` with ``|w|_1 <= 1`` such that
``w.p - max_vertex w.v`` equals the distance.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import numpy as np

from . import simplex
from .correlations import CorrelationTable
from .errors import DomainError, IndeterminateError

DEFAULT_TOL = float(os.environ.get("STEERLAB_TOL", 1e-8))


@dataclass(frozen=True)
class DeterministicStrategy:
    """``outputs[k][x]`` is party ``k``'s outcome (+1/-1) for setting ``x``."""

    outputs: tuple[tuple[int, int], ...]

    def table(self) -> CorrelationTable:
        n = len(self.outputs)
        p = np.zeros((2,) * (2 * n))
        for xs in itertools.product((0, 1), repeat=n):
            outs = tuple(0 if self.outputs[k][x] == 1 else 1 for k, x in enumerate(xs))
            p[xs + outs] = 1.0
        return CorrelationTable(p)


def deterministic_strategies(n_parties: int) -> list[DeterministicStrategy]:
    if n_parties not in (2, 3):
        raise DomainError(f"only 2 or 3 parties supported, got {n_parties}")
    local = list(itertools.product((1, -1), repeat=2))
    return [DeterministicStrategy(s) for s in itertools.product(local, repeat=n_parties)]


def deterministic_vertices(n_parties: int) -> list[CorrelationTable]:
    return [s.table() for s in deterministic_strategies(n_parties)]


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    distance: float
    weights: np.ndarray | None = None
    witness: np.ndarray | None = None
    witness_bound: float | None = None
    witness_value: float | None = None

    def reconstruct(self, n_parties: int) -> np.ndarray:
        verts = np.array([v.probs.ravel() for v in deterministic_vertices(n_parties)])
        return (self.weights @ verts).reshape((2,) * (2 * n_parties))


def _vertex_matrix(n: int) -> np.ndarray:
    # columns are vertices
    return np.array([v.probs.ravel() for v in deterministic_vertices(n)]).T


def _primal(V: np.ndarray, p: np.ndarray):
    """min t  s.t.  |V w - p|_inf <= t, sum w = 1, w >= 0."""
    N, m = V.shape
    # columns: w (m), t, s_plus (N), s_minus (N)
    n_cols = m + 1 + 2 * N
    A = np.zeros((2 * N + 1, n_cols))
    b = np.zeros(2 * N + 1)
    A[:N, :m] = V
    A[:N, m] = -1.0
    A[:N, m + 1:m + 1 + N] = np.eye(N)
    b[:N] = p
    A[N:2 * N, :m] = V
    A[N:2 * N, m] = 1.0
    A[N:2 * N, m + 1 + N:] = -np.eye(N)
    b[N:2 * N] = p
    A[-1, :m] = 1.0
    b[-1] = 1.0
    c = np.zeros(n_cols)
    c[m] = 1.0
    sol = simplex.solve(c, A, b)
    if sol.status != "optimal":
        raise IndeterminateError(f"locality LP ended with status {sol.status}")
    return sol.x[:m], sol.x[m]


def _dual(V: np.ndarray, p: np.ndarray):
    """max w.p - beta  s.t.  w.v_k <= beta for all k, |w|_1 <= 1."""
    N, m = V.shape
    # columns: w_plus (N), w_minus (N), beta_plus, beta_minus, r (m), q
    n_cols = 2 * N + 2 + m + 1
    A = np.zeros((m + 1, n_cols))
    b = np.zeros(m + 1)
    A[:m, :N] = V.T
    A[:m, N:2 * N] = -V.T
    A[:m, 2 * N] = -1.0
    A[:m, 2 * N + 1] = 1.0
    A[:m, 2 * N + 2:2 * N + 2 + m] = np.eye(m)
    A[m, :2 * N] = 1.0
    A[m, -1] = 1.0
    b[m] = 1.0
    c = np.zeros(n_cols)
    c[:N] = -p
    c[N:2 * N] = p
    c[2 * N] = 1.0
    c[2 * N + 1] = -1.0
    sol = simplex.solve(c, A, b)
    if sol.status != "optimal":
        raise IndeterminateError(f"witness LP ended with status {sol.status}")
    w = sol.x[:N] - sol.x[N:2 * N]
    return w, -sol.fun


def is_local(t: CorrelationTable, tol: float = DEFAULT_TOL) -> LPResult:
    """Decide whether ``t`` lies (within ``tol``) in the local polytope.

    Boundary points count as local.
    """
    n = t.n_parties
    V = _vertex_matrix(n)
    p = t.probs.ravel()
    weights, dist = _primal(V, p)
    if dist <= tol:
        weights = np.clip(weights, 0.0, None)
        return LPResult(True, float(dist), weights=weights / weights.sum())
    w, gap = _dual(V, p)
    bound = float(np.max(w @ V))
    return LPResult(
        False, float(dist),
        witness=w.reshape(t.probs.shape), witness_bound=bound, witness_value=float(w @ p),
    )
