"""Dense two-phase tableau simplex with Bland's anti-cycling rule.

Solves ``min c.x  s.t.  A x = b, x >= 0``. Problem sizes here are at most a
couple of hundred columns, so a full tableau is fine.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndeterminateError

PIVOT_TOL = 1e-11


@dataclass
class LPSolution:
    x: np.ndarray
    fun: float
    status: str  # "optimal" | "infeasible" | "unbounded"
    iterations: int


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and T[r, col] != 0.0:
            T[r] -= T[r, col] * T[row]


def _run(T: np.ndarray, basis: list[int], n_cols: int, max_iter: int) -> tuple[str, int]:
    """Optimize the tableau in place; last row is the reduced-cost row."""
    for it in range(max_iter):
        cost = T[-1, :n_cols]
        entering = next((j for j in range(n_cols) if cost[j] < -PIVOT_TOL), None)
        if entering is None:
            return "optimal", it
        col = T[:-1, entering]
        rhs = T[:-1, -1]
        best, leaving = np.inf, None
        for r in range(col.shape[0]):
            if col[r] > PIVOT_TOL:
                ratio = rhs[r] / col[r]
                # Bland: smallest ratio, ties broken by smallest basic index
                if ratio < best - 1e-14 or (abs(ratio - best) <= 1e-14 and basis[r] < basis[leaving]):
                    best, leaving = ratio, r
        if leaving is None:
            return "unbounded", it
        _pivot(T, leaving, entering)
        basis[leaving] = entering
    raise IndeterminateError(f"simplex did not converge in {max_iter} pivots")


def solve(c, A, b, max_iter: int = 20000) -> LPSolution:
    c = np.asarray(c, dtype=float)
    A = np.array(A, dtype=float)
    b = np.array(b, dtype=float)
    m, n = A.shape
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1

    # phase I: artificial variables n..n+m-1
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    basis = list(range(n, n + m))
    _, it1 = _run(T, basis, n + m, max_iter)
    if -T[-1, -1] > 1e-9 * max(1.0, b.sum()):
        return LPSolution(np.zeros(n), np.nan, "infeasible", it1)

    # drive remaining artificials out of the basis; drop redundant rows
    keep = []
    for r in range(m):
        if basis[r] >= n:
            j = next((j for j in range(n) if abs(T[r, j]) > 1e-9), None)
            if j is None:
                continue
            _pivot(T, r, j)
            basis[r] = j
        keep.append(r)
    T2 = np.zeros((len(keep) + 1, n + 1))
    T2[:-1, :n] = T[keep, :n]
    T2[:-1, -1] = T[keep, -1]
    basis = [basis[r] for r in keep]
    T2[-1, :n] = c
    for r, j in enumerate(basis):
        T2[-1] -= c[j] * T2[r]
    status, it2 = _run(T2, basis, n, max_iter)
    x = np.zeros(n)
    for r, j in enumerate(basis):
        x[j] = T2[r, -1]
    return LPSolution(x, float(c @ x), status, it1 + it2)
