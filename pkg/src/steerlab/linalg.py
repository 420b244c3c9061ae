"""Small dense complex linear algebra for qubit systems (dimension <= 8).

Matrices are plain ``numpy.ndarray`` objects of dtype complex128. Subsystems
are indexed row-major with party A slowest, i.e. the same order as
``numpy.kron(a, kron(b, c))``.
"""
from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, DomainError

HERMITIAN_TOL = 1e-9
PSD_TOL = 1e-9
EQ_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def kron(*ops) -> np.ndarray:
    """Tensor product of one or more matrices, first factor slowest."""
    if not ops:
        raise ValueError("kron needs at least one operand")
    return reduce(np.kron, (as_matrix(o) for o in ops))


def dag(m) -> np.ndarray:
    return np.conj(np.transpose(m))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    a = as_matrix(m)
    return bool(np.max(np.abs(a - dag(a)), initial=0.0) <= tol)


def eigvals_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    a = as_matrix(m)
    if not is_hermitian(a, tol):
        raise DomainError("eigvals_hermitian requires a Hermitian matrix")
    # symmetrize so eigvalsh does not silently drop an antihermitian residue
    return np.linalg.eigvalsh((a + dag(a)) / 2)


def is_psd(m, tol: float = PSD_TOL) -> bool:
    a = as_matrix(m)
    if not is_hermitian(a, tol):
        return False
    return bool(eigvals_hermitian(a, tol)[0] >= -tol)


def _check_dims(m: np.ndarray, dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims) or int(np.prod(dims)) != m.shape[0]:
        raise DimensionError(f"subsystem dims {dims} do not match matrix size {m.shape[0]}")
    return dims


def partial_trace(m, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    The kept subsystems stay in their original order regardless of the order
    given in ``keep``.
    """
    a = as_matrix(m)
    dims = _check_dims(a, dims)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise DimensionError(f"keep indices {keep} out of range for {n} subsystems")
    t = a.reshape(dims + dims)
    # einsum labels: row index i_k, column index j_k; traced ones share a label
    letters = iter("abcdefghijklmnopqrstuvwxyz")
    rows = [next(letters) for _ in range(n)]
    cols = [rows[k] if k not in keep else next(letters) for k in range(n)]
    out = [rows[k] for k in keep] + [cols[k] for k in keep]
    r = np.einsum("".join(rows) + "".join(cols) + "->" + "".join(out), t)
    d = int(np.prod([dims[k] for k in keep])) if keep else 1
    return r.reshape(d, d)


def partial_transpose(m, dims: Sequence[int], on: int) -> np.ndarray:
    """Transpose subsystem ``on`` only."""
    a = as_matrix(m)
    dims = _check_dims(a, dims)
    n = len(dims)
    if not 0 <= on < n:
        raise DimensionError(f"subsystem index {on} out of range")
    t = a.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[on], axes[n + on] = axes[n + on], axes[on]
    return t.transpose(axes).reshape(a.shape)


def bloch_operator(vec) -> np.ndarray:
    """``n . sigma`` for a real 3-vector ``n``."""
    x, y, z = (float(c) for c in vec)
    return x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z


def bloch_components(m) -> np.ndarray:
    """Real coefficients ``k`` with ``Tr(m sigma_i) = k_i``."""
    a = as_matrix(m)
    return np.array([np.trace(a @ s).real for s in PAULIS])


def unit(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=float)
    return v / np.linalg.norm(v)
