"""Two- and three-qubit states: Bell states, Werner, GHZ and their noisy versions."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .errors import DimensionError, DomainError, UnsupportedError

_S = 1 / np.sqrt(2)

# computational basis |00>,|01>,|10>,|11>
BELL_KETS = {
    "phi+": np.array([_S, 0, 0, _S], dtype=complex),
    "phi-": np.array([_S, 0, 0, -_S], dtype=complex),
    "psi+": np.array([0, _S, _S, 0], dtype=complex),
    "psi-": np.array([0, _S, -_S, 0], dtype=complex),
}
GHZ_KET = np.zeros(8, dtype=complex)
GHZ_KET[0] = GHZ_KET[7] = _S

PURE_IDS = ("singlet", "ghz") + tuple(f"bell:{k}" for k in BELL_KETS)
NOISY_IDS = ("werner", "noisy_ghz") + tuple(f"noisy_bell:{k}" for k in BELL_KETS)
STATE_IDS = PURE_IDS + NOISY_IDS


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray
    dims: tuple[int, ...]
    label: str = ""
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        m = la.as_matrix(self.matrix)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if int(np.prod(self.dims)) != m.shape[0]:
            raise DimensionError(f"dims {self.dims} do not match matrix size {m.shape[0]}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    def validate(self, tol: float = la.PSD_TOL) -> None:
        if not la.is_psd(self.matrix, tol):
            raise DomainError("density matrix is not Hermitian PSD")
        if abs(np.trace(self.matrix) - 1) > la.EQ_TOL * self.dim:
            raise DomainError("density matrix trace differs from 1")

    def reduced(self, keep) -> np.ndarray:
        return la.partial_trace(self.matrix, self.dims, keep)


def projector(ket) -> np.ndarray:
    k = np.asarray(ket, dtype=complex)
    return np.outer(k, k.conj())


def maximally_mixed(n_qubits: int) -> DensityMatrix:
    d = 2**n_qubits
    return DensityMatrix(np.eye(d, dtype=complex) / d, (2,) * n_qubits, label=f"mixed{n_qubits}")


def _mix(pure: np.ndarray, v: float) -> np.ndarray:
    d = pure.shape[0]
    return v * pure + (1 - v) * np.eye(d, dtype=complex) / d


def make_state(state_id: str, v: float | None = None) -> DensityMatrix:
    """Build one of the named states.

    Noisy ids mix the pure state with white noise, ``v * |psi><psi| + (1 - v) I/d``.
    ``werner`` is the noisy singlet, ``noisy_ghz`` the noisy GHZ state.
    Supplying ``v`` for a pure id is ignored and recorded as a warning.
    """
    sid = state_id.strip().lower()
    if sid not in STATE_IDS:
        raise DomainError(f"unknown state id {state_id!r}; valid ids: {', '.join(STATE_IDS)}")
    notes: tuple[str, ...] = ()
    if sid in PURE_IDS:
        if v is not None:
            msg = f"visibility ignored for pure state {sid!r}"
            warnings.warn(msg, stacklevel=2)
            notes = (msg,)
        if sid == "ghz":
            return DensityMatrix(projector(GHZ_KET), (2, 2, 2), sid, notes)
        key = "psi-" if sid == "singlet" else sid.split(":", 1)[1]
        return DensityMatrix(projector(BELL_KETS[key]), (2, 2), sid, notes)

    if v is None:
        raise DomainError(f"state {sid!r} needs a visibility v")
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"visibility must lie in [0, 1], got {v}")
    if sid == "noisy_ghz":
        return DensityMatrix(_mix(projector(GHZ_KET), v), (2, 2, 2), f"{sid}({v:g})")
    key = "psi-" if sid == "werner" else sid.split(":", 1)[1]
    return DensityMatrix(_mix(projector(BELL_KETS[key]), v), (2, 2), f"{sid}({v:g})")


def is_entangled_ppt(rho: DensityMatrix, tol: float = la.EQ_TOL) -> tuple[bool, float]:
    """Peres-Horodecki test for two qubits.

    Returns ``(entangled, negativity)`` where the negativity sums the magnitudes
    of partial-transpose eigenvalues below ``-tol``.
    """
    if tuple(rho.dims) != (2, 2):
        raise UnsupportedError(f"PPT check only supports two qubits, got dims {rho.dims}")
    ev = la.eigvals_hermitian(la.partial_transpose(rho.matrix, (2, 2), on=1))
    neg = ev[ev < -tol]
    return bool(neg.size > 0), float(-neg.sum()) if neg.size else 0.0


def random_state(rng: np.random.Generator, n_qubits: int, rank: int | None = None) -> DensityMatrix:
    """Random mixed state from a Ginibre matrix."""
    d = 2**n_qubits
    r = d if rank is None else rank
    g = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real, (2,) * n_qubits, label="random")
