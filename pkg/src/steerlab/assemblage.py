"""Assemblages prepared on Alice-Bob by Charlie's measurements."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg as la
from .errors import DimensionError, DomainError
from .measurements import SIGNS, DichotomicPOVM, ParentPOVM
from .states import DensityMatrix

AB = (0, 1)


@dataclass(frozen=True)
class Assemblage:
    """Unnormalized two-qubit conditional states keyed by ``(c, z)``."""

    entries: dict

    def __getitem__(self, key) -> np.ndarray:
        return self.entries[key]

    def max_deviation(self, other: "Assemblage") -> float:
        return max(float(np.max(np.abs(self.entries[k] - other.entries[k]))) for k in self.entries)

    def to_dict(self) -> dict:
        out = {}
        for (c, z), m in sorted(self.entries.items()):
            out[f"c={c:+d},z={z}"] = {"real": m.real.tolist(), "imag": m.imag.tolist()}
        return out


def _check_tripartite(rho: DensityMatrix) -> None:
    if tuple(rho.dims) != (2, 2, 2):
        raise DimensionError(f"assemblages need a three-qubit state, got dims {rho.dims}")


def _conditional(rho: DensityMatrix, effect: np.ndarray) -> np.ndarray:
    op = la.kron(la.I2, la.I2, effect)
    return la.partial_trace(op @ rho.matrix, rho.dims, AB)


def steer(rho: DensityMatrix, charlie: Sequence[DichotomicPOVM]) -> Assemblage:
    """``sigma_(c|z) = Tr_C(I (x) I (x) M_(c|z) rho)``."""
    _check_tripartite(rho)
    if len(charlie) != 2:
        raise DomainError("Charlie needs exactly two settings")
    return Assemblage({(c, z): _conditional(rho, charlie[z].effect(c)) for z in (0, 1) for c in SIGNS})


def lhs_reconstruct(rho: DensityMatrix, parent: ParentPOVM) -> Assemblage:
    """Assemblage rebuilt from the parent POVM: ``sum_nu D_nu(c|z) Tr_C(G_nu rho)``.

    The parent's conditional states do not depend on ``z`` at all; only the
    classical response does, which is what makes the result unsteerable.
    """
    _check_tripartite(rho)
    prepared = {k: _conditional(rho, g) for k, g in parent.elements.items()}
    entries = {}
    for z in (0, 1):
        for c in SIGNS:
            entries[(c, z)] = sum(parent.response[k][(c, z)] * s for k, s in prepared.items())
    return Assemblage(entries)


@dataclass(frozen=True)
class AssemblageReport:
    min_eigenvalue: float
    no_signaling: float
    trace: float

    def ok(self, psd_tol: float = 1e-10, tol: float = la.EQ_TOL) -> bool:
        return self.min_eigenvalue >= -psd_tol and self.no_signaling <= tol and self.trace <= tol


def validate_assemblage(a: Assemblage) -> AssemblageReport:
    min_ev = min(float(la.eigvals_hermitian(m)[0]) for m in a.entries.values())
    sums = [sum(a.entries[(c, z)] for c in SIGNS) for z in (0, 1)]
    ns = float(np.max(np.abs(sums[0] - sums[1])))
    tr = max(abs(float(np.trace(s).real) - 1.0) for s in sums)
    return AssemblageReport(min_ev, ns, tr)
