"""Dichotomic qubit POVMs, joint measurability and parent POVMs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg as la
from .errors import DomainError, InfeasibleError, UnsupportedError
from .states import DensityMatrix

SIGNS = (+1, -1)
DIRECTION_TOL = 1e-9


@dataclass(frozen=True)
class DichotomicPOVM:
    """Two-outcome qubit measurement with effects for outcomes +1 and -1."""

    effect_plus: np.ndarray
    effect_minus: np.ndarray
    direction: np.ndarray | None = None
    eta: float | None = None

    def effect(self, outcome: int) -> np.ndarray:
        return self.effect_plus if outcome == +1 else self.effect_minus

    @property
    def observable(self) -> np.ndarray:
        return self.effect_plus - self.effect_minus

    @property
    def bloch(self) -> np.ndarray:
        """Bloch vector m of the +1 effect written as (a I + m.sigma)/2."""
        return la.bloch_components(self.effect_plus)

    def is_unbiased(self, tol: float = la.EQ_TOL) -> bool:
        return abs(np.trace(self.effect_plus).real - 1.0) <= tol

    def is_valid(self, tol: float = la.EQ_TOL) -> bool:
        total = self.effect_plus + self.effect_minus
        return (
            la.is_psd(self.effect_plus)
            and la.is_psd(self.effect_minus)
            and np.max(np.abs(total - la.I2)) <= tol
        )


def _unit_direction(direction) -> np.ndarray:
    n = np.asarray(direction, dtype=float).reshape(3)
    if abs(np.linalg.norm(n) - 1.0) > DIRECTION_TOL:
        raise DomainError(f"measurement direction must be a unit vector, |n| = {np.linalg.norm(n)}")
    return n


def noisy(direction, eta: float) -> DichotomicPOVM:
    """``eta * Pi_(+/-|n) + (1 - eta) I/2``, i.e. effects ``(I +/- eta n.sigma)/2``."""
    n = _unit_direction(direction)
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"sharpness eta must lie in [0, 1], got {eta}")
    s = eta * la.bloch_operator(n)
    return DichotomicPOVM((la.I2 + s) / 2, (la.I2 - s) / 2, n, eta)


def projective(direction) -> DichotomicPOVM:
    return noisy(direction, 1.0)


def from_observable(obs) -> DichotomicPOVM:
    """Sharp POVM from a +/-1 valued observable such as ``sigma_x``."""
    o = la.as_matrix(obs)
    n = la.bloch_components(o) / 2
    return projective(n)


def noise_transfer_check(rho: DensityMatrix, alice: tuple, bob) -> float:
    """Largest gap between noisy-measurement and noisy-state statistics.

    Compares ``Tr(rho M^eta_a (x) Pi_b)`` with ``Tr(rho_eta Pi_a (x) Pi_b)`` where
    ``rho_eta = eta rho + (1 - eta) I/2 (x) rho_B``, over all four outcome pairs.
    """
    a_dir, eta = alice
    m_a = noisy(a_dir, eta)
    p_a = projective(a_dir)
    p_b = projective(bob)
    rho_b = rho.reduced([1])
    rho_eta = eta * rho.matrix + (1 - eta) * la.kron(la.I2 / 2, rho_b)
    worst = 0.0
    for a, b in itertools.product(SIGNS, SIGNS):
        lhs = np.trace(rho.matrix @ la.kron(m_a.effect(a), p_b.effect(b))).real
        rhs = np.trace(rho_eta @ la.kron(p_a.effect(a), p_b.effect(b))).real
        worst = max(worst, abs(lhs - rhs))
    return worst


def busch_lhs(p0: DichotomicPOVM, p1: DichotomicPOVM) -> float:
    if not (p0.is_unbiased() and p1.is_unbiased()):
        raise UnsupportedError("joint measurability criterion only covers unbiased POVMs")
    m0, m1 = p0.bloch, p1.bloch
    return float(np.linalg.norm(m0 + m1) + np.linalg.norm(m0 - m1))


def jointly_measurable(p0: DichotomicPOVM, p1: DichotomicPOVM, tol: float = la.EQ_TOL) -> bool:
    """Busch criterion ``|m0 + m1| + |m0 - m1| <= 2`` for unbiased qubit pairs."""
    return busch_lhs(p0, p1) <= 2.0 + tol


@dataclass(frozen=True)
class ParentPOVM:
    """Four-outcome POVM indexed by sign pairs, plus its post-processing.

    ``response[(mu, nu)][(c, z)]`` is the probability of reporting ``c`` for
    setting ``z`` when the parent outcome is ``(mu, nu)``.
    """

    elements: dict
    response: dict

    def reconstruct(self, c: int, z: int) -> np.ndarray:
        return sum(self.response[k][(c, z)] * g for k, g in self.elements.items())


def parent_povm(p0: DichotomicPOVM, p1: DichotomicPOVM, tol: float = la.EQ_TOL) -> ParentPOVM:
    """Parent POVM for two orthogonal, equally sharp, unbiased measurements.

    ``G_(mu,nu) = (I + (mu m0 + nu m1).sigma)/4``; setting 0 reads ``mu``,
    setting 1 reads ``nu``.
    """
    if not jointly_measurable(p0, p1, tol):
        raise InfeasibleError("measurements are not jointly measurable")
    m0, m1 = p0.bloch, p1.bloch
    if abs(np.dot(m0, m1)) > 1e-9 or abs(np.linalg.norm(m0) - np.linalg.norm(m1)) > 1e-9:
        raise UnsupportedError("parent construction only covers orthogonal equal-sharpness pairs")
    elements = {}
    response = {}
    for mu, nu in itertools.product(SIGNS, SIGNS):
        elements[(mu, nu)] = (la.I2 + la.bloch_operator(mu * m0 + nu * m1)) / 4
        response[(mu, nu)] = {
            (c, z): float(c == (mu if z == 0 else nu)) for c in SIGNS for z in (0, 1)
        }
    return ParentPOVM(elements, response)
