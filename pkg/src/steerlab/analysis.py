"""Threshold search, seesaw optimization and the worked-example presets."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import linalg as la
from .correlations import (
    SWAP_CHARLIE,
    X_HAT,
    Y_HAT,
    CorrelationTable,
    Relabeling,
    born_table,
    from_observable,
    noisy,
    projective,
)
from .errors import DomainError
from .inequalities import InequalityExpr, builtin, evaluate, max_over_equivalents
from .measurements import DichotomicPOVM
from .states import DensityMatrix, make_state

SQ2 = np.sqrt(2.0)


def margin_fn(family: Callable[[float], CorrelationTable], ineq: InequalityExpr,
              equivalents: bool = False) -> Callable[[float], float]:
    if equivalents:
        return lambda v: max_over_equivalents(ineq, family(v))[0] - ineq.bound
    return lambda v: evaluate(ineq, family(v))[1]


def critical_visibility(family: Callable[[float], CorrelationTable], ineq: InequalityExpr,
                        tol: float = 1e-9, equivalents: bool = False) -> float | None:
    """Smallest visibility whose margin is positive, to within ``tol``.

    Returns ``None`` when the margin never changes sign on [0, 1]. Raises if an
    11-point pre-scan shows the margin is not nondecreasing in ``v``.
    """
    margin = margin_fn(family, ineq, equivalents)
    grid = np.linspace(0.0, 1.0, 11)
    scan = [margin(v) for v in grid]
    if any(b < a - 1e-9 for a, b in zip(scan, scan[1:])):
        raise DomainError(f"margin of {ineq.name} is not monotone in v: {np.round(scan, 6).tolist()}")
    if scan[-1] <= 0:
        return None
    if scan[0] > 0:
        return 0.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if margin(mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


# Seesaw -------------------------------------------------------------------


@dataclass
class SeesawResult:
    value: float
    directions: list  # per party, two unit Bloch vectors
    iterations: int
    restarts: int
    seed: int | None = None
    history: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "directions": [[list(map(float, d)) for d in party] for party in self.directions],
            "iterations": self.iterations,
            "restarts": self.restarts,
            "seed": self.seed,
        }


def _random_direction(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def _value(rho: np.ndarray, coeffs: np.ndarray, obs) -> float:
    n = coeffs.ndim
    total = 0.0
    for xs in itertools.product((0, 1), repeat=n):
        if coeffs[xs]:
            total += coeffs[xs] * np.trace(rho @ la.kron(*(obs[k][xs[k]] for k in range(n)))).real
    return float(total)


def _effective_operator(rho: DensityMatrix, coeffs: np.ndarray, obs, party: int, setting: int) -> np.ndarray:
    """Operator K on ``party`` with value = Tr(O K) + (terms not involving O)."""
    n = coeffs.ndim
    K = np.zeros((2, 2), dtype=complex)
    for xs in itertools.product((0, 1), repeat=n):
        if xs[party] != setting or not coeffs[xs]:
            continue
        ops = [la.I2 if k == party else obs[k][xs[k]] for k in range(n)]
        K += coeffs[xs] * la.partial_trace(rho.matrix @ la.kron(*ops), rho.dims, [party])
    return K


def _seesaw_once(rho: DensityMatrix, coeffs: np.ndarray, dirs, max_iter: int, tol: float):
    n = coeffs.ndim
    obs = [[la.bloch_operator(d) for d in party] for party in dirs]
    value = _value(rho.matrix, coeffs, obs)
    history = [value]
    it = 0
    for it in range(1, max_iter + 1):
        for k in range(n):
            for s in (0, 1):
                k_vec = la.bloch_components(_effective_operator(rho, coeffs, obs, k, s))
                norm = np.linalg.norm(k_vec)
                if norm > 1e-14:
                    dirs[k][s] = k_vec / norm
                    obs[k][s] = la.bloch_operator(dirs[k][s])
        new = _value(rho.matrix, coeffs, obs)
        history.append(new)
        if abs(new - value) < tol:
            value = new
            break
        value = new
    return value, dirs, it, history


def seesaw_max(rho: DensityMatrix, ineq: InequalityExpr, restarts: int = 20, seed: int | None = 0,
               max_iter: int = 1000, tol: float = 1e-10) -> SeesawResult:
    """Maximize the inequality's value over sharp qubit observables by best response.

    Each observable in turn is replaced by the unit Bloch vector aligned with
    its induced linear functional, until the value changes by less than ``tol``.
    """
    if restarts < 1:
        raise DomainError("restarts must be at least 1")
    if rho.n_parties != ineq.n_parties or tuple(rho.dims) != (2,) * ineq.n_parties:
        raise DomainError("state and inequality have different party counts")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(restarts):
        dirs = [[_random_direction(rng) for _ in (0, 1)] for _ in range(ineq.n_parties)]
        value, dirs, it, hist = _seesaw_once(rho, ineq.coefficients, dirs, max_iter, tol)
        if best is None or value > best.value:
            best = SeesawResult(value, [list(d) for d in dirs], it, restarts, seed, hist)
    return best


# Presets --------------------------------------------------------------------


@dataclass
class Scenario:
    """A worked example: state, listed measurement settings and target inequality.

    ``settings`` are the observables exactly as listed; ``relabeling`` maps
    their Born table onto the family the example claims to reproduce.
    """

    name: str
    state_id: str
    v: float | None
    settings: list
    ineq: str
    relabeling: Relabeling
    family: str
    notes: list = field(default_factory=list)

    def state(self) -> DensityMatrix:
        return make_state(self.state_id, self.v)

    def raw_table(self) -> CorrelationTable:
        return born_table(self.state(), self.settings)

    def table(self) -> CorrelationTable:
        return self.relabeling.apply(self.raw_table())

    def directions(self) -> list:
        return [[None if p.direction is None else p.direction.tolist() for p in party] for party in self.settings]

    def etas(self) -> list:
        return [[p.eta for p in party] for party in self.settings]


PRESETS = ("example1", "ex1", "ex2", "ex3")


def _ex1_settings(charlie: list[DichotomicPOVM]) -> list:
    return [
        [projective(X_HAT), projective(Y_HAT)],
        [projective((X_HAT - Y_HAT) / SQ2), projective((X_HAT + Y_HAT) / SQ2)],
        charlie,
    ]


def preset(example_id: str, eta: float = 1.0, v: float = 1.0) -> Scenario:
    """Return one of the four worked examples.

    ``eta`` is the noisy party's sharpness (Alice in ``example1``, Charlie in
    ``ex3``); ``v`` is the state visibility where the example uses a noisy state.
    """
    key = example_id.strip().lower()
    if key == "example1":
        settings = [
            [noisy(X_HAT, eta), noisy(Y_HAT, eta)],
            [projective(-(X_HAT + Y_HAT) / SQ2), projective((-X_HAT + Y_HAT) / SQ2)],
        ]
        return Scenario(key, "singlet", None, settings, "chsh_lhs", Relabeling.identity(2), "chsh")
    if key == "ex1":
        charlie = [from_observable(la.SIGMA_X), from_observable(-la.SIGMA_Y)]
        return Scenario(key, "noisy_ghz", v, _ex1_settings(charlie), "svetlichny_steering",
                        SWAP_CHARLIE, "svetlichny",
                        ["listed C0/C1 reproduce the Svetlichny family only after swapping Charlie's settings"])
    if key == "ex2":
        sx, sy = la.SIGMA_X, la.SIGMA_Y
        settings = [
            [from_observable(sx), from_observable(sy)],
            [from_observable(sx), from_observable(sy)],
            [from_observable(sx), from_observable(-sy)],
        ]
        return Scenario(key, "noisy_ghz", v, settings, "mermin_steering", SWAP_CHARLIE, "ghz-canonical",
                        ["listed C0/C1 reach Mermin value 4V only after swapping Charlie's settings"])
    if key == "ex3":
        charlie = [noisy(X_HAT, eta), noisy(-Y_HAT, eta)]
        return Scenario(key, "ghz", None, _ex1_settings(charlie), "svetlichny_steering",
                        SWAP_CHARLIE, "svetlichny",
                        ["listed C0/C1 reproduce the Svetlichny family only after swapping Charlie's settings"])
    raise DomainError(f"unknown preset {example_id!r}; valid: {', '.join(PRESETS)}")
