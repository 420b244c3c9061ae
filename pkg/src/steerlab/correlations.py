"""Correlation tables P(outcomes | settings) for two or three parties.

Tables are stored as arrays of shape ``(2,)*n + (2,)*n``: the first ``n`` axes
are the settings ``x, y[, z]`` and the last ``n`` are outcome indices, where
index 0 means outcome +1 and index 1 means outcome -1 (so the index is the
bit ``a`` in ``(-1)**a``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg as la
from .errors import DimensionError, DomainError
from .measurements import DichotomicPOVM, from_observable, noisy, projective
from .states import DensityMatrix, make_state

OUTCOMES = (+1, -1)
SQ2 = np.sqrt(2.0)


def _idx(outcome: int) -> int:
    if outcome not in (1, -1):
        raise DomainError(f"outcomes are +1/-1, got {outcome}")
    return 0 if outcome == 1 else 1


@dataclass(frozen=True)
class CorrelationTable:
    probs: np.ndarray

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if p.ndim not in (4, 6) or p.shape != (2,) * p.ndim:
            raise DimensionError(f"table must have shape (2,)*4 or (2,)*6, got {p.shape}")
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    @property
    def n_parties(self) -> int:
        return self.probs.ndim // 2

    def prob(self, outcomes: Sequence[int], settings: Sequence[int]) -> float:
        return float(self.probs[tuple(settings) + tuple(_idx(o) for o in outcomes)])

    def correlator(self, settings: Sequence[int]) -> float:
        """Expectation of the product of all parties' outcomes."""
        return float(np.sum(self.probs[tuple(settings)] * _sign_tensor(self.n_parties)))

    def correlators(self) -> np.ndarray:
        """All full correlators as an array of shape ``(2,)*n`` over settings."""
        n = self.n_parties
        axes = tuple(range(n, 2 * n))
        return np.sum(self.probs * _sign_tensor(n), axis=axes)

    def records(self):
        n = self.n_parties
        for idx in itertools.product((0, 1), repeat=2 * n):
            yield {
                "settings": list(idx[:n]),
                "outcomes": [OUTCOMES[i] for i in idx[n:]],
                "p": float(self.probs[idx]),
            }


def _sign_tensor(n: int) -> np.ndarray:
    s = np.array([1.0, -1.0])
    out = s
    for _ in range(n - 1):
        out = np.multiply.outer(out, s)
    return out


def uniform_table(n_parties: int) -> CorrelationTable:
    return CorrelationTable(np.full((2,) * (2 * n_parties), 1 / 2**n_parties))


@dataclass(frozen=True)
class TableReport:
    normalization: float
    no_signaling: float
    min_prob: float

    def ok(self, tol: float = la.EQ_TOL) -> bool:
        return self.normalization <= tol and self.no_signaling <= tol and self.min_prob >= -tol


def validate_table(t: CorrelationTable) -> TableReport:
    """Normalization residual and worst no-signaling violation of a table."""
    n = t.n_parties
    p = t.probs
    out_axes = tuple(range(n, 2 * n))
    norm = float(np.max(np.abs(p.sum(axis=out_axes) - 1.0)))
    worst = 0.0
    # marginal of every proper subset of parties must not depend on the others' settings
    for r in range(1, n):
        for subset in itertools.combinations(range(n), r):
            others = [k for k in range(n) if k not in subset]
            marg = p.sum(axis=tuple(n + k for k in others))
            # marg axes: n settings, then outcomes of subset
            spread = marg.max(axis=tuple(others)) - marg.min(axis=tuple(others))
            worst = max(worst, float(spread.max()))
    return TableReport(norm, worst, float(p.min()))


def _settings_for(n: int):
    return itertools.product((0, 1), repeat=n)


def born_table(rho: DensityMatrix, settings: Sequence[Sequence[DichotomicPOVM]]) -> CorrelationTable:
    """Quantum statistics ``Tr(rho M_a|x (x) M_b|y [(x) M_c|z])``."""
    n = len(settings)
    if n not in (2, 3) or tuple(rho.dims) != (2,) * n:
        raise DimensionError(f"state dims {rho.dims} do not match {n} qubit parties")
    if any(len(s) != 2 for s in settings):
        raise DimensionError("each party needs exactly two settings")
    p = np.zeros((2,) * (2 * n))
    for xs in _settings_for(n):
        for outs in itertools.product((0, 1), repeat=n):
            op = la.kron(*(settings[k][xs[k]].effect(OUTCOMES[outs[k]]) for k in range(n)))
            p[xs + outs] = np.trace(rho.matrix @ op).real
    return CorrelationTable(p)


def _from_formula(n: int, f) -> CorrelationTable:
    p = np.zeros((2,) * (2 * n))
    for idx in itertools.product((0, 1), repeat=2 * n):
        outs = [OUTCOMES[i] for i in idx[n:]]
        p[idx] = f(*idx[:n], *outs)
    return CorrelationTable(p)


def chsh_family(v: float) -> CorrelationTable:
    return _from_formula(2, lambda x, y, a, b: (2 + a * b * (-1) ** (x * y) * SQ2 * v) / 8)


def bb84_family(v: float) -> CorrelationTable:
    return _from_formula(2, lambda x, y, a, b: (1 + a * b * (x == y) * v) / 4)


def svetlichny_family(v: float) -> CorrelationTable:
    def f(x, y, z, a, b, c):
        parity = (x * y + x * z + y * z + x + y + z + 1) % 2
        return (2 + a * b * c * (-1) ** parity * SQ2 * v) / 16

    return _from_formula(3, f)


def ghz_literal_family(v: float) -> CorrelationTable:
    """The GHZ family as printed: ``(1 + abc delta_(x+y, z+1) V)/8``."""
    return _from_formula(3, lambda x, y, z, a, b, c: (1 + a * b * c * ((x ^ y) == (z ^ 1)) * v) / 8)


# Measurement presets --------------------------------------------------------

X_HAT = np.array([1.0, 0.0, 0.0])
Y_HAT = np.array([0.0, 1.0, 0.0])


def chsh_settings() -> list[list[DichotomicPOVM]]:
    """Werner/singlet settings reaching the CHSH family."""
    return [
        [projective(X_HAT), projective(Y_HAT)],
        [projective(-(X_HAT + Y_HAT) / SQ2), projective((-X_HAT + Y_HAT) / SQ2)],
    ]


def bb84_settings() -> list[list[DichotomicPOVM]]:
    """Werner settings maximizing ``<A0B0 - A1B1>``.

    On the Werner state these give the BB84 family after flipping Bob's
    outcome for ``y = 1`` (see ``BB84_RELABELING``).
    """
    return [
        [projective(X_HAT), projective(Y_HAT)],
        [projective(-X_HAT), projective(Y_HAT)],
    ]


def ghz_canonical_settings() -> list[list[DichotomicPOVM]]:
    """GHZ-paradox settings whose Born statistics maximize the Mermin expression.

    Same observables as listed for the GHZ example but with Charlie's two
    settings swapped: ``C0 = -sigma_y``, ``C1 = sigma_x``.
    """
    sx, sy = la.SIGMA_X, la.SIGMA_Y
    return [
        [from_observable(sx), from_observable(sy)],
        [from_observable(sx), from_observable(sy)],
        [from_observable(-sy), from_observable(sx)],
    ]


def ghz_canonical_family(v: float) -> CorrelationTable:
    return born_table(make_state("noisy_ghz", v), ghz_canonical_settings())


FAMILIES = {
    "chsh": chsh_family,
    "bb84": bb84_family,
    "svetlichny": svetlichny_family,
    "ghz": ghz_literal_family,
    "ghz-literal": ghz_literal_family,
    "ghz-canonical": ghz_canonical_family,
}


def family_table(family_id: str, v: float) -> CorrelationTable:
    fid = family_id.strip().lower()
    if fid not in FAMILIES:
        raise DomainError(f"unknown family {family_id!r}; valid: {', '.join(FAMILIES)}")
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"visibility must lie in [0, 1], got {v}")
    return FAMILIES[fid](v)


# Relabelings ----------------------------------------------------------------


@dataclass(frozen=True)
class Relabeling:
    """Per-party setting swaps and per-setting outcome flips.

    Acting on a table, party ``k`` reports for new setting ``x`` what old
    setting ``x ^ swaps[k]`` produced, with the sign flipped if
    ``flips[k][x]``.
    """

    swaps: tuple[bool, ...]
    flips: tuple[tuple[bool, bool], ...]

    @classmethod
    def identity(cls, n: int) -> "Relabeling":
        return cls((False,) * n, ((False, False),) * n)

    @property
    def n_parties(self) -> int:
        return len(self.swaps)

    @property
    def is_identity(self) -> bool:
        return not any(self.swaps) and not any(any(f) for f in self.flips)

    def sign(self, settings: Sequence[int]) -> int:
        s = 1
        for k, x in enumerate(settings):
            if self.flips[k][x]:
                s = -s
        return s

    def source(self, settings: Sequence[int]) -> tuple[int, ...]:
        return tuple(x ^ int(self.swaps[k]) for k, x in enumerate(settings))

    def apply(self, t: CorrelationTable) -> CorrelationTable:
        n = t.n_parties
        if n != self.n_parties:
            raise DimensionError("relabeling and table have different party counts")
        p = np.empty_like(t.probs)
        for xs in _settings_for(n):
            src = self.source(xs)
            for outs in itertools.product((0, 1), repeat=n):
                o_src = tuple(o ^ int(self.flips[k][xs[k]]) for k, o in enumerate(outs))
                p[xs + outs] = t.probs[src + o_src]
        return CorrelationTable(p)

    def describe(self) -> str:
        if self.is_identity:
            return "identity"
        names = "ABC"
        parts = []
        for k in range(self.n_parties):
            if self.swaps[k]:
                parts.append(f"swap {names[k]}0<->{names[k]}1")
            for x in (0, 1):
                if self.flips[k][x]:
                    parts.append(f"negate {names[k]}{x}")
        return ", ".join(parts)

    def to_dict(self) -> dict:
        return {"swaps": list(self.swaps), "flips": [list(f) for f in self.flips], "text": self.describe()}


def all_relabelings(n: int, parties: Sequence[int] | None = None):
    """Every relabeling of ``n`` parties, optionally acting only on ``parties``."""
    active = set(range(n) if parties is None else parties)
    per_party = []
    for k in range(n):
        if k in active:
            per_party.append(list(itertools.product((False, True), itertools.product((False, True), repeat=2))))
        else:
            per_party.append([(False, (False, False))])
    for combo in itertools.product(*per_party):
        yield Relabeling(tuple(c[0] for c in combo), tuple(c[1] for c in combo))


BB84_RELABELING = Relabeling((False, False), ((False, False), (False, True)))
# Charlie's settings are listed in the opposite order to the one the
# Svetlichny and GHZ families need; found by exhaustive search (tests).
SWAP_CHARLIE = Relabeling((False, False, True), ((False, False),) * 3)


def find_relabelings(t: CorrelationTable, target: CorrelationTable, tol: float = 1e-10, parties=None):
    """All relabelings ``g`` with ``g.apply(t) == target`` within ``tol``."""
    return [
        g for g in all_relabelings(t.n_parties, parties)
        if np.max(np.abs(g.apply(t).probs - target.probs)) <= tol
    ]
