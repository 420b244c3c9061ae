"""Full-correlator Bell-type and steering inequalities.

An expression is a coefficient per setting tuple; its value on a table is
``sum_x coeff[x] * <A_x B_y [C_z]>`` and a positive margin (value - bound)
signals a violation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .correlations import CorrelationTable, Relabeling, all_relabelings
from .errors import DimensionError, DomainError

SQ2 = np.sqrt(2.0)

REGIMES = ("LHV", "LHS_2xQ", "LHSLHS_2x2", "NLHV", "NLHS_2x2xQ", "SLHS_2x2xQ")

CAVEATS = {
    "LHV": "bound holds for any local hidden variable model; no device assumptions",
    "LHS_2xQ": "bound assumes Alice measures two orthogonal qubit projective measurements; Bob is a black box",
    "LHSLHS_2x2": "bound assumes qubits on both sides with the stated optimal measurements",
    "NLHV": "bound holds for any hybrid model allowing arbitrary bipartite nonlocality",
    "NLHS_2x2xQ": "bound assumes Alice and Bob make known qubit measurements; Charlie is a black box",
    "SLHS_2x2xQ": "bound assumes Alice and Bob make known qubit measurements; Charlie is a black box",
}


@dataclass(frozen=True)
class InequalityExpr:
    name: str
    coefficients: np.ndarray
    bound: float
    regime: str
    text: str = ""

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=float)
        if c.ndim not in (2, 3) or c.shape != (2,) * c.ndim:
            raise DimensionError(f"coefficients must have shape (2,2) or (2,2,2), got {c.shape}")
        if not np.any(c):
            raise DomainError("expression has no nonzero coefficient")
        if not np.isfinite(self.bound):
            raise DomainError("bound must be finite")
        if self.regime not in REGIMES:
            raise DomainError(f"unknown regime {self.regime!r}")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def n_parties(self) -> int:
        return self.coefficients.ndim

    @property
    def algebraic_max(self) -> float:
        return float(np.abs(self.coefficients).sum())

    @property
    def caveat(self) -> str:
        return CAVEATS[self.regime]

    def relabel(self, g: Relabeling) -> "InequalityExpr":
        """Expression ``e'`` with ``evaluate(e', t) == evaluate(e, g.apply(t))``."""
        n = self.n_parties
        c = np.empty_like(self.coefficients)
        for u in itertools.product((0, 1), repeat=n):
            src = g.source(u)
            c[u] = self.coefficients[src] * g.sign(src)
        c += 0.0  # no negative zeros, so orbits dedupe by bytes
        return InequalityExpr(self.name, c, self.bound, self.regime, format_terms(c))

    def terms(self) -> str:
        return format_terms(self.coefficients)


def format_terms(c: np.ndarray) -> str:
    names = "ABC"
    out = []
    for idx in itertools.product((0, 1), repeat=c.ndim):
        w = c[idx]
        if w == 0:
            continue
        mono = "".join(f"{names[k]}{x}" for k, x in enumerate(idx))
        sign = "-" if w < 0 else "+"
        mag = "" if abs(w) == 1 else f"{abs(w):g}*"
        out.append(f"{sign}{mag}{mono}")
    s = " ".join(out)
    return s[1:] if s.startswith("+") else s


def _coeffs(n: int, terms: dict[str, float]) -> np.ndarray:
    c = np.zeros((2,) * n)
    for mono, w in terms.items():
        c[tuple(int(ch) for ch in mono)] += w
    return c


# CHSH = A0B0 + A0B1 + A1B0 - A1B1, CHSH' = -A0B0 + A0B1 + A1B0 + A1B1
_CHSH = {"00": 1, "01": 1, "10": 1, "11": -1}
_CHSH_PRIME = {"00": -1, "01": 1, "10": 1, "11": 1}
_MERMIN = {"00": 1, "11": -1}
_MERMIN_PRIME = {"01": 1, "10": 1}


def _with_charlie(on_c1: dict, on_c0: dict) -> dict:
    terms = {k + "1": v for k, v in on_c1.items()}
    for k, v in on_c0.items():
        terms[k + "0"] = terms.get(k + "0", 0) + v
    return terms


_BUILTINS = {
    "chsh": (2, _CHSH, 2.0, "LHV"),
    "steering": (2, _MERMIN, SQ2, "LHS_2xQ"),
    "chsh_lhs": (2, _CHSH, SQ2, "LHSLHS_2x2"),
    "nonsep": (2, _MERMIN, 1.0, "LHSLHS_2x2"),
    "svetlichny": (3, _with_charlie(_CHSH, _CHSH_PRIME), 4.0, "NLHV"),
    "svetlichny_steering": (3, _with_charlie(_CHSH, _CHSH_PRIME), 2 * SQ2, "NLHS_2x2xQ"),
    "mermin": (3, _with_charlie(_MERMIN, _MERMIN_PRIME), 2.0, "LHV"),
    "mermin_steering": (3, _with_charlie(_MERMIN, _MERMIN_PRIME), 2.0, "SLHS_2x2xQ"),
}
BUILTIN_NAMES = tuple(_BUILTINS)


def builtin(name: str) -> InequalityExpr:
    key = name.strip().lower()
    if key not in _BUILTINS:
        raise DomainError(f"unknown inequality {name!r}; valid: {', '.join(BUILTIN_NAMES)}")
    n, terms, bound, regime = _BUILTINS[key]
    c = _coeffs(n, terms)
    return InequalityExpr(key, c, float(bound), regime, format_terms(c))


def evaluate(e: InequalityExpr, t: CorrelationTable) -> tuple[float, float]:
    """``(value, value - bound)``."""
    if e.n_parties != t.n_parties:
        raise DimensionError(f"{e.name} has {e.n_parties} parties, table has {t.n_parties}")
    value = float(np.sum(e.coefficients * t.correlators()))
    return value, value - e.bound


def relabelings(e: InequalityExpr) -> list[InequalityExpr]:
    """Distinct expressions obtained from ``e`` by relabeling settings and outcomes."""
    seen: dict[bytes, InequalityExpr] = {}
    for g in all_relabelings(e.n_parties):
        r = e.relabel(g)
        seen.setdefault(r.coefficients.tobytes(), r)
    return list(seen.values())


def max_over_equivalents(e: InequalityExpr, t: CorrelationTable) -> tuple[float, Relabeling]:
    """Best value of any relabeled version of ``e`` on ``t``.

    Ties go to the first relabeling in enumeration order, which starts with the
    identity.
    """
    best_val, best_g = -np.inf, None
    corr = t.correlators()
    for g in all_relabelings(e.n_parties):
        val = float(np.sum(e.relabel(g).coefficients * corr))
        if val > best_val + 1e-12:
            best_val, best_g = val, g
    return best_val, best_g
