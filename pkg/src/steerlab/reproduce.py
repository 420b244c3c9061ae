"""Headline checks: every threshold and worked example, as pass/fail rows."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analysis import critical_visibility, preset, seesaw_max
from .assemblage import lhs_reconstruct, steer
from .correlations import family_table
from .inequalities import builtin, evaluate, max_over_equivalents
from .localpolytope import is_local
from .measurements import jointly_measurable, noise_transfer_check, noisy, parent_povm
from .states import is_entangled_ppt, make_state, random_state

SQ2 = np.sqrt(2.0)


@dataclass
class Check:
    key: str
    title: str
    passed: bool
    detail: str


def _bisect(pred: Callable[[float], bool], lo: float, hi: float, tol: float) -> float:
    """Boundary of a predicate that is False at ``lo`` and True at ``hi``."""
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def _fam(fid):
    return lambda v: family_table(fid, v)


def werner_ppt() -> Check:
    vc = _bisect(lambda v: is_entangled_ppt(make_state("werner", v))[0], 0.0, 1.0, 1e-12)
    return Check("1", "Werner PPT boundary", abs(vc - 1 / 3) <= 1e-9, f"V*={vc:.12f}")


def chsh_family_check() -> Check:
    grid = np.round(np.arange(0, 1.0001, 0.05), 10)
    err = max(abs(evaluate(builtin("chsh"), family_table("chsh", v))[0] - 2 * SQ2 * v) for v in grid)
    vc = critical_visibility(_fam("chsh"), builtin("chsh"), tol=1e-9)
    ok = err <= 1e-12 and abs(vc - 1 / SQ2) <= 1e-6
    return Check("2", "CHSH family", ok, f"max|value-2sqrt2 V|={err:.1e}, V*={vc:.9f}")


def bb84_family_check() -> Check:
    grid = np.round(np.arange(0, 1.0001, 0.05), 10)
    err = max(abs(max_over_equivalents(builtin("steering"), family_table("bb84", v))[0] - 2 * v) for v in grid)
    vs = critical_visibility(_fam("bb84"), builtin("steering"), tol=1e-9, equivalents=True)
    vn = critical_visibility(_fam("bb84"), builtin("nonsep"), tol=1e-9, equivalents=True)
    ok = err <= 1e-12 and abs(vs - 1 / SQ2) <= 1e-6 and abs(vn - 0.5) <= 1e-6
    return Check("3", "BB84 family", ok, f"max err={err:.1e}, steering V*={vs:.9f}, nonsep V*={vn:.9f}")


def noise_transfer() -> Check:
    rng = np.random.default_rng(13)
    worst = 0.0
    for _ in range(100):
        rho = random_state(rng, 2)
        a = rng.normal(size=3)
        b = rng.normal(size=3)
        worst = max(worst, noise_transfer_check(rho, (a / np.linalg.norm(a), rng.uniform()), b / np.linalg.norm(b)))
    return Check("4", "Noise-transfer identity", worst <= 1e-12, f"max deviation={worst:.1e}")


def joint_measurability() -> Check:
    x, y = np.eye(3)[0], np.eye(3)[1]
    eta_c = _bisect(lambda e: not jointly_measurable(noisy(x, e), noisy(y, e)), 0.0, 1.0, 1e-12)
    p0, p1 = noisy(x, 0.7), noisy(y, 0.7)
    parent = parent_povm(p0, p1)
    min_ev = min(np.linalg.eigvalsh(g)[0] for g in parent.elements.values())
    rec = max(
        np.max(np.abs(parent.reconstruct(c, z) - (p0, p1)[z].effect(c))) for c in (1, -1) for z in (0, 1)
    )
    total = np.max(np.abs(sum(parent.elements.values()) - np.eye(2)))
    ok = abs(eta_c - 1 / SQ2) <= 1e-9 and min_ev >= -1e-12 and rec <= 1e-12 and total <= 1e-12
    return Check("5", "Joint measurability", ok, f"eta*={eta_c:.12f}, parent min eig={min_ev:.3e}, recon={rec:.1e}")


def svetlichny_family_check() -> Check:
    grid = np.round(np.arange(0, 1.0001, 0.1), 10)
    err = max(abs(evaluate(builtin("svetlichny"), family_table("svetlichny", v))[0] - 4 * SQ2 * v) for v in grid)
    v1 = critical_visibility(_fam("svetlichny"), builtin("svetlichny"), tol=1e-9)
    v2 = critical_visibility(_fam("svetlichny"), builtin("svetlichny_steering"), tol=1e-9)
    ok = err <= 1e-12 and abs(v1 - 1 / SQ2) <= 1e-6 and abs(v2 - 0.5) <= 1e-6
    return Check("6", "Svetlichny family", ok, f"max err={err:.1e}, NLHV V*={v1:.9f}, NLHS V*={v2:.9f}")


def mermin_check() -> Check:
    grid = np.round(np.arange(0, 1.0001, 0.1), 10)
    err = max(abs(evaluate(builtin("mermin"), family_table("ghz-canonical", v))[0] - 4 * v) for v in grid)
    vc = critical_visibility(_fam("ghz-canonical"), builtin("mermin_steering"), tol=1e-9)
    ok = err <= 1e-10 and abs(vc - 0.5) <= 1e-6
    return Check("7", "Mermin / GHZ family", ok, f"max|value-4V|={err:.1e}, SLHS V*={vc:.9f}")


def lp_oracle() -> Check:
    cases = [("bb84", 1.0, True), ("chsh", 0.707, True), ("chsh", 0.708, False), ("svetlichny", 0.70, True)]
    got = [(f, v, is_local(family_table(f, v)).feasible) for f, v, _ in cases]
    ok = all(g[2] == c[2] for g, c in zip(got, cases))
    return Check("8", "LP locality oracle", ok, ", ".join(f"{f}@{v}:{'local' if r else 'nonlocal'}" for f, v, r in got))


def seesaw_check() -> Check:
    r2 = seesaw_max(make_state("singlet"), builtin("chsh"), restarts=20, seed=0).value
    r3 = seesaw_max(make_state("ghz"), builtin("svetlichny"), restarts=20, seed=0).value
    ok = abs(r2 - 2 * SQ2) <= 1e-6 and abs(r3 - 4 * SQ2) <= 1e-6
    return Check("9", "Seesaw recovery", ok, f"CHSH={r2:.9f}, SI={r3:.9f}")


def remark_check() -> Check:
    ineq = builtin("svetlichny_steering")
    s = preset("ex3", eta=0.6)
    charlie = s.settings[2]
    compatible = jointly_measurable(*charlie)
    value, margin = evaluate(ineq, s.table())
    low = max_over_equivalents(ineq, preset("ex3", eta=0.45).table())[0]
    ok = compatible and margin > 0 and abs(value - 4 * SQ2 * 0.6) <= 1e-12 and low <= ineq.bound
    return Check("10", "Remark (ex3)", ok,
                 f"eta=0.6: compatible={compatible}, value={value:.6f} > {ineq.bound:.6f}; eta=0.45 best={low:.6f}")


def assemblage_check() -> Check:
    worst = 0.0
    for eta in (0.0, 0.3, 0.6, 1 / SQ2):
        charlie = preset("ex3", eta=eta).settings[2]
        parent = parent_povm(*charlie)
        for v in np.linspace(0, 1, 11):
            rho = make_state("noisy_ghz", v)
            worst = max(worst, steer(rho, charlie).max_deviation(lhs_reconstruct(rho, parent)))
    return Check("11", "Assemblage reconstruction", worst <= 1e-12, f"max deviation={worst:.1e}")


CHECKS = (
    werner_ppt, chsh_family_check, bb84_family_check, noise_transfer, joint_measurability,
    svetlichny_family_check, mermin_check, lp_oracle, seesaw_check, remark_check, assemblage_check,
)


def run_all() -> list[Check]:
    return [c() for c in CHECKS]


def format_table(rows: list[Check]) -> str:
    lines = [f"{'#':>3}  {'criterion':<28} {'result':<6} detail"]
    for r in rows:
        lines.append(f"{r.key:>3}  {r.title:<28} {'PASS' if r.passed else 'FAIL':<6} {r.detail}")
    return "\n".join(lines)
