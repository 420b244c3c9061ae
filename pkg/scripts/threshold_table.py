"""Print every visibility threshold: PPT, inequality margins and LP locality."""
import numpy as np

from steerlab.analysis import critical_visibility
from steerlab.correlations import family_table
from steerlab.inequalities import builtin
from steerlab.localpolytope import is_local
from steerlab.states import is_entangled_ppt, make_state

ROWS = [
    ("chsh", "chsh", False),
    ("chsh", "chsh_lhs", False),
    ("bb84", "steering", True),
    ("bb84", "nonsep", True),
    ("svetlichny", "svetlichny", False),
    ("svetlichny", "svetlichny_steering", False),
    ("ghz-canonical", "mermin", False),
    ("ghz-canonical", "mermin_steering", False),
    ("ghz-literal", "mermin", False),
]


def bisect(pred, tol=1e-7):
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        lo, hi = (lo, mid) if pred(mid) else (mid, hi)
    return hi


def main():
    v = bisect(lambda v: is_entangled_ppt(make_state("werner", v))[0], 1e-12)
    print(f"{'werner':<14} {'PPT':<20} {v:.9f}")
    for fid, name, eq in ROWS:
        vc = critical_visibility(lambda v: family_table(fid, v), builtin(name), equivalents=eq)
        text = "none" if vc is None else f"{vc:.9f}"
        print(f"{fid:<14} {name + (' (equiv)' if eq else ''):<20} {text}")
    for fid in ("chsh", "bb84", "svetlichny", "ghz-canonical", "ghz-literal"):
        if is_local(family_table(fid, 1.0)).feasible:
            print(f"{fid:<14} {'LP nonlocal':<20} none (local at V=1)")
            continue
        vc = bisect(lambda v: not is_local(family_table(fid, v)).feasible, 1e-6)
        print(f"{fid:<14} {'LP nonlocal':<20} {vc:.6f}")


if __name__ == "__main__":
    main()
