"""Seesaw maxima of every inequality on the pure reference states."""
from steerlab.analysis import seesaw_max
from steerlab.inequalities import BUILTIN_NAMES, builtin
from steerlab.states import make_state


def main(restarts: int = 20, seed: int = 0):
    for name in BUILTIN_NAMES:
        e = builtin(name)
        rho = make_state("singlet" if e.n_parties == 2 else "ghz")
        r = seesaw_max(rho, e, restarts=restarts, seed=seed)
        print(f"{name:<20} {rho.label:<8} max={r.value:.9f} bound={e.bound:.6f} algebraic={e.algebraic_max:g}")


if __name__ == "__main__":
    main()
