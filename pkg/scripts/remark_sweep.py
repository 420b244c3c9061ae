"""Sweep Charlie's sharpness in the ex3 scenario.

For each eta: is Charlie's pair jointly measurable, what is the
Svetlichny-steering value, and does the parent-POVM assemblage match?
Output is CSV.
"""
import argparse

import numpy as np

from steerlab.analysis import preset
from steerlab.assemblage import lhs_reconstruct, steer
from steerlab.inequalities import builtin, evaluate
from steerlab.measurements import jointly_measurable, parent_povm


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=21)
    args = ap.parse_args()
    e = builtin("svetlichny_steering")
    print("eta,compatible,value,margin,assemblage_deviation")
    for eta in np.linspace(0, 1, args.points):
        s = preset("ex3", eta=float(eta))
        charlie = s.settings[2]
        compatible = jointly_measurable(*charlie)
        value, margin = evaluate(e, s.table())
        dev = ""
        if compatible:
            rho = s.state()
            dev = f"{steer(rho, charlie).max_deviation(lhs_reconstruct(rho, parent_povm(*charlie))):.3e}"
        print(f"{eta:.4f},{compatible},{value:.12g},{margin:.12g},{dev}")


if __name__ == "__main__":
    main()
