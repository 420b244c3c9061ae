"""Command-line front end.

Every JSON-emitting command prints a run record::

    {"command", "parameters", "outputs", "tolerances", "seed", "version", "timestamp"}

Floats are rounded to 12 significant digits. Errors in numeric input exit
with code 1 and a JSON error object; usage errors exit with code 2.
"""
from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .analysis import PRESETS, critical_visibility, preset, seesaw_max
from .assemblage import lhs_reconstruct, steer, validate_assemblage
from .correlations import (
    BB84_RELABELING,
    FAMILIES,
    Relabeling,
    bb84_settings,
    born_table,
    chsh_settings,
    family_table,
    ghz_canonical_settings,
    validate_table,
)
from .errors import InfeasibleError, UnsupportedError
from .inequalities import BUILTIN_NAMES, builtin, evaluate, max_over_equivalents
from .localpolytope import is_local
from .measurements import busch_lhs, jointly_measurable, noisy, parent_povm
from .states import STATE_IDS, make_state

SETTINGS_PRESETS = ("chsh", "bb84", "ghz-canonical") + PRESETS


def _tol(default: float) -> float:
    env = os.environ.get("STEERLAB_TOL")
    return float(env) if env else default


def _round(obj):
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if not np.isfinite(x) else float(f"{x:.12g}")
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round(obj.tolist())
    return obj


def _record(args, outputs: dict, tolerances: dict | None = None, seed=None) -> dict:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    return _round({
        "command": args.command,
        "parameters": params,
        "outputs": outputs,
        "tolerances": tolerances or {},
        "seed": seed,
        "version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    })


def _emit(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


# commands ---------------------------------------------------------------------


def cmd_families(args) -> int:
    t = family_table(args.id, args.v)
    rows = list(t.records())
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        n = t.n_parties
        w.writerow([f"x{k}" for k in range(n)] + [f"a{k}" for k in range(n)] + ["p"])
        for r in rows:
            w.writerow(r["settings"] + r["outcomes"] + [f"{r['p']:.12g}"])
        sys.stdout.write(buf.getvalue())
        return 0
    rep = validate_table(t)
    _emit(_record(args, {
        "family": args.id, "v": args.v, "n_parties": t.n_parties, "entries": rows,
        "normalization_residual": rep.normalization, "no_signaling_violation": rep.no_signaling,
    }))
    return 0


def _settings_table(name: str, state_id: str, v, eta: float):
    name = name.lower()
    if name in PRESETS:
        s = preset(name, eta=eta, v=1.0 if v is None else v)
        s.state_id = state_id
        s.v = v
        return s.table(), s.relabeling
    rho = make_state(state_id, v)
    if name == "chsh":
        return born_table(rho, chsh_settings()), Relabeling.identity(2)
    if name == "bb84":
        return BB84_RELABELING.apply(born_table(rho, bb84_settings())), BB84_RELABELING
    if name == "ghz-canonical":
        return born_table(rho, ghz_canonical_settings()), Relabeling.identity(3)
    raise UnsupportedError(f"unknown settings preset {name!r}; valid: {', '.join(SETTINGS_PRESETS)}")


def cmd_evaluate(args) -> int:
    e = builtin(args.ineq)
    if args.family:
        t = family_table(args.family, 1.0 if args.v is None else args.v)
        table_relabeling = None
    elif args.state:
        t, g = _settings_table(args.settings, args.state, args.v, args.eta)
        table_relabeling = None if g.is_identity else g.to_dict()
    else:
        raise UnsupportedError("evaluate needs --family or --state")
    if args.equivalents:
        value, g = max_over_equivalents(e, t)
        relabeling = g.to_dict()
    else:
        value, _ = evaluate(e, t)
        relabeling = None
    _emit(_record(args, {
        "inequality": e.name, "terms": e.terms(), "value": value, "bound": e.bound,
        "margin": value - e.bound, "violated": value - e.bound > 0, "regime": e.regime,
        "caveat": e.caveat, "relabeling": relabeling, "table_relabeling": table_relabeling,
    }))
    return 0


def cmd_scan(args) -> int:
    e = builtin(args.ineq)
    if args.grid < 2:
        raise UnsupportedError("--grid needs at least 2 points")
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["v", "value", "margin"])
    for v in np.linspace(0.0, 1.0, args.grid):
        t = family_table(args.family, float(v))
        value = max_over_equivalents(e, t)[0] if args.equivalents else evaluate(e, t)[0]
        w.writerow([f"{v:.12g}", f"{value:.12g}", f"{value - e.bound:.12g}"])
    sys.stdout.write(out.getvalue())
    if args.threshold:
        vc = critical_visibility(lambda v: family_table(args.family, v), e, tol=_tol(1e-9),
                                 equivalents=args.equivalents)
        print(f"# critical visibility: {'none' if vc is None else f'{vc:.12g}'}")
    return 0


def cmd_optimize(args) -> int:
    rho = make_state(args.state, args.v)
    e = builtin(args.ineq)
    r = seesaw_max(rho, e, restarts=args.restarts, seed=args.seed)
    out = r.to_dict()
    out.update({"inequality": e.name, "bound": e.bound, "algebraic_max": e.algebraic_max,
                "margin": r.value - e.bound})
    _emit(_record(args, out, {"convergence": 1e-10}, seed=args.seed))
    return 0


def cmd_jm_check(args) -> int:
    theta = np.deg2rad(args.angle)
    p0 = noisy([1.0, 0.0, 0.0], args.eta)
    p1 = noisy([np.cos(theta), np.sin(theta), 0.0], args.eta)
    _emit(_record(args, {"compatible": jointly_measurable(p0, p1), "busch_lhs": busch_lhs(p0, p1), "bound": 2.0},
                  {"equality": 1e-12}))
    return 0


def cmd_local_check(args) -> int:
    tol = args.tol if args.tol is not None else _tol(1e-8)
    r = is_local(family_table(args.family, args.v), tol=tol)
    out = {"feasible": r.feasible, "distance": r.distance}
    if r.feasible:
        out["weights"] = r.weights
    else:
        out["witness"] = {"coefficients": r.witness.ravel(), "local_bound": r.witness_bound,
                          "value": r.witness_value}
    _emit(_record(args, out, {"feasibility": tol}))
    return 0


def cmd_assemblage(args) -> int:
    rho = make_state(args.state, args.v)
    charlie = preset("ex3", eta=args.eta).settings[2]
    a = steer(rho, charlie)
    rep = validate_assemblage(a)
    compatible = jointly_measurable(*charlie)
    out = {
        "charlie_directions": [p.direction for p in charlie], "eta": args.eta,
        "entries": a.to_dict(),
        "report": {"min_eigenvalue": rep.min_eigenvalue, "no_signaling": rep.no_signaling,
                   "trace_residual": rep.trace},
        "compatible": compatible,
        "reconstruction_deviation": None,
    }
    if compatible:
        try:
            out["reconstruction_deviation"] = a.max_deviation(lhs_reconstruct(rho, parent_povm(*charlie)))
        except (InfeasibleError, UnsupportedError):
            pass
    _emit(_record(args, out, {"psd": 1e-10, "equality": 1e-12}))
    return 0


def cmd_preset(args) -> int:
    s = preset(args.id, eta=args.eta, v=args.v)
    e = builtin(s.ineq)
    t = s.table()
    value, margin = evaluate(e, t)
    out = {
        "id": s.name, "state": s.state_id, "v": s.v, "directions": s.directions(), "etas": s.etas(),
        "inequality": e.name, "value": value, "bound": e.bound, "margin": margin,
        "family": s.family, "relabeling": s.relabeling.to_dict(), "notes": s.notes,
    }
    if len(s.settings) == 3:
        out["charlie_compatible"] = jointly_measurable(*s.settings[2])
    _emit(_record(args, out))
    return 0


def cmd_reproduce(args) -> int:
    from .reproduce import format_table, run_all

    rows = run_all()
    print(format_table(rows))
    print("not reproduced (out of scope): V > 0.429 genuine-entanglement boundary of the noisy GHZ state")
    return 0 if all(r.passed for r in rows) else 1


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="steerlab", description="Bell, steering and tripartite steering certification")
    p.add_argument("--version", action="version", version=f"steerlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("families", help="dump a correlation family table")
    s.add_argument("--id", required=True, choices=sorted(FAMILIES))
    s.add_argument("--v", type=float, required=True)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("evaluate", help="evaluate an inequality on a family or a state")
    s.add_argument("--ineq", required=True, choices=BUILTIN_NAMES)
    s.add_argument("--family", choices=sorted(FAMILIES))
    s.add_argument("--state", choices=STATE_IDS)
    s.add_argument("--settings", choices=SETTINGS_PRESETS, default="chsh")
    s.add_argument("--v", type=float)
    s.add_argument("--eta", type=float, default=1.0)
    s.add_argument("--equivalents", action="store_true", help="maximize over relabeled versions")
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("scan", help="CSV of value and margin over a visibility grid")
    s.add_argument("--family", required=True, choices=sorted(FAMILIES))
    s.add_argument("--ineq", required=True, choices=BUILTIN_NAMES)
    s.add_argument("--grid", type=int, default=21)
    s.add_argument("--equivalents", action="store_true")
    s.add_argument("--threshold", action="store_true", help="append the critical visibility as a comment")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("optimize", help="seesaw maximization over sharp qubit observables")
    s.add_argument("--state", required=True, choices=STATE_IDS)
    s.add_argument("--v", type=float)
    s.add_argument("--ineq", required=True, choices=BUILTIN_NAMES)
    s.add_argument("--restarts", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_optimize)

    s = sub.add_parser("jm-check", help="joint measurability of two equally noisy qubit measurements")
    s.add_argument("--eta", type=float, required=True)
    s.add_argument("--angle", type=float, default=90.0, help="angle between directions in degrees")
    s.set_defaults(func=cmd_jm_check)

    s = sub.add_parser("local-check", help="LP membership in the local polytope")
    s.add_argument("--family", required=True, choices=sorted(FAMILIES))
    s.add_argument("--v", type=float, required=True)
    s.add_argument("--tol", type=float)
    s.set_defaults(func=cmd_local_check)

    s = sub.add_parser("assemblage", help="assemblage prepared by Charlie's noisy measurements")
    s.add_argument("--state", required=True, choices=STATE_IDS)
    s.add_argument("--v", type=float)
    s.add_argument("--eta", type=float, required=True)
    s.set_defaults(func=cmd_assemblage)

    s = sub.add_parser("preset", help="one of the worked examples")
    s.add_argument("--id", required=True, choices=PRESETS)
    s.add_argument("--eta", type=float, default=1.0)
    s.add_argument("--v", type=float, default=1.0)
    s.set_defaults(func=cmd_preset)

    s = sub.add_parser("reproduce", help="run every headline check and print a pass/fail table")
    s.add_argument("--paper-tables", action="store_true", help="print the full check table (the default)")
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc)}, "command": args.command})
        return 1


if __name__ == "__main__":
    sys.exit(main())
