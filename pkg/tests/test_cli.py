import json
from pathlib import Path

import jsonschema
import pytest

from steerlab.cli import main

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "schemas" / "output.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    obj = json.loads(out)
    jsonschema.validate(obj, SCHEMA)
    return code, obj


def test_evaluate_family(capsys):
    code, obj = run_json(capsys, "evaluate", "--ineq", "chsh", "--family", "chsh", "--v", "1.0")
    assert code == 0
    assert obj["outputs"]["value"] == pytest.approx(2.82842712475, abs=1e-11)
    assert obj["outputs"]["bound"] == 2.0
    assert obj["outputs"]["margin"] > 0


def test_evaluate_state_with_preset(capsys):
    code, obj = run_json(capsys, "evaluate", "--ineq", "svetlichny_steering", "--state", "ghz",
                         "--settings", "ex3", "--eta", "0.6")
    assert obj["outputs"]["value"] == pytest.approx(3.39411254970, abs=1e-10)
    assert obj["outputs"]["table_relabeling"]["swaps"] == [False, False, True]


def test_evaluate_equivalents(capsys):
    _, obj = run_json(capsys, "evaluate", "--ineq", "steering", "--family", "bb84", "--v", "0.9", "--equivalents")
    assert obj["outputs"]["value"] == pytest.approx(1.8)
    assert obj["outputs"]["relabeling"] is not None


def test_families_bb84_zero(capsys):
    _, obj = run_json(capsys, "families", "--id", "bb84", "--v", "0")
    entries = obj["outputs"]["entries"]
    assert len(entries) == 16
    assert all(e["p"] == 0.25 for e in entries)


def test_families_csv(capsys):
    code, out = run(capsys, "families", "--id", "svetlichny", "--v", "1", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "x0,x1,x2,a0,a1,a2,p" and len(lines) == 65


def test_scan_csv(capsys):
    code, out = run(capsys, "scan", "--family", "chsh", "--ineq", "chsh", "--grid", "11", "--threshold")
    lines = out.strip().splitlines()
    assert lines[0] == "v,value,margin"
    assert len(lines) == 13
    assert lines[-1].startswith("# critical visibility: 0.7071067")


def test_optimize_deterministic(capsys):
    _, a = run_json(capsys, "optimize", "--state", "singlet", "--ineq", "chsh", "--restarts", "3", "--seed", "7")
    _, b = run_json(capsys, "optimize", "--state", "singlet", "--ineq", "chsh", "--restarts", "3", "--seed", "7")
    assert a["outputs"] == b["outputs"]
    assert a["seed"] == 7


@pytest.mark.parametrize("eta, compatible", [("0.70", True), ("0.72", False)])
def test_jm_check(capsys, eta, compatible):
    _, obj = run_json(capsys, "jm-check", "--eta", eta, "--angle", "90")
    assert obj["outputs"]["compatible"] is compatible
    assert obj["outputs"]["bound"] == 2.0


def test_local_check(capsys):
    _, obj = run_json(capsys, "local-check", "--family", "chsh", "--v", "0.72")
    assert obj["outputs"]["feasible"] is False
    assert obj["outputs"]["witness"]["value"] > obj["outputs"]["witness"]["local_bound"]
    _, obj = run_json(capsys, "local-check", "--family", "bb84", "--v", "1")
    assert obj["outputs"]["feasible"] is True


def test_local_check_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("STEERLAB_TOL", "0.01")
    _, obj = run_json(capsys, "local-check", "--family", "chsh", "--v", "0.72")
    assert obj["outputs"]["feasible"] is True
    assert obj["tolerances"]["feasibility"] == 0.01


def test_assemblage(capsys):
    _, obj = run_json(capsys, "assemblage", "--state", "noisy_ghz", "--v", "0.8", "--eta", "0.6")
    assert obj["outputs"]["compatible"] is True
    assert obj["outputs"]["reconstruction_deviation"] <= 1e-12
    assert len(obj["outputs"]["entries"]) == 4
    _, obj = run_json(capsys, "assemblage", "--state", "ghz", "--eta", "0.9")
    assert obj["outputs"]["compatible"] is False and obj["outputs"]["reconstruction_deviation"] is None


def test_preset(capsys):
    _, obj = run_json(capsys, "preset", "--id", "ex3", "--eta", "0.6")
    assert obj["outputs"]["charlie_compatible"] is True
    assert obj["outputs"]["margin"] > 0


def test_twelve_significant_digits(capsys):
    _, obj = run_json(capsys, "evaluate", "--ineq", "chsh", "--family", "chsh", "--v", "1")
    assert repr(obj["outputs"]["value"]) == "2.82842712475"


def test_domain_error_exit_1(capsys):
    code, out = run(capsys, "evaluate", "--ineq", "chsh", "--family", "chsh", "--v", "1.5")
    obj = json.loads(out)
    jsonschema.validate(obj, SCHEMA)
    assert code == 1 and obj["error"]["type"] == "DomainError"


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["evaluate", "--bogus"])
    assert exc.value.code == 2


def test_reproduce(capsys):
    code, out = run(capsys, "reproduce", "--paper-tables")
    assert code == 0
    rows = [l for l in out.splitlines() if "PASS" in l or "FAIL" in l]
    assert len(rows) == 11 and all("PASS" in r for r in rows)
