import json
import subprocess
import sys

import pytest

from noncancel.cli import bundled_manifest, load_manifest, main

SMALL = [
    {"id": "iso", "kind": "classify", "params": {"n": 4, "p1": "1+x", "p2": "3+6*x", "expect": "iso"}},
    {"id": "not-iso", "kind": "classify", "params": {"n": 4, "p1": "1+x", "p2": "1+x+x^2", "expect": "not-iso"}},
    {"id": "center", "kind": "center-iso", "params": {"n": 2, "p": "4+x"}},
]


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


def test_empty_manifest(tmp_path, capsys):
    m = write(tmp_path, "m.json", [])
    assert main(["run", "--manifest", m, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["reports"] == []


def test_bad_json_reports_position(tmp_path, capsys):
    m = write(tmp_path, "m.json", '[{"id": "a",\n  oops}]')
    assert main(["run", "--manifest", m]) == 2
    err = capsys.readouterr().err
    assert "m.json:2:3: invalid JSON" in err


def test_malformed_polynomial_names_the_scenario(tmp_path, capsys):
    m = write(tmp_path, "m.json", [{"id": "broken-p", "kind": "classify",
                                    "params": {"n": 4, "p1": "1+x+", "p2": "1"}}])
    assert main(["run", "--manifest", m]) == 2
    err = capsys.readouterr().err
    assert "broken-p" in err and "p1" in err and "column 5" in err


@pytest.mark.parametrize("entry", [
    {"id": "k", "kind": "teleport", "params": {}},
    {"kind": "classify", "params": {}},
    {"id": "n", "kind": "section2", "params": {"check": "nope"}},
])
def test_invalid_scenarios_exit_2(tmp_path, entry):
    m = write(tmp_path, "m.json", [entry])
    assert main(["run", "--manifest", m]) == 2


def test_duplicate_ids_rejected(tmp_path):
    m = write(tmp_path, "m.json", [SMALL[0], SMALL[0]])
    assert main(["run", "--manifest", m]) == 2


def test_seed_range(tmp_path):
    m = write(tmp_path, "m.json", [])
    assert main(["run", "--manifest", m, "--seed", str(2 ** 64 - 1)]) == 0
    assert main(["run", "--manifest", m, "--seed", str(2 ** 64)]) == 2
    assert main(["run", "--manifest", m, "--seed", "-1"]) == 2


def test_scenario_filter(tmp_path, capsys):
    m = write(tmp_path, "m.json", SMALL)
    assert main(["run", "--manifest", m, "--scenario", "center", "--format", "json"]) == 0
    ids = [r["id"] for r in json.loads(capsys.readouterr().out)["reports"]]
    assert ids == ["center"]
    assert main(["run", "--manifest", m, "--scenario", "missing"]) == 2


def test_bare_flags_mean_run(tmp_path, capsys):
    m = write(tmp_path, "m.json", SMALL[:1])
    assert main(["--manifest", m]) == 0
    assert "1/1 scenarios passed" in capsys.readouterr().out


def test_json_is_deterministic_and_rechecks(tmp_path, capsys):
    m = write(tmp_path, "m.json", SMALL)
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", "--manifest", m, "--format", "json", "--out", str(a), "--seed", "7"]) == 0
    assert main(["run", "--manifest", m, "--format", "json", "--out", str(b), "--seed", "7", "--jobs", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().endswith("}\n")
    capsys.readouterr()
    assert main(["recheck", str(a)]) == 0
    assert "recheck passed" in capsys.readouterr().out


def test_recheck_detects_tampering(tmp_path, capsys):
    m = write(tmp_path, "m.json", SMALL[:1])
    out = tmp_path / "r.json"
    assert main(["run", "--manifest", m, "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    bindings = doc["reports"][0]["certificates"]["bindings"]
    name = next(k for k, b in bindings.items() if k.startswith("u"))
    bindings[name]["value"] = f"2*({bindings[name]['value']})"
    out.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["recheck", str(out)]) == 1
    assert "FAIL iso" in capsys.readouterr().out


def test_recheck_rejects_pass_without_certificates(tmp_path):
    doc = {"reports": [{"id": "x", "verdict": "pass", "certificates": {}}]}
    assert main(["recheck", write(tmp_path, "r.json", doc)]) == 1
    assert main(["recheck", write(tmp_path, "bad.json", "{")]) == 2


@pytest.mark.parametrize("argv, code", [
    (["classify", "--n", "4", "--p1", "1+x", "--p2", "3+6*x", "--expect", "iso"], 0),
    (["classify", "--n", "4", "--p1", "1+x", "--p2", "1+x+x^2", "--expect", "iso"], 1),
    (["cylinder-iso", "--n", "3", "--p", "1+x"], 0),
    (["cylinder-iso", "--n", "4", "--p", "1+x+a*x^2", "--a", "2"], 0),
    (["analytic-jet", "--N", "8"], 0),
    (["analytic-jet", "--N", "8", "--corrupt"], 0),
    (["equ-crit", "--n", "3", "--samples", "3"], 0),
    (["equ-crit", "--n", "3", "4", "--samples", "3", "--mode", "separate"], 0),
    (["stable-equiv"], 0),
    (["center-iso"], 0),
    (["section2", "--check", "scalar"], 0),
    (["section2", "--check", "coordinate-change", "--alpha", "-2", "--expect", "fail"], 0),
    (["classify", "--n", "4"], 2),
])
def test_subcommands(argv, code, capsys):
    assert main(argv) == code


def test_bundled_manifest_loads():
    scenarios = load_manifest(bundled_manifest())
    assert len(scenarios) == len({s["id"] for s in scenarios}) >= 30


def test_bundled_manifest_all_pass(tmp_path, capsys):
    out = tmp_path / "paper.json"
    assert main(["run", "--jobs", "4", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert all(r["verdict"] == "pass" for r in doc["reports"])
    assert main(["recheck", str(out)]) == 0


def test_module_entry_point(tmp_path):
    m = write(tmp_path, "m.json", [])
    proc = subprocess.run([sys.executable, "-m", "noncancel", "run", "--manifest", m],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "0/0 scenarios passed" in proc.stdout
