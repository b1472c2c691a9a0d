import json
import subprocess
import sys

import pytest

from fraisse.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def payload(out):
    data = json.loads(out)
    assert set(data) == {"status", "payload", "diagnostics"}
    return data


def test_enumerate_measures_json(capsys):
    code, out = run(capsys, "--n", "2", "enumerate-measures")
    data = payload(out)
    assert code == 0 and data["status"] == "ok"
    assert data["payload"]["count"] == 36
    assert {m["support"] for m in data["payload"]["measures"]} >= {"ord", "rev", "Trivial", "dT3(1)"}


def test_enumerate_measures_table(capsys):
    code, out = run(capsys, "enumerate-measures", "--n", "2", "--format", "table")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 37
    assert lines[0].split() == ["#", "B(1)", "C(1,1)", "C(1,2)", "B(2)", "C(2,1)", "C(2,2)", "Support"]


def test_enumerate_measures_out_of_range(capsys):
    code, out = run(capsys, "--n", "7", "enumerate-measures")
    data = payload(out)
    assert code == 2 and data["status"] == "error" and data["diagnostics"]


def test_eval_examples(capsys, tmp_path):
    code, out = run(capsys, "--n", "3", "eval", "--induced", "1,2,3/1,2,3", "(2 (3 * *) (3 * *))")
    assert code == 0 and payload(out)["payload"]["value"] == "-1/128"
    code, out = run(capsys, "--n", "2", "eval", "--index", "0", "()")
    assert payload(out)["payload"]["value"] == "1"
    _, listing = run(capsys, "--n", "2", "enumerate-measures")
    first = payload(listing)["payload"]["measures"][10]
    path = tmp_path / "mu.json"
    path.write_text(json.dumps(first))
    code, out = run(capsys, "--n", "2", "eval", "--measure", str(path), "(1 * *)")
    assert code == 0 and payload(out)["payload"]["measure"] == {"file": str(path)}


@pytest.mark.parametrize(
    "argv",
    [
        ["--n", "2", "eval", "--index", "0", "(3 * *)"],
        ["--n", "2", "eval", "--index", "0", "(1 * *"],
        ["--n", "2", "eval", "(1 * *)"],
        ["--n", "2", "eval", "--index", "99", "*"],
        ["--n", "2", "eval", "--measure", "/nonexistent.json", "*"],
        ["amalgamate", "*", "*", "--base", "*", "--left-map", "0-0"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    data = payload(out)
    assert code == 2 and data["status"] == "error" and data["diagnostics"]


def test_unknown_command_exits_two(capsys):
    assert main(["no-such-command"]) == 2


def test_subclasses_and_amalgamate(capsys):
    code, out = run(capsys, "--n", "2", "subclasses")
    entries = payload(out)["payload"]["subclasses"]
    assert code == 0 and len(entries) == 9
    assert sorted(e["name"] for e in entries if "name" in e and e["infinite"]) == sorted(
        ["dT3(2)", "nt-1", "nt-2", "nr-1", "nr-2", "ord", "rev"]
    )
    code, out = run(capsys, "amalgamate", "*", "*")
    assert code == 0 and payload(out)["payload"]["count"] == 2


def test_gram(capsys):
    code, out = run(capsys, "--n", "1", "gram", "--index", "3", "*")
    data = payload(out)["payload"]
    assert code == 0 and data["nondegenerate"] and data["dimension"] == 2


def test_verify_suites(capsys):
    for suite in ("appendix-a", "example-4-2", "counts"):
        code, out = run(capsys, "verify", suite)
        assert code == 0 and payload(out)["payload"]["pass"]
    code, out = run(capsys, "verify", "nope")
    assert code == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    from fraisse import verify

    monkeypatch.setitem(verify.SUITES, "counts", lambda: {"suite": "counts", "pass": False})
    code, out = run(capsys, "verify", "counts")
    data = payload(out)
    assert code == 1 and data["status"] == "error" and data["diagnostics"] == ["suite failed: counts"]


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "fraisse.cli", "--n", "2", "subclasses"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second
