from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ordsep import corpus
from ordsep.cli import main, render_human

PARITY = str(corpus.path("omega_parity"))
J = f"{PARITY}:J"
K = f"{PARITY}:K"
L = f"{PARITY}:L"


def run(capsys, *argv):
    code = main(["--format", "json", *argv])
    out, err = capsys.readouterr()
    return code, json.loads(out) if code == 0 else None, err


def test_validate(capsys):
    code, rec, _ = run(capsys, "validate", PARITY)
    assert code == 0 and rec["status"] == "ok" and rec["elements"] == 6
    code, rec, _ = run(capsys, "validate", "--power", str(corpus.path("u1")))
    assert code == 0 and rec["power_elements"] == 3


def test_validate_reports_violations(tmp_path, capsys):
    text = corpus.path("omega_parity").read_text().replace("omega: a a^w", "omega: a aa")
    bad = tmp_path / "bad.mon"
    bad.write_text(text)
    code, rec, _ = run(capsys, "validate", str(bad))
    assert code == 0 and rec["status"] == "invalid"
    assert {v["axiom"] for v in rec["violations"]} >= {"power"}


def test_greens_and_aperiodic(capsys):
    code, rec, _ = run(capsys, "greens", PARITY)
    assert [c["members"] for c in rec["j_classes"]][1] == ["a", "aa"]
    code, rec, _ = run(capsys, "aperiodic", PARITY)
    assert rec == {"command": "aperiodic", "aperiodic": False, "counterexample": "a"}


def test_saturate(capsys):
    code, rec, _ = run(capsys, "saturate", PARITY)
    assert rec["size"] == 8 and rec["members"][7]["set"] == ["a^w.a", "a^w.a.a"]
    code, rec, _ = run(capsys, "saturate", PARITY, "--seed", "a^w.a")
    assert [m["set"] for m in rec["members"]] == [["a^w.a"], ["1"], ["a^w"]]


def test_separate_and_cover(capsys):
    code, rec, _ = run(capsys, "separate", J, K)
    assert code == 0 and rec["verdict"] == "no" and rec["certificate"] == "ok"
    assert rec["blocking_set"] == ["a^w.a", "a^w.a.a"]
    code, rec, _ = run(capsys, "separate", K, L)
    assert rec["verdict"] == "yes"
    code, rec, _ = run(capsys, "separate", str(corpus.path("J.rec")), str(corpus.path("K.rec")))
    assert rec["verdict"] == "no"
    code, rec, _ = run(capsys, "cover", J, K)
    assert rec["verdict"] == "no"
    # no member meets J, K and L at once
    code, rec, _ = run(capsys, "cover", J, K, L)
    assert rec["verdict"] == "yes"
    code, rec, _ = run(capsys, "cover", J)
    assert rec["verdict"] == "yes" and "trivial" in rec


def test_pointlikes(capsys):
    code, rec, _ = run(capsys, "pointlikes", PARITY)
    assert rec["size"] == 8 and ["a^w.a", "a^w.a.a"] in rec["maximal"]


def test_witness(capsys):
    code, rec, _ = run(capsys, "--k", "2", "witness", J, K)
    assert code == 0 and rec["derivation_check"] == "ok"
    assert (rec["u"], rec["v"]) == ("a^w . a^6", "a^w . a^5")
    assert (rec["u_value"], rec["v_value"]) == ("a^w.a.a", "a^w.a")
    code, rec, _ = run(capsys, "witness", J, K, "--k", "1", "--derivation")
    assert rec["derivation"]["rule"] == "Trans"
    code, rec, _ = run(capsys, "witness", K, L)
    assert code == 0 and rec["verdict"] == "yes" and "note" in rec


def test_eval_and_approx(capsys):
    code, rec, _ = run(capsys, "eval", PARITY, "(a)^w . a^5")
    assert rec["value"] == "a^w.a" and rec["accepted_by"] == ["K"]
    code, rec, _ = run(capsys, "approx", PARITY, "a", "w+1")
    assert rec["value"] == ["a^w.a", "a^w.a.a"] and (rec["ell"], rec["n"]) == (1, 1)


@pytest.mark.parametrize(
    "argv",
    [
        ["validate", "/nonexistent.mon"],
        ["eval", PARITY, "a +"],
        ["eval", PARITY, "b"],
        ["approx", PARITY, "a", "w+x"],
        ["approx", PARITY, "a", "w", "--ell", "0"],
        ["separate", f"{PARITY}:Q", K],
        ["separate", J, str(corpus.path("cyclic2")) + ":odd"],
        ["pointlikes", str(corpus.path("J.rec")) + "x"],
        ["validate", "--power", "--cap", "2", PARITY],
    ],
)
def test_malformed_input_exits_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_commands_needing_letters(tmp_path, capsys):
    f = tmp_path / "e.mon"
    f.write_text("elements: e\nunit: e\nmul: e e e\nomega: e e\n")
    assert main(["pointlikes", str(f)]) == 2
    assert "letters" in capsys.readouterr().err
    assert main(["saturate", str(f), "--seed", "e"]) == 0


def test_file_errors_name_the_source(tmp_path, capsys):
    bad = tmp_path / "bad.mon"
    bad.write_text("elements: 1\nunit: 2\n")
    assert main(["validate", str(bad)]) == 2
    assert f"{bad}: line 2, column 7: unknown element '2'" in capsys.readouterr().err


def test_human_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        assert main(["separate", J, K]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert "verdict: no" in outs[0] and "blocking_set: [a^w.a, a^w.a.a]" in outs[0]


def test_render_human():
    lines = render_human({"a": 1, "b": [1, 2], "c": [{"x": True}], "d": {}})
    assert lines == ["a: 1", "b: [1, 2]", "c:", "  - x: yes", "d: {}"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ordsep", "--format", "json", "separate", K, L],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "yes"
