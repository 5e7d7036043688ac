from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from defobs.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dinv_text(capsys):
    code, out, _ = run(["dinv", "surgery(T(2,3),2)"], capsys)
    assert code == 0 and out.strip() == "{-7/4, -1/4}"


def test_dinv_negative_descriptor_after_double_dash(capsys):
    code, out, _ = run(["dinv", "--", "-O"], capsys)
    assert code == 0 and out.strip() == "{-7/4, -1/4}"


def test_dinv_large_sum_summarized(capsys):
    code, out, _ = run(["dinv", "--json", "--", "-25*O # 3*P"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["results"]["max"] == "-1/4"
    assert data["results"]["spin_c_count"] == 2**25


def test_cs_json(capsys):
    code, out, _ = run(["cs", "sigma(2,3,5)", "--json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["command"] == "cs" and data["input"] == "sigma(2,3,5)"
    assert data["results"]["spectrum"] == ["0", "1/120", "49/120"]
    assert [c["triple"] for c in data["results"]["connections"]] == [None, [1, 1, 1], [1, 1, 3]]


def test_cs_oracle(capsys):
    code, out, _ = run(["cs", "sigma(2,3,7)", "--oracle", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and "su2-oracle:numeric" in data["provenance"]
    assert data["results"]["spectrum"] == ["0", "25/168", "121/168"]


def test_cs_oracle_undecided_is_internal(capsys, monkeypatch):
    monkeypatch.setenv("DEFOBS_ORACLE_TOL", "1e-30")
    code, _, err = run(["cs", "P", "--oracle"], capsys)
    assert code == 3 and "oracle" in err


def test_gap(capsys):
    assert run(["gap", "P", "--exclude-minimal"], capsys)[1].strip() == "2/5"
    assert run(["gap", "--from", "any", "--to", "trivial", "--", "-P"], capsys)[1].strip() == "71/120"
    assert run(["gap", "O"], capsys)[1].strip() == "1/48"


def test_ends(capsys):
    code, out, _ = run(["ends", "--index", "1", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["results"]["patterns"]) == 3
    code, out, _ = run(["ends", "--index", "1", "--no-reducible-rule", "--json"], capsys)
    assert len(json.loads(out)["results"]["patterns"]) > 3


def test_audit_pos(capsys):
    code, out, _ = run(["audit-pos", "P # -9*O", "--group", "2,2"], capsys)
    assert code == 0
    assert "end count: 4" in out and out.strip().endswith("verdict: contradiction")
    code, out, _ = run(["audit-pos", "P # -P", "--json"], capsys)
    assert json.loads(out)["results"]["verdict"] == "inconclusive"


def test_audit_pos_without_p(capsys):
    code, _, err = run(["audit-pos", "--", "-9*O"], capsys)
    assert code == 2 and "no incoming P; argument inapplicable" in err


def test_theorem(capsys):
    code, out, _ = run(["theorem", "--m", "1", "--k", "9"], capsys)
    assert code == 0
    assert out.strip().endswith(
        "no definite filling of either sign; does not embed in any closed symplectic 4-manifold")
    code, out, _ = run(["theorem", "--m", "1", "--k", "8", "--json"], capsys)
    data = json.loads(out)["results"]
    assert data["negative_definite"]["verdict"] == "inconclusive"
    assert data["positive_definite"]["verdict"] == "contradiction"
    assert data["symplectic_non_embedding"] is False


def test_obstruct_neg(capsys):
    code, out, _ = run(["obstruct-neg", "P # -9*O", "--json"], capsys)
    data = json.loads(out)["results"]
    assert data == {"family": [1, 9], "manifold": "-9*O # P", "max_d": "-1/4",
                    "threshold": "1/4", "verdict": "obstructed"}


def test_parse_error_exit_code(capsys):
    code, _, err = run(["dinv", "P # sigma(2,3"], capsys)
    assert code == 2 and "at position" in err and "^" in err


def test_usage_errors(capsys):
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["theorem", "--m", "1"], capsys)[0] == 2
    assert run(["audit-pos", "P", "--group", "2,x"], capsys)[0] == 2


def _rationals(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _rationals(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _rationals(v)
    elif isinstance(obj, float):
        raise AssertionError(f"float in JSON output: {obj}")
    elif isinstance(obj, str) and obj and obj.lstrip("-").replace("/", "").isdigit():
        yield obj


@pytest.mark.parametrize("argv", [
    ["theorem", "--m", "2", "--k", "17", "--json"],
    ["audit-pos", "P # -9*O", "--json"],
    ["cs", "sigma(2,5,7)", "--json"],
    ["dinv", "P # -3*O", "--json"],
])
def test_json_deterministic_and_exact(argv, capsys):
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second
    data = json.loads(first)
    assert set(data) == {"command", "input", "provenance", "results"}
    assert json.dumps(data, sort_keys=True, indent=2) == first.strip()
    for text in _rationals(data["results"]):
        assert str(Fraction(text)) == text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "defobs", "dinv", "P"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "{2}"
