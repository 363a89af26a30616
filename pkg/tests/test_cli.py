"""End-to-end tests for the command line interface, run in-process."""

import json

import pytest

from k3lattices.cli import main
from k3lattices.lattices import lattice_to_json, make_named


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- lattice-info -----------------------------------------------------------

def test_lattice_info_k7(capsys):
    code, out, _ = run(capsys, "lattice-info", "K7")
    assert code == 0
    assert "K7" in out
    assert "rank        2" in out
    assert "det         7" in out
    assert "signature   (0, 2, 0)" in out
    assert "even        yes" in out
    assert "Z/7" in out


def test_lattice_info_a15_json(capsys):
    code, out, _ = run(capsys, "lattice-info", "A15", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["det"] == "-16"
    assert data["rank"] == "15"
    assert data["discriminant_group"]["invariant_factors"] == ["16"]
    assert data["even"] is True
    # exact values ride as strings, never floats
    assert all(isinstance(q, str) for q in data["discriminant_group"]["qvalues"])


def test_lattice_info_composite_name(capsys):
    code, out, _ = run(capsys, "lattice-info", "U + E8 + A6")
    assert code == 0
    assert "rank        16" in out
    assert "det         -7" in out
    assert "signature   (1, 15, 0)" in out


def test_lattice_info_from_file(capsys, tmp_path):
    path = tmp_path / "k7.json"
    path.write_text(lattice_to_json(make_named("K7")))
    code, out, _ = run(capsys, "lattice-info", str(path))
    assert code == 0
    assert "det         7" in out


def test_lattice_info_unknown_name(capsys):
    code, _, err = run(capsys, "lattice-info", "Q5")
    assert code == 2
    assert "error" in err


def test_lattice_info_empty_file(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("")
    code, _, err = run(capsys, "lattice-info", str(path))
    assert code == 2
    assert "error" in err


def test_lattice_info_malformed_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"gram": [[0, 1], [1]]}')
    code, _, err = run(capsys, "lattice-info", str(path))
    assert code == 2


# --- fibration ----------------------------------------------------------------

def test_fibration_first_builtin(capsys):
    code, out, _ = run(capsys, "fibration", "i7e8")
    assert code == 0
    assert "I7" in out and "II*" in out and "t^7 - 2" in out
    assert "Euler total 24" in out
    assert "MW rank     0" in out


def test_fibration_second_builtin(capsys):
    code, out, _ = run(capsys, "fibration", "e7e6")
    assert code == 0
    assert "III*" in out and "IV*" in out and "27*t^7 + 4" in out
    assert "MW rank     1" in out


def test_fibration_json_output(capsys):
    code, out, _ = run(capsys, "fibration", "i7e8", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["euler_total"] == "24"
    assert data["mw_rank"] == "0"
    assert [f["type"] for f in data["fibers"]] == ["I7", "I1", "II*"]
    assert [f["count"] for f in data["fibers"]] == ["1", "7", "1"]
    assert data["consistent"] is True


def test_fibration_from_weierstrass_file(capsys, tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps(
        {"a4": ["0", "0", "0", "1"], "a6": ["0"] * 8 + ["1"]}))
    code, out, _ = run(capsys, "fibration", str(path))
    assert code == 0
    assert "III*" in out and "IV*" in out


def test_fibration_from_fibration_file(capsys, tmp_path):
    path = tmp_path / "fib.json"
    path.write_text(json.dumps({
        "fibers": [{"place": "0", "type": "II*"},
                   {"place": "t^14 - 3", "type": "I1", "count": 14}],
        "mw_rank": 0}))
    code, out, _ = run(capsys, "fibration", str(path))
    assert code == 0
    assert "Euler total 24" in out
    assert "NS rank     10" in out


def test_fibration_euler_deficit_exits_one(capsys, tmp_path):
    path = tmp_path / "fib.json"
    path.write_text(json.dumps({
        "fibers": [{"place": "0", "type": "II*"}], "mw_rank": 0}))
    code, out, _ = run(capsys, "fibration", str(path))
    assert code == 1
    assert "FLAG" in out and "10" in out


def test_fibration_k3_bound_rejected(capsys, tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({"a4": ["0"], "a6": ["0"] * 13 + ["1"]}))
    code, _, err = run(capsys, "fibration", str(path))
    assert code == 2
    assert "K3 bound" in err


def test_fibration_unknown_source(capsys):
    code, _, err = run(capsys, "fibration", "no-such-model")
    assert code == 2
    assert "i7e8" in err   # the error names the built-ins


# --- verify-all -----------------------------------------------------------------

def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify-all")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert len(lines) == 12
    assert all(l.startswith("PASS") for l in lines)
    assert "all checks passed" in out


def test_verify_all_perturb_fails(capsys):
    code, out, _ = run(capsys, "verify-all", "--perturb")
    assert code == 1
    assert any(l.startswith("FAIL") for l in out.splitlines())
    assert "verification FAILED" in out


def test_verify_all_json_schema(capsys):
    code, out, _ = run(capsys, "verify-all", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert len(data["checks"]) == 12
    ids = [c["id"] for c in data["checks"]]
    assert len(set(ids)) == 12
    assert ids == sorted(ids)
    for check in data["checks"]:
        assert check["status"] == "pass"
        assert isinstance(check["anchor"], str)
        for value in check["values"].values():
            assert isinstance(value, str)


def test_verify_all_json_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify-all", "--json")
    code2, out2, _ = run(capsys, "verify-all", "--json")
    assert code1 == code2 == 0
    d1, d2 = json.loads(out1), json.loads(out2)
    d1.pop("timestamp"), d2.pop("timestamp")
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


# --- argument handling ------------------------------------------------------------

def test_no_arguments_is_usage_error(capsys):
    assert run(capsys, )[0] == 2


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "verify-all" in out
