import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from so2n import cli
from so2n.errors import TheoremViolation

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("UPDATE_GOLDEN") == "1"

CASES = {
    "roots_n4": ["roots", "--n", "4"],
    "wm_n4": ["wm", "--n", "4", "--list"],
    "wm_n6_gln": ["wm", "--n", "6", "--levi", "gln"],
    "poles_n4": ["poles", "--n", "4"],
    "kato_n4": ["kato", "--n", "4"],
    "kato_n4_numeric": ["kato", "--n", "4", "--p", "3", "--tau-exponent", "1/5"],
    "satake_n4_p2": ["satake", "--n", "4", "--p", "2"],
    "bounds_n4": ["bounds", "--n", "4", "--p", "2", "--tau-exponent", "7/64"],
    "classify_residual": ["classify", "--n", "8", "--param", "eps*sp11 + eps*sp3 + unit(t) + unit(t^-1)"],
    "hecke_matrix_residual": ["hecke-matrix", "--param", "unit(t)*sp4 + unit(t^-1)*sp4", "--p", "5"],
    "norm_3_27": ["norm", "--p", "3", "--coords", "3,27"],
    "char_check_n2": ["char-check", "--n", "2", "--p", "3", "--s", "1/4", "--trials", "20", "--seed", "4"],
    "packet_n4": ["packet", "--n", "4"],
    "degeneracy_n6": ["degeneracy", "--n", "6", "--trials", "200", "--seed", "1"],
    "selftest": ["selftest"],
}


def run_json(argv, capsys):
    code = cli.run(argv + ["--format", "json"])
    return code, capsys.readouterr().out


@pytest.mark.parametrize("name", sorted(CASES))
def test_json_output_matches_golden(name, capsys):
    code, out = run_json(CASES[name], capsys)
    assert code == 0
    path = GOLDEN / f"{name}.json"
    if UPDATE:
        path.write_text(out)
    assert out == path.read_text()
    doc = json.loads(out)
    assert doc["schema"] == 1 and doc["command"] == CASES[name][0] and doc["citations"]


@pytest.mark.parametrize("name", ["poles_n4", "degeneracy_n6", "char_check_n2"])
def test_json_is_byte_stable(name, capsys):
    assert run_json(CASES[name], capsys)[1] == run_json(CASES[name], capsys)[1]


def test_key_values_in_goldens():
    load = lambda name: json.loads((GOLDEN / f"{name}.json").read_text())["results"]
    assert load("poles_n4")["order"] == -2 and load("poles_n4")["normalized_order"] == 0
    assert load("satake_n4_p2")["value"] == "135"
    assert load("wm_n4")["size"] == 8 and load("wm_n6_gln")["size"] == 2
    assert load("norm_3_27")["delta_IV"] == "p^2"
    assert load("char_check_n2")["summary"] == "20/20 identities hold exactly"
    assert load("classify_residual")["verdict"] == "Residual"
    assert load("degeneracy_n6")["max_rank"] == 4
    assert load("packet_n4")["component_group_order"] == 1


def test_table_format(capsys):
    assert cli.run(["satake", "--n", "4", "--p", "2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# satake") and "value" in out and "135" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["roots"],
        ["poles", "--n", "5"],
        ["norm", "--p", "4", "--coords", "3"],
        ["classify", "--n", "4", "--param", "unit(t)*sp4 + bogus"],
        ["char-check", "--n", "2", "--p", "2"],
        ["satake", "--n", "4", "--p", "2", "--at", "residual"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_1(argv, capsys):
    assert cli.run(argv) == 1
    assert capsys.readouterr().err


def test_parse_error_points_at_position(capsys):
    cli.run(["classify", "--n", "4", "--param", "unit(t)*sp4 + bogus"])
    err = capsys.readouterr().err
    assert "^" in err


def test_invalid_parameter_exits_1_with_report(capsys):
    code = cli.run(["classify", "--n", "4", "--param", "sp5 + eps(a) + eps(b) + eps(c)", "--format", "json"])
    assert code == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["results"]["valid"] is False and doc["results"]["violations"]


def test_theorem_violation_exits_2(monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise TheoremViolation("forced")

    monkeypatch.setattr(cli, "degeneracy_theorem_check", broken)
    assert cli.run(["degeneracy", "--n", "4"]) == 2
    assert "forced" in capsys.readouterr().err


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "so2n", "roots", "--n", "2"], capture_output=True, text=True)
    assert out.returncode == 0 and "weyl_order" in out.stdout
