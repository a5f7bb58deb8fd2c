import json
from unittest.mock import patch

import pytest

from amice_utils import __version__
from amice_utils.amice import amice, dispatch
from amice_utils.read import read_json
from amice_utils.series.laurentwindow import LaurentWindow


def run_cli(args: list[str]) -> int:
    with patch("sys.argv", ["amice"] + args):
        with pytest.raises(SystemExit) as e:
            amice()
    return e.value.code


def test_arith(capsys):
    assert run_cli(["padic", "arith", "--op", "mul", "--x", "12", "--y", "1", "--p", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["tool"] == "amice_utils"
    assert report["version"] == __version__
    assert report["command"] == "padic arith"
    assert report["config"]["prime"] == 2
    assert report["result"]["value"]["unit"] == "3"
    assert report["result"]["value"]["v"] == 2


def test_usage_error(capsys):
    assert run_cli(["padic", "arith", "--x", "1"]) == 64
    assert run_cli(["padic", "arith", "--op", "add", "--x", "1"]) == 64
    assert run_cli(["padic", "arith", "--op", "add", "--x", "1", "--y", "1", "--p", "4"]) == 64


def test_parse_error(capsys, tmp_path):
    missing = str(tmp_path / "missing.json")
    assert run_cli(["solvable", "check", "--in", missing, "--kind", "diff"]) == 65
    report = json.loads(capsys.readouterr().out)
    assert report["error"]["type"] == "ParseError"

    assert run_cli(["padic", "norm", "--x", "abc"]) == 65


def test_domain_error(capsys):
    assert run_cli(["padic", "arith", "--op", "div", "--x", "1", "--y", "0"]) == 2
    report = json.loads(capsys.readouterr().out)
    assert report["error"]["type"] == "DivisionByZero"
    assert report["result"] is None


def test_generate_then_check(family_path, tmp_path):
    op_path = str(tmp_path / "op.json")
    assert dispatch(["solvable", "generate", "--family", family_path, "--kind", "diff", "-o", op_path]) == 0
    assert read_json(op_path)["kind"] == "diff"

    check_path = str(tmp_path / "check.json")
    assert dispatch(["solvable", "check", "--in", op_path, "-o", check_path]) == 0
    assert read_json(check_path)["verdict"] == "PASS-on-window"


def test_check_fails(half_t_path, capsys):
    assert dispatch(["solvable", "check", "--in", half_t_path, "--kind", "diff"]) == 1
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["witness"]["n"] == 1
    assert result["witness"]["test"] == "integrality"


def test_bare_series_needs_kind(half_t_path):
    assert dispatch(["solvable", "check", "--in", half_t_path]) == 64


def test_motzkin_roundtrip(t_plus_two_path, t_plus_two, tmp_path):
    factors_path = str(tmp_path / "factors.json")
    assert dispatch(["motzkin", "decompose", "--in", t_plus_two_path, "-o", factors_path]) == 0
    assert read_json(factors_path)["N"] == 1

    recomposed_path = str(tmp_path / "recomposed.json")
    assert dispatch(["motzkin", "recompose", "--in", factors_path, "-o", recomposed_path]) == 0
    assert LaurentWindow.from_json(read_json(recomposed_path)).agrees(t_plus_two)


def test_lemmas(capsys):
    assert dispatch(["lemmas", "run", "--which", "L3_0_10", "--p", "2", "--n", "3", "--kmax", "40"]) == 0
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["counterexamples"] == []
    assert result["checked"] == 37
    assert "cases" not in result


def test_lemmas_conflicting_range():
    assert dispatch(["lemmas", "run", "--which", "legendre", "--n", "3", "--nmax", "5"]) == 64


def test_radius_table(half_t_path, capsys):
    args = ["radius", "estimate", "--in", half_t_path, "--kind", "diff", "--kmax", "4", "--format", "table"]
    assert dispatch(args + ["--rho", "0", "--rho", "1/2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "rho_exponent" in lines[0].split(",")
    assert len(lines) == 3


def test_reports_are_reproducible(capsys):
    args = ["series", "qnum", "--kind", "q_factorial", "--q", "9", "--n", "4"]
    dispatch(args)
    first = capsys.readouterr().out
    dispatch(args)
    assert capsys.readouterr().out == first


def test_precision_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("AMICE_DEFAULT_PREC", "8")
    assert dispatch(["padic", "norm", "--x", "1/3"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["config"]["prec"] == 8
    assert report["result"]["value"]["prec"] == 8

    # --prec wins over the environment
    dispatch(["padic", "norm", "--x", "1/3", "--prec", "4"])
    assert json.loads(capsys.readouterr().out)["config"]["prec"] == 4


def test_version(capsys):
    assert run_cli(["--version"]) == 0
    assert __version__ in capsys.readouterr().out
