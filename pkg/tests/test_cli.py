import csv
import io
import json

import pytest

import scalevar as sv
from scalevar import cli
from conftest import DATA_DIR

GOLDEN = json.loads((DATA_DIR / "golden_exit_codes.json").read_text())


def spec_args(args: list[str]) -> list[str]:
    return [str(DATA_DIR / a) if a.endswith(".json") else a for a in args]


def run_json(capsys, *args: str) -> tuple[int, dict]:
    code = cli.main(spec_args(list(args)))
    return code, json.loads(capsys.readouterr().out)


def test_deriv_csv(capsys):
    code = cli.main(
        ["deriv", "--curve", "abs", "--eps", "0.1", "--grid", "5",
         "--from", "-0.2", "--to", "0.2"]
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["x", "re", "im"]
    assert len(rows) == 6
    values = {float(x): (float(re), float(im)) for x, re, im in rows[1:]}
    assert values[0.0] == (0.0, -1.0)
    assert values[-0.2] == pytest.approx((-1.0, 0.0))
    assert values[0.2] == pytest.approx((1.0, 0.0))


def test_residual_report(capsys):
    code, report = run_json(capsys, "residual", "--spec", "cubic.json")
    assert code == 1
    assert report["command"] == "residual"
    assert report["verdicts"] == {"residual": "not-extremal"}
    assert report["passed"] is False
    row = min(report["results"], key=lambda r: abs(r["x"] - 0.5))
    assert row["value"]["re"] == pytest.approx(-6.0)
    assert row["value"]["im"] == pytest.approx(1.2)
    assert row["limit"]["re"] == pytest.approx(-6.0, abs=1e-6)
    assert row["classical"]["re"] == pytest.approx(-6.0)


def test_residual_extremal(capsys):
    code, report = run_json(capsys, "residual", "--spec", "example1.json")
    assert code == 0
    assert report["verdicts"] == {"residual": "extremal", "param": "zero"}


def test_eps_override_changes_digest(capsys):
    _, base = run_json(capsys, "eval", "--spec", "cubic.json")
    _, other = run_json(capsys, "eval", "--spec", "cubic.json", "--eps", "0.05")
    assert base["inputs_digest"] != other["inputs_digest"]
    assert base["results"][0]["value"] != other["results"][0]["value"]


def test_bracket_ladder_follows_eps_override(capsys):
    _, evaluated = run_json(capsys, "eval", "--spec", "cubic.json", "--eps", "0.05")
    _, report = run_json(capsys, "bracket", "--spec", "cubic.json", "--eps", "0.05")
    first = report["results"][0]
    assert first["eps"] == pytest.approx(0.05)
    phi = evaluated["results"][0]["value"]
    assert first["value"]["re"] == pytest.approx(phi["re"])
    assert report["results"][1]["eps"] == pytest.approx(0.025)


def test_isoperimetric(capsys):
    code, report = run_json(capsys, "isoperimetric", "--spec", "isoperimetric.json")
    assert code == 0
    (result,) = report["results"]
    assert result["lam"]["re"] == pytest.approx(4.0, abs=1e-6)


def test_solve_param(capsys):
    code, report = run_json(capsys, "solve-param", "--spec", "example2.json")
    assert code == 0
    assert report["results"][0]["xi"]["re"] == pytest.approx(1.0, abs=1e-10)


def test_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli.main(spec_args(["eval", "--spec", "cubic.json", "--out", str(out)]))
    assert code == 0
    assert capsys.readouterr().out == ""
    report = json.loads(out.read_text())
    assert report["results"][0]["quantity"] == "phi"


def test_verify_paper_is_deterministic(capsys):
    code, first = run_json(capsys, "verify-paper")
    assert code == 0, [r for r in first["results"] if not r["passed"]]
    _, second = run_json(capsys, "verify-paper")
    first.pop("timing")
    second.pop("timing")
    assert first == second
    assert set(first["verdicts"].values()) == {"pass"}


@pytest.mark.parametrize("case", GOLDEN, ids=lambda c: " ".join(c["args"]))
def test_exit_codes(case, capsys):
    assert cli.main(spec_args(case["args"])) == case["code"]
    capsys.readouterr()


def test_error_object(capsys):
    code, report = run_json(capsys, "residual", "--spec", "bad_reference.json")
    assert code == 2
    error = report["error"]
    assert error["type"] == "ProblemSpecError"
    assert error["field"] == "lagrangian.bindings.B.curve"


def test_error_object_for_value_error(capsys):
    code, report = run_json(capsys, "deriv", "--curve", "wiggle")
    assert code == 2
    assert report["error"]["type"] == "ValueError"


def test_unknown_command():
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_exit_code_for():
    assert cli.exit_code_for(sv.NonConvergenceError("no root", [])) == 1
    assert cli.exit_code_for(sv.ConditionViolationError("degenerate")) == 1
    assert cli.exit_code_for(sv.InsufficientDomainError((0, 2), (0, 1))) == 2
    assert cli.exit_code_for(ValueError("bad")) == 2
