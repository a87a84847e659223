import json

import pytest
from click.testing import CliRunner

from supertime.cli import SEED_ENVVAR, verify
from supertime.report import VerificationReport, check

IDENTITY = "[[1, 0, 0], [0, 1, 0], [0, 0, 1]]"


@pytest.fixture
def runner():
    return CliRunner()


def test_run_section(runner):
    result = runner.invoke(verify, ["run", "--section", "osp", "--samples", "1"])
    assert result.exit_code == 0, result.output
    header = json.loads(result.output.splitlines()[0])
    assert header["seed"] == 7
    assert header["fail"] == 0
    assert "passed" in result.output


def test_run_text_format(runner):
    args = ["run", "--section", "sec4", "--format", "text", "--branch", "plus"]
    result = runner.invoke(verify, args)
    assert result.exit_code == 0, result.output
    assert "dtheta.infeasible.with-sdet" in result.output


def test_run_seed_from_environment(runner):
    result = runner.invoke(
        verify,
        ["run", "--section", "osp", "--samples", "1"],
        env={SEED_ENVVAR: "11"},
    )
    assert result.exit_code == 0, result.output
    assert json.loads(result.output.splitlines()[0])["seed"] == 11


def test_run_output_file(runner, tmp_path):
    path = tmp_path / "report.jsonl"
    args = ["run", "--section", "osp", "--samples", "1", "-o", str(path)]
    result = runner.invoke(verify, args)
    assert result.exit_code == 0, result.output
    lines = path.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["fail"] == 0
    assert header["pass"] + header["report-only"] == len(lines) - 1


def test_run_failure_exit_code(runner, mocker):
    failing = VerificationReport.build(
        [check("osp.broken", "superspace.apply", False, "1", "0")], 7, {}
    )
    mocker.patch("supertime.cli.verify_run", mocker.AsyncMock(return_value=failing))
    result = runner.invoke(verify, ["run", "--section", "osp"])
    assert result.exit_code == 1
    assert "1 failed" in result.output


def test_run_unknown_section(runner):
    result = runner.invoke(verify, ["run", "--section", "sec9"])
    assert result.exit_code == 2


def test_eval(runner):
    result = runner.invoke(verify, ["eval", "--vierbein", IDENTITY, "--what", "sdet"])
    assert result.exit_code == 0, result.output
    assert result.output.strip() == "1"


def test_eval_from_file(runner, tmp_path):
    path = tmp_path / "frame.txt"
    path.write_text(IDENTITY)
    args = ["eval", "--vierbein", f"@{path}", "--what", "pi"]
    result = runner.invoke(verify, args)
    assert result.exit_code == 0, result.output
    assert "pi5 = 0" in result.output


def test_eval_parity_error(runner):
    frame = "[[theta, 0, 0], [0, 1, 0], [0, 0, 1]]"
    result = runner.invoke(verify, ["eval", "--vierbein", frame, "--what", "sdet"])
    assert result.exit_code == 2
    assert "(a)" in result.output


def test_eval_syntax_error(runner):
    result = runner.invoke(verify, ["eval", "--vierbein", "[[1, 0", "--what", "sdet"])
    assert result.exit_code == 2
    assert "line 1" in result.output


def test_eval_missing_file(runner, tmp_path):
    missing = tmp_path / "missing.txt"
    args = ["eval", "--vierbein", f"@{missing}", "--what", "sdet"]
    result = runner.invoke(verify, args)
    assert result.exit_code == 1
