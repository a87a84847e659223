import importlib
import json

import pytest

from supertime.errors import ExprSyntaxError, ParityMismatch, SectionNotFoundError
from supertime.report import FORMAT_JSON, FORMAT_TEXT
from supertime.verify import (
    SECTION_ALL,
    load_vierbein_source,
    selected_conventions,
    verify_eval,
    verify_run,
    verify_save,
)

IDENTITY = "[[1, 0, 0], [0, 1, 0], [0, 0, 1]]"


async def test_verify_run_single_section():
    report = await verify_run("osp", seed=5, samples=1)
    assert report.exit_code == 0
    assert report.seed == 5
    assert report.convention == selected_conventions()
    assert all(entry.check_id.startswith("osp.") for entry in report.entries)


async def test_verify_run_alias():
    report = await verify_run("sec4", samples=1)
    assert {entry.check_id for entry in report.entries} >= {
        "dtheta.infeasible.with-sdet",
        "dtheta.infeasible.without-sdet",
    }


async def test_verify_run_unknown_section():
    with pytest.raises(SectionNotFoundError):
        await verify_run("sec9")


async def test_verify_run_unknown_branch():
    with pytest.raises(ValueError):
        await verify_run(SECTION_ALL, branch="sideways")


@pytest.mark.parametrize("section", ["osp", "dtheta", "cpi", "qpi"])
async def test_references_name_operations(section):
    report = await verify_run(section, branch="plus", samples=1)
    for entry in report.entries:
        module, _, attr = entry.reference.partition(".")
        assert hasattr(importlib.import_module(f"supertime.{module}"), attr), (
            entry.check_id
        )


async def test_verify_eval():
    assert await verify_eval(IDENTITY, "sdet") == "1"
    assert await verify_eval(IDENTITY, "kinetic") == "0"
    constraints = await verify_eval(IDENTITY, "constraints")
    assert constraints.splitlines() == [
        "plus: body=0, soul=0",
        "minus: body=2, soul=0",
    ]
    pis = await verify_eval(IDENTITY, "pi")
    assert pis.splitlines()[0] == "pi1 = 0"


async def test_verify_eval_generic_metric():
    generic = "[[E_a, E_alpha, E_beta], [E_gamma, E_b, E_c], [E_delta, E_d, E_e]]"
    metric = await verify_eval(generic, "metric")
    assert metric.startswith("[[")


async def test_verify_eval_errors():
    with pytest.raises(ValueError):
        await verify_eval(IDENTITY, "torsion")
    with pytest.raises(ParityMismatch):
        await verify_eval("[[theta, 0, 0], [0, 1, 0], [0, 0, 1]]", "sdet")
    with pytest.raises(ExprSyntaxError):
        await verify_eval("[[1, 0, 0], [0, 1, 0]", "sdet")


async def test_load_vierbein_source(tmp_path):
    path = tmp_path / "frame.txt"
    path.write_text(IDENTITY)
    assert await load_vierbein_source(f"@{path}") == IDENTITY
    assert await load_vierbein_source(IDENTITY) == IDENTITY
    with pytest.raises(OSError):
        await load_vierbein_source(f"@{tmp_path / 'missing.txt'}")


@pytest.mark.parametrize("output_format", [FORMAT_JSON, FORMAT_TEXT])
async def test_verify_save(tmp_path, output_format):
    report = await verify_run("osp", samples=1)
    path = tmp_path / "report.out"
    await verify_save(report, path, output_format)
    content = path.read_text()
    assert content == report.render(output_format)
    if output_format == FORMAT_JSON:
        assert json.loads(content.splitlines()[0])["seed"] == report.seed
