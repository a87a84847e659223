import pytest

from supertime.actions import regularized_sdet
from supertime.constraints import FAMILY_BRANCHES, MINUS, PLUS
from supertime.grassmann import default_session, ginv
from supertime.interfaces import RunContext
from supertime.report import STATUS_PASS, STATUS_REPORT, VerificationReport
from supertime.sections import QpiSection
from supertime.sections.qpi import (
    expected_regularized_inverse,
    sdet_product,
    signed_identity,
)


@pytest.fixture(scope="module")
def entries():
    ctx = RunContext.create(samples=2)
    report = VerificationReport.build(QpiSection().checks(ctx), ctx.seed, {})
    assert not report.failures
    return {entry.check_id: entry for entry in report.entries}


def test_regularized_inverse():
    session = default_session()
    assert ginv(regularized_sdet(session)) == expected_regularized_inverse(session)


@pytest.mark.parametrize("sign", [PLUS, MINUS])
def test_sdet_product(sign):
    product, expanded = sdet_product(default_session(), sign)
    assert product == expanded


def test_signed_identity():
    frame = signed_identity(default_session(), MINUS)
    assert frame.a == -1
    assert frame.b == 1


def test_global_checks(entries):
    assert entries["qpi.sdet.noninvertible"].status == STATUS_PASS
    assert entries["qpi.sdet.inverse"].status == STATUS_PASS
    assert entries["qpi.pqr.definitions"].status == STATUS_REPORT


@pytest.mark.parametrize("tag", ["plus", "minus"])
def test_sign_checks(entries, tag):
    assert entries[f"qpi.sdet.product.{tag}"].status == STATUS_PASS
    assert entries[f"qpi.action.split.{tag}"].status == STATUS_PASS
    assert entries[f"qpi.weight.eps-zero.{tag}"].status == STATUS_PASS
    assert entries[f"qpi.weight.eps-one.{tag}"].status == STATUS_REPORT
    assert entries[f"qpi.family.sdet-limits.{tag}"].status == STATUS_PASS
    assert entries[f"qpi.parameters.{tag}"].status == STATUS_PASS
    assert entries[f"qpi.pairing.{tag}"].actual == "same"


@pytest.mark.parametrize("tag", ["plus", "minus"])
@pytest.mark.parametrize("branch", FAMILY_BRANCHES)
def test_family_checks(entries, tag, branch):
    label = f"{tag}.{branch}"
    for name in ("sdet", "interpolating", "reduced", "eps-zero"):
        assert entries[f"qpi.family.{name}.{label}"].status == STATUS_PASS
    assert "eps" in entries[f"qpi.family.reduced.{label}"].notes
    assert entries[f"qpi.family.swapped.{label}"].status == STATUS_REPORT
    assert entries[f"qpi.family.eps-one.{label}"].status == STATUS_REPORT
