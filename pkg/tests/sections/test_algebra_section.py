from supertime.grassmann import ginv
from supertime.interfaces import RunContext
from supertime.report import STATUS_FAIL, STATUS_PASS, VerificationReport
from supertime.sections.algebra import (
    ORDERINGS,
    AlgebraSection,
    generic_element,
    inverse_session,
    permuted_session,
    printed_inverse,
)


def _report(seed=7):
    ctx = RunContext.create(seed=seed, samples=2)
    return VerificationReport.build(AlgebraSection().checks(ctx), seed, {})


def test_printed_inverse_is_exact():
    session = inverse_session()
    for ordering in ORDERINGS:
        element = generic_element(session, ordering)
        assert printed_inverse(session, ordering) == ginv(element)
        assert element * printed_inverse(session, ordering) == 1


def test_permuted_session():
    session = permuted_session()
    assert [g.name for g in session.generators[:2]] == ["thetabar", "theta"]


def test_algebra_checks_pass():
    report = _report()
    assert not report.failures
    statuses = {entry.check_id: entry.status for entry in report.entries}
    for ordering in ORDERINGS:
        assert statuses[f"algebra.inverse.printed.{ordering}"] == STATUS_PASS
        assert statuses[f"algebra.inverse.two-sided.{ordering}"] == STATUS_PASS
    assert statuses["algebra.inverse.zero-body"] == STATUS_PASS
    assert statuses["algebra.product.matrix-oracle"] == STATUS_PASS
    assert statuses["algebra.sdet.multiplicative"] == STATUS_PASS
    assert statuses["algebra.sinv.two-sided"] == STATUS_PASS
    assert statuses["algebra.order.permuted"] == STATUS_PASS


def test_algebra_checks_with_other_seed():
    assert all(entry.status != STATUS_FAIL for entry in _report(seed=19).entries)
