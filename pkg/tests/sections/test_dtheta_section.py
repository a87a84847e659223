from supertime.interfaces import RunContext, get_section_by_name
from supertime.report import STATUS_PASS
from supertime.sections import DthetaSection


def test_dtheta_checks_pass():
    entries = DthetaSection().checks(RunContext.create(samples=1))
    statuses = {entry.check_id: entry.status for entry in entries}
    assert statuses == {
        "dtheta.infeasible.with-sdet": STATUS_PASS,
        "dtheta.infeasible.without-sdet": STATUS_PASS,
        "dtheta.control.satisfiable": STATUS_PASS,
        "dtheta.sdet.closed-form": STATUS_PASS,
        "dtheta.sdet.bracket": STATUS_PASS,
    }


def test_sec4_alias():
    assert isinstance(get_section_by_name("sec4"), DthetaSection)
