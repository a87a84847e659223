from supertime.interfaces import RunContext
from supertime.report import STATUS_PASS, STATUS_REPORT
from supertime.sections import OspSection


def test_osp_checks_pass():
    entries = OspSection().checks(RunContext.create(samples=1))
    statuses = {entry.check_id: entry.status for entry in entries}
    for k in range(1, 6):
        assert statuses[f"osp.annihilation.X{k}"] == STATUS_PASS
    closures = [key for key in statuses if key.startswith("osp.closure.")]
    assert len(closures) == 15
    assert all(statuses[key] == STATUS_PASS for key in closures)
    assert statuses["osp.structure-constants"] == STATUS_REPORT
