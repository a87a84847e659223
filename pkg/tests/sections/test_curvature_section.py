import pytest

from supertime.curvature import SuperMetric, all_conventions
from supertime.errors import SingularMetric
from supertime.grassmann import default_session
from supertime.interfaces import RunContext
from supertime.report import STATUS_PASS, STATUS_REPORT
from supertime.sections import CurvatureSection
from supertime.sections.curvature import connection_pairs, unregularized_metric


@pytest.fixture(scope="module")
def entries():
    ctx = RunContext.create("plus", samples=2)
    return {entry.check_id: entry for entry in CurvatureSection().checks(ctx)}


def test_connection_pairs():
    pairs = connection_pairs()
    assert len(pairs) == 4
    assert {(conv.metric_sign, conv.derivative) for conv in pairs} == {
        (conv.metric_sign, conv.derivative) for conv in all_conventions()
    }


def test_unregularized_metric_is_singular():
    with pytest.raises(SingularMetric):
        SuperMetric(unregularized_metric(default_session()))


def test_checks(entries):
    assert entries["curvature.flat"].status == STATUS_PASS
    assert entries["curvature.singular-metric"].status == STATUS_PASS
    assert entries["curvature.metric.inverse.plus"].status == STATUS_PASS
    assert entries["curvature.christoffel.symmetry.plus"].status == STATUS_PASS
    assert entries["curvature.christoffel.lowering.plus"].status == STATUS_PASS
    assert "curvature.metric.inverse.minus" not in entries


def test_scan_and_regularized_are_informational(entries):
    scan = [key for key in entries if key.startswith("curvature.scan.")]
    assert len(scan) == 16
    assert all(entries[key].status == STATUS_REPORT for key in scan)
    regularized = entries["curvature.regularized.plus"]
    assert regularized.status == STATUS_REPORT
    assert "pole at eps = 0" in regularized.notes
