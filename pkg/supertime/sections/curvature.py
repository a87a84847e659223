import logging
import typing as T

from supertime.constraints import PiParameters, pi_metric, sign_name
from supertime.curvature import (
    VERDICT_EXACT,
    ConventionConfig,
    SuperMetric,
    all_conventions,
    christoffel,
    convention_scan,
    koszul,
    lower_christoffel,
    regularized_curvature,
    ricci_scalar,
    symmetry_defects,
)
from supertime.errors import SingularMetric
from supertime.grassmann import THETA, THETABAR, Session
from supertime.interfaces import BaseSection, RunContext
from supertime.report import ReportEntry, check, report_only
from supertime.supermatrix import SuperMatrix, eta

_logger = logging.getLogger(__name__)


def unregularized_metric(session: Session) -> SuperMatrix:
    """Flat-like metric whose odd pairing is the nilpotent
    ``-i*thetabar*theta/hbar``.
    """
    scalars = session.scalars
    pair = session.word(THETABAR, THETA) * -(scalars.i / scalars.symbol("hbar"))
    zero = session.zero
    return SuperMatrix(
        [[session.one, zero, zero], [zero, zero, -pair], [zero, pair, zero]]
    )


def connection_pairs() -> T.List[ConventionConfig]:
    """One configuration per metric sign placement and derivative side."""
    seen = {}
    for conv in all_conventions():
        seen.setdefault((conv.metric_sign, conv.derivative), conv)
    return list(seen.values())


class CurvatureSection(BaseSection):
    """Levi-Civita geometry of the five-parameter metric."""

    name = "curvature"

    def checks(self, ctx: RunContext) -> T.List[ReportEntry]:
        session = ctx.session
        entries = [self._flat(session), self._singular(session)]
        for sign in ctx.signs:
            entries.extend(self._connection_checks(session, sign))
        for row in convention_scan(session, ctx.samples, ctx.seed, ctx.signs):
            notes = (
                f"{row.sample_matches}/{row.samples} samples match; "
                f"pi5 line: {row.pi5_line}"
            )
            if row.verdict != VERDICT_EXACT:
                notes += f"; residual: {row.residual}"
            entries.append(
                report_only(
                    f"curvature.scan.{row.label}",
                    "curvature.convention_scan",
                    row.verdict,
                    notes=notes,
                )
            )
        for sign in ctx.signs:
            result = regularized_curvature(session, sign, ctx.seed)
            pole = "yes" if result.pole_at_zero else "no"
            entries.append(
                report_only(
                    f"curvature.regularized.{sign_name(sign)}",
                    "curvature.ricci_scalar",
                    result.body,
                    notes=f"pole at eps = 0: {pole}; at eps = 1: {result.at_one}",
                )
            )
        return entries

    def _flat(self, session: Session) -> ReportEntry:
        metric = SuperMetric(eta(session))
        curved = [
            conv.label
            for conv in all_conventions()
            if ricci_scalar(metric, conv).scalar
        ]
        return check(
            "curvature.flat",
            "curvature.ricci_scalar",
            not curved,
            ", ".join(curved) or "R = 0 under every convention",
            "R = 0 under every convention",
        )

    def _singular(self, session: Session) -> ReportEntry:
        try:
            SuperMetric(unregularized_metric(session))
            raised = "no error"
        except SingularMetric as error:
            raised = f"SingularMetric: {error}"
        return check(
            "curvature.singular-metric",
            "curvature.ricci_scalar",
            raised.startswith("SingularMetric"),
            raised,
            "SingularMetric",
        )

    def _connection_checks(self, session: Session, sign: int) -> T.List[ReportEntry]:
        tag = sign_name(sign)
        pis = PiParameters.symbolic(session.scalars)
        metric = SuperMetric(pi_metric(session, pis, sign))
        asymmetric = []
        unlowered = []
        for conv in connection_pairs():
            gamma = christoffel(metric, conv)
            if symmetry_defects(gamma):
                asymmetric.append(conv.label)
            lowered = lower_christoffel(metric, gamma, conv.metric_sign)
            if lowered != koszul(metric, conv):
                unlowered.append(conv.label)
        _logger.debug("%s: connection checks done", tag)
        return [
            check(
                f"curvature.metric.inverse.{tag}",
                "curvature.SuperMetric",
                metric.is_inverse_exact(),
                "exact" if metric.is_inverse_exact() else "inexact",
                "exact",
            ),
            check(
                f"curvature.christoffel.symmetry.{tag}",
                "curvature.christoffel",
                not asymmetric,
                ", ".join(asymmetric) or "graded symmetric",
                "graded symmetric",
            ),
            check(
                f"curvature.christoffel.lowering.{tag}",
                "curvature.christoffel",
                not unlowered,
                ", ".join(unlowered) or "lowers to the Koszul combination",
                "lowers to the Koszul combination",
            ),
        ]
