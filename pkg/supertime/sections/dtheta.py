import typing as T

from supertime.actions import VierbeinParams
from supertime.constraints import (
    bracket_on_conditions,
    dtheta_control_frame,
    dtheta_control_residuals,
    dtheta_infeasibility,
    printed_sdet,
)
from supertime.interfaces import BaseSection, RunContext
from supertime.report import ReportEntry, check
from supertime.supermatrix import sdet


class DthetaSection(BaseSection):
    """The ``D_theta X D_thetabar X`` kinetic term admits no vierbein."""

    name = "dtheta"

    def checks(self, ctx: RunContext) -> T.List[ReportEntry]:
        session = ctx.session
        entries = []
        for with_sdet, variant in ((True, "with-sdet"), (False, "without-sdet")):
            certificate = dtheta_infeasibility(session, with_sdet=with_sdet)
            entries.append(
                check(
                    f"dtheta.infeasible.{variant}",
                    "constraints.dtheta_infeasibility",
                    certificate.revalidate(),
                    certificate.narrative,
                    "every witness reproduces its contradiction",
                )
            )
        residuals = dtheta_control_residuals(dtheta_control_frame(session))
        failing = sorted(label for label, value in residuals.items() if value)
        entries.append(
            check(
                "dtheta.control.satisfiable",
                "constraints.dtheta_infeasibility",
                not failing,
                ", ".join(failing) or "all remaining conditions hold",
                "all remaining conditions hold",
                notes="identity frame, gamma-delta and cd-be dropped",
            )
        )
        generic = VierbeinParams.generic(session)
        closed_form = printed_sdet(generic)
        computed = sdet(generic.matrix())
        entries.append(
            check(
                "dtheta.sdet.closed-form",
                "supermatrix.sdet",
                closed_form == computed,
                closed_form - computed,
                session.zero,
            )
        )
        bracket = bracket_on_conditions(generic)
        entries.append(
            check(
                "dtheta.sdet.bracket",
                "constraints.dtheta_infeasibility",
                not bracket,
                bracket,
                session.zero,
            )
        )
        return entries
