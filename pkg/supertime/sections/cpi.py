import logging
import typing as T

from supertime.actions import (
    VierbeinParams,
    berezin_reduce,
    build_action,
    cpi_reference,
    dtdt_cross_term,
    kinetic_dtdt,
    kinetic_dtheta_dthetabar,
    printed_dtdt,
    printed_dtheta_dthetabar,
    superdeterminant,
)
from supertime.constraints import (
    E_BODY_NONZERO,
    FAMILY_BRANCHES,
    FRAME_UNKNOWNS,
    cpi_constraints,
    cpi_family,
    free_parameter_count,
    matching_placements,
    sign_name,
    verify_family,
)
from supertime.grassmann import Session, SuperNumber
from supertime.interfaces import BaseSection, RunContext
from supertime.lib.sampling import make_rng
from supertime.report import ReportEntry, check, report_only
from supertime.supermatrix import GRADING_ON_LEFT
from supertime.superspace import compose_potential, partial, superfield

_logger = logging.getLogger(__name__)


def classical_frame(session: Session, sign: int) -> VierbeinParams:
    """Generic frame with ``a = sign`` and ``alpha = beta = 0``."""
    return VierbeinParams.generic(session, a=sign, alpha=0, beta=0)


def potential_reduction(session: Session) -> SuperNumber:
    """``i*lambda*dV + c*cbar*d2V``, the integral of ``V(X)``."""
    scalars = session.scalars
    source = scalars.i * scalars.symbol("lambda") * scalars.symbol("dV")
    return session.scalar(source) + session.word("c", "cbar") * scalars.symbol("d2V")


class CpiSection(BaseSection):
    """Classical frames: kinetic reduction, odd-block determinant and weight."""

    name = "cpi"

    def checks(self, ctx: RunContext) -> T.List[ReportEntry]:
        session = ctx.session
        entries = self._kinetic_checks(session)
        for sign in ctx.signs:
            entries.extend(self._branch_checks(ctx, sign))
        return entries

    def _kinetic_checks(self, session: Session) -> T.List[ReportEntry]:
        x_field = superfield(session)
        generic = VierbeinParams.generic(session)
        residual = kinetic_dtdt(generic, x_field) - printed_dtdt(generic, x_field)
        cross = dtdt_cross_term(generic, x_field)
        dtheta_residual = kinetic_dtheta_dthetabar(
            generic, x_field
        ) - printed_dtheta_dthetabar(generic, x_field)
        reference = cpi_reference(session)
        reduced_potential = berezin_reduce(compose_potential(x_field)).total()
        expected_potential = potential_reduction(session)
        return [
            report_only(
                "cpi.kinetic.three-term",
                "actions.covariant_dt",
                residual,
                notes="full D_t X D_t X minus the three-term form",
            ),
            check(
                "cpi.kinetic.cross-term",
                "actions.covariant_dt",
                residual == cross,
                residual,
                cross,
            ),
            check(
                "cpi.kinetic.dtheta-expansion",
                "actions.covariant_dtheta",
                not dtheta_residual,
                dtheta_residual,
                session.zero,
            ),
            check(
                "cpi.reference.potential",
                "superspace.compose_potential",
                reduced_potential == expected_potential,
                reduced_potential,
                expected_potential,
            ),
            report_only(
                "cpi.reference.lagrangian",
                "actions.berezin_reduce",
                reference,
            ),
        ]

    def _branch_checks(self, ctx: RunContext, sign: int) -> T.List[ReportEntry]:
        session = ctx.session
        scalars = session.scalars
        tag = sign_name(sign)
        x_field = superfield(session)
        frame = classical_frame(session, sign)
        velocity = partial(0, x_field)
        kinetic = kinetic_dtdt(frame, x_field)
        entries = [
            check(
                f"cpi.kinetic.reduces.{tag}",
                "actions.covariant_dt",
                kinetic == velocity * velocity,
                kinetic,
                velocity * velocity,
            )
        ]
        reference = cpi_reference(session)
        for branch in FAMILY_BRANCHES:
            family = cpi_family(scalars, sign, branch)
            system = cpi_constraints(frame, sign)
            residuals = verify_family(family, system)
            entries.append(
                check(
                    f"cpi.constraints.{tag}.{branch}",
                    "constraints.verify_family",
                    residuals.passed,
                    ", ".join(str(value) for value in residuals.residuals),
                    "0, 0",
                )
            )
            vierbein = family.vierbein(session)
            density_factor = superdeterminant(vierbein)
            entries.append(
                check(
                    f"cpi.sdet.{tag}.{branch}",
                    "supermatrix.sdet",
                    density_factor == session.one,
                    density_factor,
                    session.one,
                )
            )
            weight = berezin_reduce(build_action(vierbein))
            difference = weight.diff(reference)
            entries.append(
                check(
                    f"cpi.weight.{tag}.{branch}",
                    "actions.berezin_reduce",
                    not difference,
                    weight,
                    reference,
                )
            )
        entries.append(self._placement(ctx, sign))
        count = self._parameter_count(ctx, sign)
        entries.append(
            check(
                f"cpi.parameters.{tag}",
                "constraints.free_parameter_count",
                count == len(FRAME_UNKNOWNS) - 2,
                count,
                len(FRAME_UNKNOWNS) - 2,
            )
        )
        return entries

    def _placement(self, ctx: RunContext, sign: int) -> ReportEntry:
        """Grading placement reproducing the five-parameter metric."""
        session = ctx.session
        family = cpi_family(session.scalars, sign, E_BODY_NONZERO)
        point = family.sample(make_rng(ctx.seed))
        frame = family.vierbein(session).substitute(point)
        found = matching_placements(frame, sign)
        _logger.debug("%s: placements %s", sign_name(sign), found)
        return check(
            f"cpi.metric.placement.{sign_name(sign)}",
            "constraints.pi_metric",
            found == [GRADING_ON_LEFT],
            ", ".join(found) or "none",
            GRADING_ON_LEFT,
            notes="gamma and delta left symbolic",
        )

    def _parameter_count(self, ctx: RunContext, sign: int) -> int:
        session = ctx.session
        system = cpi_constraints(classical_frame(session, sign), sign)
        family = cpi_family(session.scalars, sign, E_BODY_NONZERO)
        return free_parameter_count(
            system,
            len(FRAME_UNKNOWNS),
            family=family,
            samples=ctx.samples,
            seed=ctx.seed,
        )
