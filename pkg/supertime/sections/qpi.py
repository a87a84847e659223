import logging
import typing as T

from supertime.actions import (
    VierbeinParams,
    build_action,
    cpi_reference,
    epsilon_limits,
    interpolating_sdet,
    qpi_weight,
    regularized_sdet,
    split_regularized,
    superdeterminant,
)
from supertime.constraints import (
    E_BODY_NONZERO,
    FAMILY_BRANCHES,
    FRAME_UNKNOWNS,
    PAIRING_OPPOSITE,
    PAIRING_SAME,
    PAIRINGS,
    free_parameter_count,
    interpolating_constraints,
    pqr_definitions,
    printed_reduced_qpi_constraints,
    qpi_constraints,
    qpi_family,
    reduced_qpi_constraints,
    resolve_pqr,
    sign_name,
    verify_family,
)
from supertime.errors import ZeroBody
from supertime.grassmann import THETA, THETABAR, Session, SuperNumber, ginv
from supertime.interfaces import BaseSection, RunContext
from supertime.report import ReportEntry, check, report_only

_logger = logging.getLogger(__name__)

PAIRING_NAMES = {PAIRING_SAME: "same", PAIRING_OPPOSITE: "opposite"}
EPS_TO_ZERO = {"eps": 0}


def _residual_text(values) -> str:
    return ", ".join(str(value) for value in values)


def expected_regularized_inverse(session: Session) -> SuperNumber:
    """``1/eps + i*thetabar*theta/(eps^2*hbar)``."""
    scalars = session.scalars
    eps, hbar = scalars.symbol("eps"), scalars.symbol("hbar")
    return session.scalar(eps.inv()) + session.word(THETABAR, THETA) * (
        scalars.i / (eps * eps * hbar)
    )


def sdet_product(session: Session, sign: int) -> T.Tuple[SuperNumber, SuperNumber]:
    """
    ``(sign + a_S*thetabar*theta - p*thetabar*theta)(q + r*thetabar*theta)``
    multiplied out and in its expanded closed form.
    """
    sym = session.scalars.symbol
    a_s, p, q, r = sym("a_S"), sym("p"), sym("q"), sym("r")
    top = session.word(THETABAR, THETA)
    product = (session.scalar(sign) + top * (a_s - p)) * (session.scalar(q) + top * r)
    expanded = session.scalar(q * sign) + top * (a_s * q - p * q + r * sign)
    return product, expanded


def signed_identity(session: Session, sign: int) -> VierbeinParams:
    return VierbeinParams.identity(session)._replace(a=session.scalar(sign))


class QpiSection(BaseSection):
    """Regularized superdeterminants and the quantum weight."""

    name = "qpi"

    def checks(self, ctx: RunContext) -> T.List[ReportEntry]:
        session = ctx.session
        entries = self._inverse_checks(session)
        entries.append(
            report_only(
                "qpi.pqr.definitions",
                "constraints.qpi_constraints",
                pqr_definitions(VierbeinParams.generic(session)),
            )
        )
        for sign in ctx.signs:
            _logger.debug("qpi checks for the %s branch", sign_name(sign))
            entries.extend(self._density_checks(session, sign))
            entries.extend(self._family_checks(session, sign))
            entries.extend(self._system_checks(ctx, sign))
        return entries

    def _inverse_checks(self, session: Session) -> T.List[ReportEntry]:
        scalars = session.scalars
        singular = session.word(THETABAR, THETA) * -(scalars.i / scalars.symbol("hbar"))
        try:
            ginv(singular)
            raised = "no error"
        except ZeroBody as error:
            raised = f"ZeroBody: {error}"
        regularized = regularized_sdet(session)
        inverse = ginv(regularized)
        expected = expected_regularized_inverse(session)
        return [
            check(
                "qpi.sdet.noninvertible",
                "grassmann.ginv",
                raised.startswith("ZeroBody"),
                raised,
                "ZeroBody",
            ),
            check(
                "qpi.sdet.inverse",
                "grassmann.ginv",
                inverse == expected and regularized * inverse == session.one,
                inverse,
                expected,
            ),
        ]

    def _density_checks(self, session: Session, sign: int) -> T.List[ReportEntry]:
        tag = sign_name(sign)
        frame = signed_identity(session, sign)
        override = regularized_sdet(session)
        density = build_action(frame, sdet_override=override)
        first, second = split_regularized(frame)
        limits = epsilon_limits(frame, sdet_override=override)
        weight = qpi_weight(session, sign)
        product, expanded = sdet_product(session, sign)
        return [
            check(
                f"qpi.sdet.product.{tag}",
                "grassmann.gmul",
                product == expanded,
                product,
                expanded,
            ),
            check(
                f"qpi.action.split.{tag}",
                "actions.build_action",
                density == first + second,
                density - first - second,
                session.zero,
            ),
            check(
                f"qpi.weight.eps-zero.{tag}",
                "actions.berezin_reduce",
                not limits.at_zero.diff(weight),
                limits.at_zero,
                weight,
            ),
            report_only(
                f"qpi.weight.eps-one.{tag}",
                "actions.berezin_reduce",
                limits.at_one.diff(cpi_reference(session)),
                notes="difference from the classical weight",
            ),
        ]

    def _family_checks(self, session: Session, sign: int) -> T.List[ReportEntry]:
        tag = sign_name(sign)
        scalars = session.scalars
        entries = []
        interpolating = interpolating_sdet(session)
        at_zero = interpolating.substitute(EPS_TO_ZERO)
        at_one = interpolating.substitute({"eps": 1})
        expected_zero = session.word(THETABAR, THETA) * -(
            scalars.i / scalars.symbol("hbar")
        )
        entries.append(
            check(
                f"qpi.family.sdet-limits.{tag}",
                "actions.interpolating_sdet",
                at_zero == expected_zero and at_one == session.one,
                f"{at_zero}; {at_one}",
                f"{expected_zero}; 1",
            )
        )
        weight = qpi_weight(session, sign)
        for branch in FAMILY_BRANCHES:
            label = f"{tag}.{branch}"
            family = qpi_family(scalars, sign, branch)
            vierbein = family.vierbein(session)
            factor = superdeterminant(vierbein)
            entries.append(
                check(
                    f"qpi.family.sdet.{label}",
                    "actions.superdeterminant",
                    factor == interpolating,
                    factor,
                    interpolating,
                )
            )
            exact = verify_family(family, interpolating_constraints(session, sign))
            entries.append(
                check(
                    f"qpi.family.interpolating.{label}",
                    "constraints.verify_family",
                    exact.passed,
                    _residual_text(exact.residuals),
                    "0, 0",
                )
            )
            derived = reduced_qpi_constraints(session, sign)
            symbolic = verify_family(family, derived)
            limit = verify_family(family, derived, EPS_TO_ZERO)
            entries.append(
                check(
                    f"qpi.family.reduced.{label}",
                    "constraints.verify_family",
                    limit.passed,
                    _residual_text(limit.residuals),
                    "0, 0",
                    notes=f"residuals before eps -> 0: "
                    f"{_residual_text(symbolic.residuals)}",
                )
            )
            swapped = verify_family(
                family, printed_reduced_qpi_constraints(session, sign), EPS_TO_ZERO
            )
            entries.append(
                report_only(
                    f"qpi.family.swapped.{label}",
                    "constraints.verify_family",
                    _residual_text(swapped.residuals),
                    notes="body and soul right-hand sides exchanged",
                )
            )
            limits = epsilon_limits(vierbein)
            entries.append(
                check(
                    f"qpi.family.eps-zero.{label}",
                    "actions.epsilon_limits",
                    not limits.at_zero.diff(weight),
                    limits.at_zero,
                    weight,
                )
            )
            entries.append(
                report_only(
                    f"qpi.family.eps-one.{label}",
                    "actions.epsilon_limits",
                    limits.at_one.diff(cpi_reference(session)),
                    notes="difference from the classical weight",
                )
            )
        return entries

    def _system_checks(self, ctx: RunContext, sign: int) -> T.List[ReportEntry]:
        session = ctx.session
        tag = sign_name(sign)
        family = qpi_family(session.scalars, sign, E_BODY_NONZERO)
        satisfiable = [
            PAIRING_NAMES[pairing]
            for pairing in PAIRINGS
            if verify_family(
                family, reduced_qpi_constraints(session, sign, pairing), EPS_TO_ZERO
            ).passed
        ]
        vierbein = family.vierbein(session)
        resolved = resolve_pqr(qpi_constraints(vierbein, sign), vierbein)
        count = free_parameter_count(
            reduced_qpi_constraints(session, sign),
            len(FRAME_UNKNOWNS),
            family=family,
            samples=ctx.samples,
            seed=ctx.seed,
        )
        return [
            report_only(
                f"qpi.pairing.{tag}",
                "constraints.qpi_constraints",
                ", ".join(satisfiable) or "none",
                notes="pairings satisfied by the family as eps -> 0",
            ),
            report_only(
                f"qpi.pqr.family.{tag}",
                "constraints.resolve_pqr",
                _residual_text(resolved.residuals()),
                notes="q, soul, det-body, det-soul residuals on the family",
            ),
            check(
                f"qpi.parameters.{tag}",
                "constraints.free_parameter_count",
                count == len(FRAME_UNKNOWNS) - 2,
                count,
                len(FRAME_UNKNOWNS) - 2,
            ),
        ]
