import itertools
import logging
import typing as T

from supertime.errors import NotFirstOrder
from supertime.interfaces import BaseSection, RunContext
from supertime.report import ReportEntry, check, report_only
from supertime.superspace import (
    apply,
    expand_in_span,
    graded_bracket,
    invariant_distance,
    osp_generators,
)

_logger = logging.getLogger(__name__)


def _combination_text(coeffs) -> str:
    terms = [f"({k})*X{i}" for i, k in enumerate(coeffs, start=1) if k]
    return " + ".join(terms) or "0"


class OspSection(BaseSection):
    """Invariance of ``t^2 - 2*thetabar*theta`` and closure of the generators."""

    name = "osp"

    def checks(self, ctx: RunContext) -> T.List[ReportEntry]:
        session = ctx.session
        distance = invariant_distance(session)
        generators = osp_generators(session)
        entries = []
        for k, op in enumerate(generators, start=1):
            image = apply(op, distance)
            entries.append(
                check(
                    f"osp.annihilation.X{k}",
                    "superspace.invariant_distance",
                    not image,
                    image,
                    session.zero,
                )
            )
        constants = []
        pairs = itertools.combinations_with_replacement(range(len(generators)), 2)
        for i, j in pairs:
            label = f"X{i + 1}-X{j + 1}"
            try:
                bracket = graded_bracket(generators[i], generators[j])
            except NotFirstOrder as error:
                entries.append(
                    check(
                        f"osp.closure.{label}",
                        "superspace.graded_bracket",
                        False,
                        error,
                    )
                )
                continue
            coeffs = expand_in_span(bracket, generators)
            _logger.debug("[X%d, X%d] = %s", i + 1, j + 1, bracket)
            entries.append(
                check(
                    f"osp.closure.{label}",
                    "superspace.expand_in_span",
                    coeffs is not None,
                    "in span" if coeffs is not None else bracket,
                    "in span",
                )
            )
            if coeffs is not None:
                constants.append(f"[X{i + 1}, X{j + 1}] = {_combination_text(coeffs)}")
        entries.append(
            report_only(
                "osp.structure-constants",
                "superspace.graded_bracket",
                "; ".join(constants),
            )
        )
        return entries
