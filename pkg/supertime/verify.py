import asyncio
import logging
import os
import typing as T

import aiofiles

from supertime import sections  # noqa: F401
from supertime.actions import (
    VierbeinParams,
    berezin_reduce,
    build_action,
    kinetic_dtdt,
    printed_dtdt,
)
from supertime.constraints import (
    SIGNS,
    cpi_constraints,
    frame_metric,
    pi_parameters,
    sign_name,
)
from supertime.curvature import ConventionConfig
from supertime.grassmann import Session
from supertime.interfaces import (
    SECTIONS,
    BaseSection,
    RunContext,
    get_section_by_name,
)
from supertime.lib.sampling import DEFAULT_SAMPLES, DEFAULT_SEED
from supertime.parser import parse_vierbein
from supertime.report import FORMAT_JSON, ReportEntry, VerificationReport
from supertime.supermatrix import GRADING_ON_LEFT, sdet
from supertime.superspace import superfield

PathLike = T.Union[str, os.PathLike]

SECTION_ALL = "all"
EVAL_TARGETS = ("sdet", "metric", "pi", "action", "reduce", "kinetic", "constraints")

__all__ = [
    "EVAL_TARGETS",
    "SECTION_ALL",
    "verify_run",
    "verify_eval",
    "verify_save",
    "load_vierbein_source",
]

_logger = logging.getLogger(__name__)


def selected_conventions() -> T.Dict[str, str]:
    return {
        "grading_placement": GRADING_ON_LEFT,
        "curvature": ConventionConfig().label,
        "generator_order": "theta,thetabar",
    }


async def _run_section(section: BaseSection, ctx: RunContext) -> T.List[ReportEntry]:
    _logger.info("running section %s", section.name)
    entries = await asyncio.to_thread(section.checks, ctx)
    _logger.info("section %s finished with %d entries", section.name, len(entries))
    return entries


async def verify_run(
    section: str = SECTION_ALL,
    branch: str = "both",
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_SAMPLES,
    session: T.Optional[Session] = None,
) -> VerificationReport:
    """Replay the derivation and collect a report.

    :param section: A registered section name or ``"all"``.
    :param branch: ``"plus"``, ``"minus"`` or ``"both"`` signs of ``a``.
    :param seed: Seed of every random choice.
    :param samples: Random points per sampled check.
    :return: Entries of every selected section, sorted by check id.
    :raises SectionNotFoundError: For an unknown section name.
    """
    ctx = RunContext.create(branch, seed, samples, session)
    if section == SECTION_ALL:
        selected = [cls() for cls in SECTIONS.values()]
    else:
        selected = [get_section_by_name(section)]
    results = await asyncio.gather(*(_run_section(item, ctx) for item in selected))
    entries = [entry for chunk in results for entry in chunk]
    return VerificationReport.build(entries, seed, selected_conventions())


def _evaluate(frame: VierbeinParams, what: str) -> str:
    if what == "sdet":
        return sdet(frame.matrix()).to_text()
    if what == "metric":
        return frame_metric(frame).to_text()
    if what == "pi":
        pis = pi_parameters(frame)
        return "\n".join(f"{name} = {value}" for name, value in pis.bindings().items())
    if what == "action":
        return build_action(frame).to_text()
    if what == "reduce":
        return berezin_reduce(build_action(frame)).total().to_text()
    if what == "kinetic":
        x_field = superfield(frame.session)
        residual = kinetic_dtdt(frame, x_field) - printed_dtdt(frame, x_field)
        return residual.to_text()
    if what == "constraints":
        lines = []
        for sign in SIGNS:
            system = cpi_constraints(frame, sign)
            residuals = ", ".join(
                f"{equation.label}={equation.residual}" for equation in system.equations
            )
            lines.append(f"{sign_name(sign)}: {residuals}")
        return "\n".join(lines)
    raise ValueError(f"unknown evaluation {what!r}, expected one of {EVAL_TARGETS}")


async def verify_eval(
    vierbein: str, what: str, session: T.Optional[Session] = None
) -> str:
    """Evaluate one quantity of a user supplied vierbein.

    :param vierbein: ``[[a, alpha, beta], [gamma, b, c], [delta, d, e]]`` text.
    :param what: One of :data:`EVAL_TARGETS`.
    :return: Printed result.
    :raises ExprSyntaxError: If the vierbein does not parse.
    :raises ParityMismatch: Naming the slot with the wrong parity.
    """
    frame = parse_vierbein(vierbein, session)
    return await asyncio.to_thread(_evaluate, frame, what)


async def load_vierbein_source(source: str) -> str:
    """Inline text, or the contents of the file named after a leading ``@``."""
    if not source.startswith("@"):
        return source
    async with aiofiles.open(source[1:], "r", encoding="utf-8") as fp:
        return await fp.read()


async def verify_save(
    report: VerificationReport, path: PathLike, output_format: str = FORMAT_JSON
) -> None:
    """Write a rendered report to ``path``."""
    async with aiofiles.open(path, "w", encoding="utf-8") as fp:
        await fp.write(report.render(output_format))
