import asyncio
import logging
import typing as T

import click

from supertime.errors import SupertimeError
from supertime.interfaces import BRANCHES, SECTION_ALIASES, SECTIONS
from supertime.lib.sampling import DEFAULT_SAMPLES, DEFAULT_SEED
from supertime.report import (
    FORMAT_JSON,
    FORMAT_TEXT,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_REPORT,
)
from supertime.verify import (
    EVAL_TARGETS,
    SECTION_ALL,
    load_vierbein_source,
    verify_eval,
    verify_run,
    verify_save,
)

SEED_ENVVAR = "SUPERTIME_SEED"


class VerificationError(click.ClickException):
    """A computation refused its input; exits with status 2."""

    exit_code = 2


def _section_choices() -> T.List[str]:
    return sorted(SECTIONS) + sorted(SECTION_ALIASES) + [SECTION_ALL]


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@click.group()
def verify():
    """Exact verification of supertime path-integral weights."""


@verify.command()
@click.option(
    "--section",
    type=click.Choice(_section_choices()),
    default=SECTION_ALL,
    show_default=True,
    help="Part of the derivation to replay.",
)
@click.option(
    "--branch",
    type=click.Choice(sorted(BRANCHES)),
    default="both",
    show_default=True,
    help="Sign of the time-time vierbein entry.",
)
@click.option(
    "--seed",
    type=int,
    default=DEFAULT_SEED,
    envvar=SEED_ENVVAR,
    show_default=True,
    help=f"Seed of every random choice (env {SEED_ENVVAR}).",
)
@click.option(
    "--samples",
    type=click.IntRange(min=1),
    default=DEFAULT_SAMPLES,
    show_default=True,
    help="Random points per sampled check.",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice([FORMAT_JSON, FORMAT_TEXT]),
    default=FORMAT_JSON,
    show_default=True,
)
@click.option(
    "-o", "--output", type=click.Path(dir_okay=False), help="Write the report here."
)
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def run(
    section: str,
    branch: str,
    seed: int,
    samples: int,
    output_format: str,
    output: T.Optional[str],
    verbose: bool,
):
    """Run verification checks; exits 1 if any check fails."""
    _configure_logging(verbose)
    try:
        report = asyncio.run(verify_run(section, branch, seed, samples))
    except SupertimeError as error:
        raise VerificationError(str(error)) from error
    if output:
        asyncio.run(verify_save(report, output, output_format))
    else:
        click.echo(report.render(output_format), nl=False)
    counts = report.counts()
    click.echo(
        f"{counts[STATUS_PASS]} passed, {counts[STATUS_FAIL]} failed, "
        f"{counts[STATUS_REPORT]} report-only",
        err=True,
    )
    raise SystemExit(report.exit_code)


@verify.command(name="eval")
@click.option(
    "--vierbein",
    required=True,
    help="Vierbein literal, or @path of a file holding one.",
)
@click.option(
    "--what",
    type=click.Choice(EVAL_TARGETS),
    required=True,
    help="Quantity to compute.",
)
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def evaluate(vierbein: str, what: str, verbose: bool):
    """Evaluate one quantity of a user supplied vierbein."""
    _configure_logging(verbose)

    async def compute() -> str:
        source = await load_vierbein_source(vierbein)
        return await verify_eval(source, what)

    try:
        click.echo(asyncio.run(compute()))
    except SupertimeError as error:
        raise VerificationError(str(error)) from error
    except OSError as error:
        raise click.FileError(vierbein[1:], hint=str(error)) from error


if __name__ == "__main__":
    verify()
