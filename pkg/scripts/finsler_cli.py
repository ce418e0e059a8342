#!/usr/bin/env python3
"""
Verification harness CLI for the Finsler submanifold engine

Runs scenarios, lists the available checks and the shipped scenarios. The
report goes to stdout (or --out); progress goes to the CLI logger on stderr.

Usage:
    # Run a shipped scenario by name
    python scripts/finsler_cli.py run euclidean-plane

    # Run a scenario file, machine-readable report to a file
    python scripts/finsler_cli.py run my.scenario --format machine --out report.json

    # Only some checks, fewer points, another seed
    python scripts/finsler_cli.py run randers-graph --checks ambient,compare --points 3 --seed 0x2A

    # What can be checked and run
    python scripts/finsler_cli.py list-checks
    python scripts/finsler_cli.py list-scenarios

Exit codes:
    0 when every asserted identity passes, 1 on an asserted failure,
    2 on a configuration error
"""

import logging
import logging.config
import sys
from pathlib import Path
from typing import Optional

import click
from pydantic import ValidationError

sys.path.insert(0, str(Path(__file__).parent.parent))  # noqa: E402

from app.config import get_settings  # noqa: E402
from app.errors import ScenarioError  # noqa: E402
from app.harness import (  # noqa: E402
    CATALOG,
    FORMATS,
    emit_report,
    list_scenarios,
    load_scenario,
    run_scenario,
)
from app.logging_config import configure_logging  # noqa: E402

# Configure logging
configure_logging(get_settings().BASE.LOG_DIR)
logger = logging.getLogger("CLI")

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def parse_seed(ctx, param, value: Optional[str]) -> Optional[int]:
    if value is None:
        return None
    try:
        return int(value, 16)
    except ValueError as e:
        raise click.BadParameter(f"{value!r} is not a hexadecimal seed") from e


def parse_checks(ctx, param, value: Optional[str]) -> Optional[tuple[str, ...]]:
    if value is None:
        return None
    return tuple(part.strip() for part in value.split(",") if part.strip())


@click.group()
def cli():
    """Finsler submanifold engine: verification harness."""
    pass


@cli.command()
@click.argument("scenario")
@click.option(
    "--format",
    "report_format",
    type=click.Choice(FORMATS),
    default="human",
    show_default=True,
    help="Report format",
)
@click.option(
    "--checks", callback=parse_checks, help="Comma-separated families or identity prefixes"
)
@click.option("--points", type=click.IntRange(min=1), help="Number of sample points")
@click.option("--seed", callback=parse_seed, help="Sampling seed in hex, e.g. 0xF175")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), help="Write the report here")
def run(
    scenario: str,
    report_format: str,
    checks: Optional[tuple[str, ...]],
    points: Optional[int],
    seed: Optional[int],
    out: Optional[str],
):
    """
    Run a scenario file or a shipped scenario.

    Examples:
        python scripts/finsler_cli.py run euclidean-sphere2
        python scripts/finsler_cli.py run randers-graph --format machine --out report.json
    """
    try:
        loaded = load_scenario(scenario).with_overrides(points=points, seed=seed, checks=checks)
        logger.info("=" * 60)
        logger.info(f"RUNNING SCENARIO {loaded.name}")
        logger.info(f"  Points: {loaded.run.points}, seed: {loaded.run.seed:#x}")
        logger.info("=" * 60)
        report = run_scenario(loaded)
    except (ScenarioError, ValidationError) as e:
        logger.error(f"Configuration error: {e}")
        sys.exit(EXIT_CONFIG)

    text = emit_report(report, report_format)
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Report written to {out}")
    else:
        click.echo(text, nl=False)

    summary = report.summary
    logger.info("=" * 60)
    if summary.passed:
        logger.info(f"✓ {loaded.name}: all {summary.asserted} asserted rows passed")
    elif not summary.asserted:
        logger.error(f"✗ {loaded.name}: domain errors at every point, nothing was asserted")
    else:
        logger.error(
            f"✗ {loaded.name}: {summary.failed} of {summary.asserted} asserted rows failed"
        )
    if summary.errors:
        logger.warning(f"  {summary.errors} domain-error rows")
    logger.info(f"  Wall time: {report.wall_time_s:.2f}s")
    logger.info("=" * 60)
    sys.exit(EXIT_PASS if summary.passed else EXIT_FAIL)


@cli.command("list-checks")
def list_checks():
    """List every check family and the identities it can emit."""
    for family, identities in CATALOG.items():
        click.echo(family)
        for identity in identities:
            click.echo(f"  {identity}")


@cli.command("list-scenarios")
def list_scenarios_command():
    """List the shipped scenarios."""
    for name in list_scenarios():
        click.echo(name)


if __name__ == "__main__":
    cli()
