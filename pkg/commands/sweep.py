"""Comando `sweep`: tabla de F_max, G_max y P_E a lo largo de una familia de un parámetro."""

from functools import partial
from pathlib import Path
from typing import Final

import click

from commands.options import emit, output_options
from services.analysis_service import sweep as sweep_family
from services.report_service import OutputFormat, render_sweep
from utils.validators import StateFamily

SWEEPABLE_FAMILIES: Final = tuple(
    family.value for family in StateFamily if family.scalar_parameter is not None
)


@click.command("sweep")
@click.option(
    "--family",
    type=click.Choice(SWEEPABLE_FAMILIES),
    required=True,
    help="werner barre alpha; pure_01_10 y pure_00_11 barren k1.",
)
@click.option("--start", type=float, default=0.0, show_default=True)
@click.option("--stop", type=float, default=1.0, show_default=True)
@click.option("--step", type=float, default=0.1, show_default=True)
@output_options
def sweep(
    family: str,
    start: float,
    stop: float,
    step: float,
    fmt: str,
    output_path: Path | None,
) -> None:
    """Evalúa la familia en start, start+step, ..., ≤ stop."""
    rows = sweep_family(StateFamily(family), start, stop, step)
    emit(partial(render_sweep, rows), OutputFormat(fmt), output_path)
