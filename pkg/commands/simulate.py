"""Comando `simulate`: estimación de F por disparos en ajustes dados o en los óptimos."""

from functools import partial
import logging
from pathlib import Path
from typing import Any, Final

import click

from commands.options import emit, output_options, resolve_spec, seed_option, state_options
from models.measurement import MeasurementSettings
from services.analysis_service import simulate as simulate_state
from services.report_service import OutputFormat, render_document

logger: Final = logging.getLogger(__name__)

DEFAULT_SHOTS: Final = 100_000

_SETTINGS_CONFLICT_ERROR = "Usa --optimal-f o las cuatro direcciones, no ambos."
_SETTINGS_MISSING_ERROR = "Indica --optimal-f o las cuatro direcciones --n --n-prime --m --m-prime."


def _direction_option(name: str) -> Any:  # noqa: ANN401
    return click.option(name, nargs=3, type=float, default=None, help=f"Dirección {name[2:]}.")


@click.command("simulate")
@state_options
@seed_option
@output_options
@click.option("--optimal-f", is_flag=True, help="Usa los ajustes que maximizan F.")
@_direction_option("--n")
@_direction_option("--n-prime")
@_direction_option("--m")
@_direction_option("--m-prime")
@click.option(
    "--shots",
    type=click.IntRange(min=1),
    default=DEFAULT_SHOTS,
    show_default=True,
    help="Disparos por término de correlación.",
)
def simulate(
    input_path: Path | None,
    family: str | None,
    which: str,
    seed: int,
    fmt: str,
    output_path: Path | None,
    optimal_f: bool,
    n: tuple[float, float, float] | None,
    n_prime: tuple[float, float, float] | None,
    m: tuple[float, float, float] | None,
    m_prime: tuple[float, float, float] | None,
    shots: int,
    **params: Any,  # noqa: ANN401
) -> None:
    """Simula la medida CHSH con un número finito de disparos por término."""
    directions = (n, n_prime, m, m_prime)
    given = [direction is not None for direction in directions]
    if optimal_f and any(given):
        raise click.UsageError(_SETTINGS_CONFLICT_ERROR)
    if not optimal_f and not all(given):
        raise click.UsageError(_SETTINGS_MISSING_ERROR)

    spec = resolve_spec(input_path, family, which, seed, **params)
    settings_f = None if optimal_f else MeasurementSettings.from_directions(*directions)
    document = simulate_state(spec, shots, seed=seed, settings_f=settings_f)
    logger.info(
        "F estimado %.6f ± %.6f (analítico %.6f)",
        document.shots.estimate,
        document.shots.standard_error,
        document.shots.analytic,
    )
    emit(partial(render_document, document), OutputFormat(fmt), output_path)
