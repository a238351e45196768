"""Comando `analyze`: informe CHSH completo de un estado."""

from functools import partial
import logging
from pathlib import Path
from typing import Any, Final

import click

from commands.options import (
    emit,
    output_options,
    resolve_spec,
    seed_option,
    state_options,
    write_json,
)
from services.analysis_service import build_document
from services.report_service import OutputFormat, render_document
from services.state_factory import serialize_state

logger: Final = logging.getLogger(__name__)


@click.command("analyze")
@state_options
@seed_option
@output_options
@click.option(
    "--save-state",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Guarda la matriz densidad construida; se puede volver a leer con --input.",
)
@click.option("--oracle", is_flag=True, help="Añade la comprobación por fuerza bruta.")
@click.option(
    "--shots",
    type=click.IntRange(min=1),
    help="Añade la estimación por disparos en los ajustes óptimos de F.",
)
def analyze(
    input_path: Path | None,
    family: str | None,
    which: str,
    seed: int,
    fmt: str,
    output_path: Path | None,
    save_state: Path | None,
    oracle: bool,
    shots: int | None,
    **params: Any,  # noqa: ANN401
) -> None:
    """Calcula F_max, G_max, P_E, ajustes óptimos y clasificación de un estado."""
    spec = resolve_spec(input_path, family, which, seed, **params)
    document, rho = build_document(spec, seed=seed, with_oracle=oracle, shots=shots)
    logger.info(
        "Estado %s: F_max=%.6f G_max=%.6f P_E=%.6f",
        spec.family.value,
        document.report.f_max,
        document.report.g_max,
        document.report.p_e,
    )
    if save_state is not None:
        write_json(save_state, serialize_state(rho))
        logger.info("Estado guardado en %s", save_state)
    emit(partial(render_document, document), OutputFormat(fmt), output_path)
