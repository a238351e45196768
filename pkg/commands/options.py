"""Opciones compartidas por los comandos y construcción del `StateSpec` desde la CLI."""

from collections.abc import Callable
import json
import logging
from pathlib import Path
from typing import Any, Final, TypeVar

import click

from services.exceptions import InvalidInputError
from services.report_service import OutputFormat
from utils.validators import StateFamily, StateSpec, load_state_spec

logger: Final = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

MAX_SEED: Final = 2**64 - 1
BELL_CHOICES: Final = ("psi_plus", "psi_minus", "phi_plus", "phi_minus")
FAMILY_CHOICES: Final = (
    "bell",
    *(family.value for family in StateFamily if family is not StateFamily.EXPLICIT),
)

_SOURCE_CONFLICT_ERROR = "Usa --input o --family, no ambos."
_SOURCE_MISSING_ERROR = "Indica el estado con --input ARCHIVO o con --family."
_OUTPUT_WRITE_ERROR = "No se pudo escribir '{path}': {reason}"


def _apply(func: F, decorators: list[Callable[[F], F]]) -> F:
    for decorator in reversed(decorators):
        func = decorator(func)
    return func


def state_options(func: F) -> F:
    """Opciones que describen el estado de entrada (archivo o familia con parámetros)."""
    return _apply(
        func,
        [
            click.option(
                "--input",
                "--matrix-file",
                "input_path",
                type=click.Path(dir_okay=False, path_type=Path),
                help="Archivo JSON con {family, params} o {matrix}.",
            ),
            click.option("--family", type=click.Choice(FAMILY_CHOICES), help="Familia de estados."),
            click.option(
                "--which",
                type=click.Choice(BELL_CHOICES),
                default="psi_plus",
                show_default=True,
                help="Estado de Bell cuando --family bell.",
            ),
            click.option("--alpha", type=float, help="Peso del singlete en Werner."),
            click.option("--k1", type=float, help="Primera amplitud del estado puro."),
            click.option("--k2", type=float, help="Segunda amplitud; por defecto √(1−k1²)."),
            click.option("--u", nargs=3, type=float, default=None, help="Vector de Bloch de a."),
            click.option("--v", nargs=3, type=float, default=None, help="Vector de Bloch de b."),
            click.option(
                "--mixture-size",
                type=click.IntRange(1, 8),
                help="Componentes de la mezcla en random_mixed.",
            ),
        ],
    )


def seed_option(func: F) -> F:
    return click.option(
        "--seed",
        type=click.IntRange(0, MAX_SEED),
        default=0,
        show_default=True,
        help="Semilla de 64 bits de toda la aleatoriedad del comando.",
    )(func)


def output_options(func: F) -> F:
    """`--format` para stdout y `--output` para guardar el mismo documento en un archivo."""
    return _apply(
        func,
        [
            click.option(
                "--format",
                "fmt",
                type=click.Choice([fmt.value for fmt in OutputFormat]),
                default=OutputFormat.TABLE.value,
                show_default=True,
                help="Formato de la salida estándar.",
            ),
            click.option(
                "--output",
                "output_path",
                type=click.Path(dir_okay=False, path_type=Path),
                help="Archivo de informe; con --format table se escribe en JSON.",
            ),
        ],
    )


def resolve_spec(
    input_path: Path | None,
    family: str | None,
    which: str,
    seed: int,
    **params: Any,  # noqa: ANN401
) -> StateSpec:
    """Construye el `StateSpec` a partir de las opciones de estado.

    Las opciones no indicadas no se transmiten, así que los parámetros que
    falten los señala la validación de `StateSpec`. Para `random_mixed` la
    semilla del estado es `--seed`.

    Raises:
        click.UsageError: si se da --input y --family a la vez, o ninguno.
        InvalidInputError: si el archivo no se puede leer o no es válido.
        pydantic.ValidationError: si los parámetros no forman un estado válido.
    """
    if input_path is not None and family is not None:
        raise click.UsageError(_SOURCE_CONFLICT_ERROR)
    if input_path is not None:
        logger.info("Leyendo el estado de %s", input_path)
        return load_state_spec(input_path)
    if family is None:
        raise click.UsageError(_SOURCE_MISSING_ERROR)

    name = f"bell_{which}" if family == "bell" else family
    values = {key: value for key, value in params.items() if value is not None}
    for key in ("u", "v"):
        if key in values:
            values[key] = list(values[key])
    if name == StateFamily.RANDOM_MIXED.value:
        values["seed"] = seed
    return StateSpec.model_validate({"family": name, "params": values})


def emit(
    render: Callable[[OutputFormat], str], fmt: OutputFormat, output_path: Path | None
) -> None:
    """Escribe el documento en stdout y, si se pidió, el informe en `output_path`.

    Args:
        render: Renderiza el documento en el formato dado.
        fmt: Formato de stdout.
        output_path: Archivo de informe opcional.
    """
    text = render(fmt)
    click.echo(text, nl=False)
    if output_path is None:
        return
    file_text = render(OutputFormat.JSON) if fmt is OutputFormat.TABLE else text
    try:
        output_path.write_text(file_text, encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(_OUTPUT_WRITE_ERROR.format(path=output_path, reason=e)) from e
    logger.info("Informe escrito en %s", output_path)


def write_json(path: Path, payload: Any) -> None:  # noqa: ANN401
    """Guarda `payload` como JSON; los floats usan su representación exacta más corta."""
    try:
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise InvalidInputError(_OUTPUT_WRITE_ERROR.format(path=path, reason=e)) from e
