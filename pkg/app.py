"""Punto de entrada de chsh-meter: fábrica del grupo de comandos (Application Factory)."""

import json
import logging
from typing import Any, Final

import click
from pydantic import ValidationError

from commands import analyze, simulate, sweep, verify
from config import __version__
from config.settings import settings
from services.exceptions import EXIT_INVALID_INPUT, AnalysisError
from utils.logging import setup_logging
from utils.validators import format_validation_error

logger: Final = logging.getLogger(__name__)

LOG_LEVELS: Final = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ChshMeterGroup(click.Group):
    """Grupo raíz que traduce las excepciones del dominio a códigos de salida.

    0 éxito; 1 fallo de verificación u oráculo; 2 entrada inválida; 3 estado no físico.
    """

    def invoke(self, ctx: click.Context) -> Any:  # noqa: ANN401
        try:
            return super().invoke(ctx)
        except AnalysisError as e:
            logger.debug("%s: %s", type(e).__name__, e.message)
            click.echo(f"Error: {e.message}", err=True)
            ctx.exit(e.exit_code)
        except ValidationError as e:
            click.echo(f"Error: entrada inválida\n{format_validation_error(e)}", err=True)
            ctx.exit(EXIT_INVALID_INPUT)
        except json.JSONDecodeError as e:
            click.echo(f"Error: JSON inválido: {e}", err=True)
            ctx.exit(EXIT_INVALID_INPUT)
        return None


def create_app() -> click.Group:
    """Crea el grupo de comandos con el logging configurado desde `settings`."""

    @click.group(cls=ChshMeterGroup, context_settings={"help_option_names": ["-h", "--help"]})
    @click.version_option(__version__, prog_name="chsh-meter")
    @click.option(
        "--log-level",
        type=click.Choice(LOG_LEVELS, case_sensitive=False),
        default=None,
        help=f"Nivel de los diagnósticos en stderr [por defecto {settings.LOG_LEVEL}].",
    )
    @click.option("--log-file", default=None, help="Copia los diagnósticos en este archivo.")
    def cli(log_level: str | None, log_file: str | None) -> None:
        """Analiza estados de dos qubits frente a la desigualdad CHSH."""
        setup_logging(
            level=(log_level or settings.LOG_LEVEL).upper(),
            log_file=log_file or settings.LOG_FILE,
        )

    register_commands(cli)
    return cli


def register_commands(cli: click.Group) -> None:
    """Registra los subcomandos en el grupo raíz."""
    cli.add_command(analyze)
    cli.add_command(sweep)
    cli.add_command(verify)
    cli.add_command(simulate)


def main() -> None:
    create_app()(prog_name="chsh-meter")


if __name__ == "__main__":
    main()
