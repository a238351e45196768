"""Comando `verify`: fórmulas analíticas frente al oráculo sobre estados aleatorios."""

from functools import partial
import logging
from pathlib import Path
from typing import Final

import click

from commands.options import MAX_SEED, emit, output_options
from config import __version__
from config.settings import settings
from models.document import VerificationDocument
from models.optimization import OptimizerConfig
from models.verification import VerificationSummary
from services.exceptions import EXIT_FAILURE
from services.report_service import OutputFormat, render_document
from services.verification_service import run_verification

logger: Final = logging.getLogger(__name__)


def verification_document(summary: VerificationSummary) -> VerificationDocument:
    return VerificationDocument(
        tool_version=__version__,
        count=summary.count,
        seed=summary.seed,
        tolerance=summary.tolerance,
        identity_tolerance=summary.identity_tolerance,
        worst_f_delta=summary.worst_f_delta,
        worst_g_delta=summary.worst_g_delta,
        worst_identity_residual=summary.worst_identity_residual,
        identity_checked=summary.identity_checked,
        passed=summary.passed,
        failures=[
            {
                "index": failure.index,
                "seed": failure.seed,
                "check": failure.check,
                "delta": failure.delta,
                "tolerance": failure.tolerance,
            }
            for failure in summary.failures
        ],
    )


@click.command("verify")
@click.option("--count", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--seed", type=click.IntRange(0, MAX_SEED), default=0, show_default=True)
@click.option(
    "--tolerance",
    type=click.FloatRange(min=0.0, min_open=True),
    default=None,
    help=f"Diferencia máxima admitida con el oráculo [por defecto {settings.VERIFY_TOLERANCE}].",
)
@click.option(
    "--restarts",
    type=click.IntRange(min=1),
    default=None,
    help="Reinicios del oráculo por estado.",
)
@output_options
@click.pass_context
def verify(
    ctx: click.Context,
    count: int,
    seed: int,
    tolerance: float | None,
    restarts: int | None,
    fmt: str,
    output_path: Path | None,
) -> None:
    """Sale con código 1 si algún estado supera la tolerancia."""
    cfg = OptimizerConfig(seed=seed, restarts=restarts) if restarts else None
    summary = run_verification(count, seed=seed, tolerance=tolerance, cfg=cfg)
    document = verification_document(summary)
    emit(partial(render_document, document), OutputFormat(fmt), output_path)

    if not summary.passed:
        for failure in summary.failures:
            click.echo(
                f"FALLO {failure.check}: semilla {failure.seed}, estado {failure.index}, "
                f"Δ={failure.delta:.3e} > {failure.tolerance:.1e}",
                err=True,
            )
        ctx.exit(EXIT_FAILURE)
