"""Verificación cruzada: fórmulas analíticas frente al oráculo de fuerza bruta."""

import logging
from typing import Final

from config.settings import settings
from models.optimization import OptimizerConfig
from models.verification import VerificationFailure, VerificationSummary
from services.chsh_engine import classify, geometric_identity
from services.exceptions import InvalidParameterError
from services.optimizer_oracle import maximize_f, maximize_g
from services.quantum_core import decompose_bloch
from services.state_factory import random_mixed
from utils.rng import check_seed

logger: Final = logging.getLogger(__name__)

IDENTITY_TOLERANCE: Final = 1e-8
IDENTITY_MIN_F_MAX: Final = 1e-6

_COUNT_ERROR = "El número de estados a verificar debe ser ≥ 1, se recibió {count}."
_TOLERANCE_ERROR = "La tolerancia debe ser positiva, se recibió {tolerance}."


def run_verification(
    count: int,
    seed: int = 0,
    tolerance: float | None = None,
    cfg: OptimizerConfig | None = None,
) -> VerificationSummary:
    """Compara F_max y G_max analíticos con el oráculo sobre estados aleatorios.

    El estado i es `random_mixed(seed, index=i)`. Para los estados con
    F_max > 1e-6 también se comprueban los dos residuos de la identidad
    |X||Y| = 4·G_max·P_E/F_max² = sin(2η), con tolerancia min(tolerance, 1e-8).

    Args:
        count: Número de estados (≥ 1).
        seed: Semilla de los estados y, si no se da `cfg`, del oráculo.
        tolerance: Tolerancia de las diferencias con el oráculo (1e-7 por defecto).
        cfg: Configuración del oráculo.

    Returns:
        Resumen con las peores diferencias y la lista de fallos.
    """
    if count < 1:
        raise InvalidParameterError(_COUNT_ERROR.format(count=count))
    bound = settings.VERIFY_TOLERANCE if tolerance is None else tolerance
    if not bound > 0.0:
        raise InvalidParameterError(_TOLERANCE_ERROR.format(tolerance=bound))
    config = cfg or OptimizerConfig(seed=check_seed(seed))
    identity_bound = min(bound, IDENTITY_TOLERANCE)

    failures: list[VerificationFailure] = []
    worst_f = worst_g = worst_identity = 0.0
    identity_checked = 0

    for index in range(count):
        rho = random_mixed(seed, index=index)
        report = classify(rho)
        d = decompose_bloch(rho)

        checks = [
            ("oracle_f", abs(maximize_f(d, config).value - report.f_max), bound),
            ("oracle_g", abs(maximize_g(d, config).value - report.g_max), bound),
        ]
        worst_f = max(worst_f, checks[0][1])
        worst_g = max(worst_g, checks[1][1])

        if report.f_max > IDENTITY_MIN_F_MAX:
            residuals = geometric_identity(report)
            identity_checked += 1
            checks.append(("identity_r1", residuals.r1, identity_bound))
            checks.append(("identity_r2", residuals.r2, identity_bound))
            worst_identity = max(worst_identity, residuals.r1, residuals.r2)

        for check, delta, limit in checks:
            if delta > limit:
                logger.warning(
                    "Verificación fallida: %s = %.3e > %.1e (semilla %s, índice %s)",
                    check,
                    delta,
                    limit,
                    seed,
                    index,
                )
                failures.append(
                    VerificationFailure(
                        index=index, seed=seed, check=check, delta=delta, tolerance=limit
                    )
                )

    summary = VerificationSummary(
        count=count,
        seed=seed,
        tolerance=bound,
        identity_tolerance=identity_bound,
        worst_f_delta=worst_f,
        worst_g_delta=worst_g,
        worst_identity_residual=worst_identity,
        identity_checked=identity_checked,
        failures=tuple(failures),
    )
    logger.info(
        "Verificación de %s estados: %s fallos (peor ΔF=%.3e, ΔG=%.3e, identidad=%.3e)",
        count,
        len(failures),
        worst_f,
        worst_g,
        worst_identity,
    )
    return summary
