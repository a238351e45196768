"""Simulación de Monte Carlo de un experimento de Bell con un número finito de disparos.

Cada término E(A, B) se estima muestreando pares de resultados (±1, ±1) con la
regla de Born y proyectores (I ± σ·n)/2 en cada lado.
"""

from concurrent.futures import ThreadPoolExecutor
import logging
import math
from typing import Any, Final

import numpy as np

from config.settings import settings
from models.density import DensityMatrix
from models.measurement import MeasurementSettings, normalized
from models.shots import ChshEstimate, OutcomeDistribution, ShotEstimate
from services.exceptions import InvalidParameterError
from services.quantum_core import I2, spin_operator
from utils.rng import STREAM_SHOTS, check_seed, derive_generator

logger: Final = logging.getLogger(__name__)

# Orden de los resultados: (+,+), (+,−), (−,+), (−,−)
_OUTCOME_PRODUCTS: Final = np.array([1, -1, -1, 1])
# Signos de E(A,B) + E(A,B′) + E(A′,B) − E(A′,B′)
_TERM_SIGNS: Final = (1.0, 1.0, 1.0, -1.0)

_SHOTS_ERROR = "El número de disparos debe ser ≥ 1, se recibió {shots}."


def _projectors(direction: Any) -> tuple[np.ndarray, np.ndarray]:  # noqa: ANN401
    operator = spin_operator(direction)
    return (I2 + operator) / 2, (I2 - operator) / 2


def joint_probabilities(
    rho: DensityMatrix,
    a_dir: Any,  # noqa: ANN401
    b_dir: Any,  # noqa: ANN401
) -> OutcomeDistribution:
    """Probabilidades p(a, b) = Tr[ρ·(P_a ⊗ P_b)] de los cuatro pares de resultados."""
    a_plus, a_minus = _projectors(normalized("a_dir", a_dir))
    b_plus, b_minus = _projectors(normalized("b_dir", b_dir))
    probabilities = np.array(
        [
            np.trace(rho.matrix @ np.kron(a_side, b_side)).real
            for a_side in (a_plus, a_minus)
            for b_side in (b_plus, b_minus)
        ]
    )
    probabilities = np.clip(probabilities, 0.0, None)
    probabilities /= np.sum(probabilities)
    return OutcomeDistribution(*(float(p) for p in probabilities))


def _check_shots(shots: int) -> None:
    if shots < 1:
        raise InvalidParameterError(_SHOTS_ERROR.format(shots=shots))


def estimate_correlation(
    rho: DensityMatrix,
    a_dir: Any,  # noqa: ANN401
    b_dir: Any,  # noqa: ANN401
    shots: int,
    seed: int,
) -> ShotEstimate:
    """Estima E(A, B) como media de los productos ab de `shots` disparos.

    Args:
        rho: Estado medido.
        a_dir: Dirección de medida de la partícula a.
        b_dir: Dirección de medida de la partícula b.
        shots: Número de disparos (≥ 1).
        seed: Semilla de 64 bits; el resultado es determinista para ella.

    Returns:
        Media, disparos, error estándar (desviación muestral / √shots) y semilla.
    """
    _check_shots(shots)
    rng = derive_generator(check_seed(seed), STREAM_SHOTS)
    distribution = joint_probabilities(rho, a_dir, b_dir)
    counts = rng.multinomial(shots, distribution.as_tuple())
    mean = float(counts @ _OUTCOME_PRODUCTS) / shots
    mean = min(1.0, max(-1.0, mean))
    if shots > 1:
        variance = max(0.0, (1.0 - mean * mean) * shots / (shots - 1))
    else:
        variance = 0.0
    return ShotEstimate(
        mean=mean,
        shots=shots,
        standard_error=math.sqrt(variance / shots),
        seed=seed,
    )


def estimate_chsh(
    rho: DensityMatrix,
    settings_f: MeasurementSettings,
    shots_per_term: int,
    seed: int,
) -> ChshEstimate:
    """Estima F = Ê(A,B) + Ê(A,B′) + Ê(A′,B) − Ê(A′,B′).

    Cada término usa la semilla seed ⊕ índice del término, así que los cuatro
    son independientes y el resultado no depende del orden de ejecución. Los
    errores estándar se combinan en cuadratura.
    """
    _check_shots(shots_per_term)
    check_seed(seed)
    pairs = (
        (settings_f.n, settings_f.m),
        (settings_f.n, settings_f.m_prime),
        (settings_f.n_prime, settings_f.m),
        (settings_f.n_prime, settings_f.m_prime),
    )

    def run_term(index: int) -> ShotEstimate:
        a_dir, b_dir = pairs[index]
        return estimate_correlation(rho, a_dir, b_dir, shots_per_term, seed ^ index)

    with ThreadPoolExecutor(max_workers=min(settings.THREADS, len(pairs))) as executor:
        terms = tuple(executor.map(run_term, range(len(pairs))))

    estimate = sum(sign * term.mean for sign, term in zip(_TERM_SIGNS, terms, strict=True))
    standard_error = math.sqrt(sum(term.standard_error**2 for term in terms))
    logger.debug(
        "CHSH estimado con %s disparos por término: %.6f ± %.6f",
        shots_per_term,
        estimate,
        standard_error,
    )
    return ChshEstimate(
        estimate=float(estimate),
        standard_error=standard_error,
        terms=terms,  # type: ignore[arg-type]
    )
