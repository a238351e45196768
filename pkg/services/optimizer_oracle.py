"""Oráculo de fuerza bruta para F y G sobre direcciones de medida.

Ascenso alterno con actualizaciones exactas:

- F: dado (n, n′), m ∝ β_Mᵀ(n + n′) y m′ ∝ β_Mᵀ(n − n′); dado (m, m′),
  n ∝ β_M(m + m′) y n′ ∝ β_M(m − m′).
- G: l ∝ β_M h, h ∝ β_Mᵀ l (iteración de potencia).

Los reinicios se procesan por lotes de filas con operaciones elemento a
elemento, de modo que cada fila depende sólo de su propio sub-flujo aleatorio y
el resultado es idéntico bit a bit con cualquier número de hilos.
"""

from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
import logging
import math
from typing import Final

import numpy as np

from config.settings import settings
from models.base import RealArray
from models.density import BlochDecomposition
from models.measurement import GSettings, MeasurementSettings
from models.optimization import OptimizationResult, OptimizerConfig
from services.exceptions import InvalidParameterError, OracleError, ResolutionTooHighError
from utils.rng import STREAM_ORACLE_F, STREAM_ORACLE_G, derive_generator, random_unit_vectors

logger: Final = logging.getLogger(__name__)

MONOTONE_SLACK: Final = 1e-12
TIE_TOLERANCE: Final = 1e-15
MIN_GRID_RESOLUTION: Final = 8
MAX_GRID_EVALUATIONS: Final = 10**9

_MONOTONE_ERROR = (
    "El ascenso alterno de {objective} perdió la monotonía en el reinicio {restart}, "
    "iteración {iteration}: {before:.17g} → {after:.17g}."
)
_RESOLUTION_LOW_ERROR = (
    "La resolución de la malla debe ser ≥ {minimum}, se recibió {resolution}."
)
_RESOLUTION_HIGH_ERROR = (
    "La malla de resolución {resolution} requiere {evaluations} evaluaciones (> {limit})."
)
_WORKERS_ERROR = "El número de hilos debe ser ≥ 1, se recibió {workers}."

# (value, direcciones finales por fila, iteraciones por fila)
ChunkResult = tuple[RealArray, tuple[RealArray, ...], np.ndarray]


def _rows_times(rows: RealArray, matrix: RealArray) -> RealArray:
    """Cada fila x ↦ x·matrix, escrito elemento a elemento."""
    return (
        rows[:, 0, None] * matrix[0]
        + rows[:, 1, None] * matrix[1]
        + rows[:, 2, None] * matrix[2]
    )


def _row_dots(first: RealArray, second: RealArray) -> RealArray:
    return first[:, 0] * second[:, 0] + first[:, 1] * second[:, 1] + first[:, 2] * second[:, 2]


def _normalize_rows(vectors: RealArray, previous: RealArray) -> RealArray:
    """Normaliza cada fila; las filas nulas conservan la dirección anterior."""
    norms = np.sqrt(_row_dots(vectors, vectors))
    usable = norms > 0.0
    result = previous.copy()
    result[usable] = vectors[usable] / norms[usable, None]
    return result


def _initial_directions(seed: int, stream: int, indices: range, count: int) -> list[RealArray]:
    """`count` direcciones aleatorias por reinicio, cada reinicio con su sub-flujo."""
    draws = np.array(
        [random_unit_vectors(derive_generator(seed, stream, index), count) for index in indices]
    )
    return [draws[:, k, :] for k in range(count)]


def _f_value(
    beta: RealArray,
    n: RealArray,
    n_prime: RealArray,
    m: RealArray,
    m_prime: RealArray,
) -> RealArray:
    beta_t = beta.T
    return _row_dots(n + n_prime, _rows_times(m, beta_t)) + _row_dots(
        n - n_prime, _rows_times(m_prime, beta_t)
    )


def _check_monotone(
    objective: str,
    before: RealArray,
    after: RealArray,
    active: np.ndarray,
    indices: range,
    iteration: int,
) -> None:
    drops = active & (after < before - MONOTONE_SLACK)
    if np.any(drops):
        row = int(np.argmax(drops))
        raise OracleError(
            _MONOTONE_ERROR.format(
                objective=objective,
                restart=indices[row],
                iteration=iteration,
                before=before[row],
                after=after[row],
            )
        )


def _ascend_f(beta: RealArray, cfg: OptimizerConfig, indices: range) -> ChunkResult:
    n, n_prime, m, m_prime = _initial_directions(cfg.seed, STREAM_ORACLE_F, indices, 4)
    m = _normalize_rows(_rows_times(n + n_prime, beta), m)
    m_prime = _normalize_rows(_rows_times(n - n_prime, beta), m_prime)
    value = _f_value(beta, n, n_prime, m, m_prime)

    active = np.ones(len(indices), dtype=bool)
    iterations = np.zeros(len(indices), dtype=np.int64)
    beta_t = beta.T
    for iteration in range(1, cfg.max_iterations + 1):
        if not np.any(active):
            break
        new_n = _normalize_rows(_rows_times(m + m_prime, beta_t), n)
        new_n_prime = _normalize_rows(_rows_times(m - m_prime, beta_t), n_prime)
        new_m = _normalize_rows(_rows_times(new_n + new_n_prime, beta), m)
        new_m_prime = _normalize_rows(_rows_times(new_n - new_n_prime, beta), m_prime)
        new_value = _f_value(beta, new_n, new_n_prime, new_m, new_m_prime)
        _check_monotone("F", value, new_value, active, indices, iteration)

        n[active] = new_n[active]
        n_prime[active] = new_n_prime[active]
        m[active] = new_m[active]
        m_prime[active] = new_m_prime[active]
        change = np.abs(new_value - value)
        value[active] = new_value[active]
        iterations[active] = iteration
        active &= change > cfg.convergence_tol

    return value, (n, n_prime, m, m_prime), iterations


def _ascend_g(beta: RealArray, cfg: OptimizerConfig, indices: range) -> ChunkResult:
    l, h = _initial_directions(cfg.seed, STREAM_ORACLE_G, indices, 2)  # noqa: E741
    h = _normalize_rows(_rows_times(l, beta), h)
    value = 2.0 * _row_dots(l, _rows_times(h, beta.T))

    active = np.ones(len(indices), dtype=bool)
    iterations = np.zeros(len(indices), dtype=np.int64)
    for iteration in range(1, cfg.max_iterations + 1):
        if not np.any(active):
            break
        new_l = _normalize_rows(_rows_times(h, beta.T), l)
        new_h = _normalize_rows(_rows_times(new_l, beta), h)
        new_value = 2.0 * _row_dots(new_l, _rows_times(new_h, beta.T))
        _check_monotone("G", value, new_value, active, indices, iteration)

        l[active] = new_l[active]
        h[active] = new_h[active]
        change = np.abs(new_value - value)
        value[active] = new_value[active]
        iterations[active] = iteration
        active &= change > cfg.convergence_tol

    return value, (l, h), iterations


def _run_restarts(
    ascend: Callable[[RealArray, OptimizerConfig, range], ChunkResult],
    beta: RealArray,
    cfg: OptimizerConfig,
    workers: int | None,
) -> tuple[float, list[RealArray], int, int]:
    """Reparte los reinicios en bloques y aplica la regla de reducción determinista."""
    threads = settings.THREADS if workers is None else workers
    if threads < 1:
        raise InvalidParameterError(_WORKERS_ERROR.format(workers=threads))
    chunk_count = min(threads, cfg.restarts)
    bounds = np.linspace(0, cfg.restarts, chunk_count + 1).astype(int)
    chunks = [
        range(int(start), int(stop))
        for start, stop in zip(bounds[:-1], bounds[1:], strict=True)
    ]

    if chunk_count == 1:
        results = [ascend(beta, cfg, chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=chunk_count) as executor:
            results = list(executor.map(lambda chunk: ascend(beta, cfg, chunk), chunks))

    values = np.concatenate([result[0] for result in results])
    directions = [
        np.concatenate([result[1][k] for result in results]) for k in range(len(results[0][1]))
    ]
    iterations = np.concatenate([result[2] for result in results])

    # El mejor valor gana; los empates se resuelven por el índice más bajo
    best = 0
    for index in range(1, cfg.restarts):
        if values[index] > values[best] + TIE_TOLERANCE:
            best = index

    logger.debug(
        "Oráculo: %s reinicios en %s bloques, mejor=%s (reinicio %s, %s iteraciones)",
        cfg.restarts,
        chunk_count,
        values[best],
        best,
        iterations[best],
    )
    best_directions = [vectors[best] for vectors in directions]
    return float(values[best]), best_directions, int(iterations[best]), best


def maximize_f(
    d: BlochDecomposition,
    cfg: OptimizerConfig | None = None,
    workers: int | None = None,
) -> OptimizationResult:
    """Maximiza F = β·T por ascenso alterno desde reinicios aleatorios.

    Args:
        d: Descomposición de Bloch del estado.
        cfg: Parámetros del oráculo (por defecto los de settings, semilla 0).
        workers: Hilos a usar; por defecto `settings.THREADS`. No altera el resultado.

    Returns:
        El mejor valor y los ajustes (n, n′, m, m′) que lo alcanzan.

    Raises:
        OracleError: si alguna iteración disminuye F más allá de 1e-12.
    """
    config = cfg or OptimizerConfig()
    value, (n, n_prime, m, m_prime), iterations, best = _run_restarts(
        _ascend_f, d.beta, config, workers
    )
    return OptimizationResult(
        value=value,
        settings=MeasurementSettings(n=n, n_prime=n_prime, m=m, m_prime=m_prime),
        iterations_used=iterations,
        restart_index_of_best=best,
    )


def maximize_g(
    d: BlochDecomposition,
    cfg: OptimizerConfig | None = None,
    workers: int | None = None,
) -> OptimizationResult:
    """Maximiza G = 2·lᵀβ_M h por iteración de potencia alterna."""
    config = cfg or OptimizerConfig()
    value, (l, h), iterations, best = _run_restarts(  # noqa: E741
        _ascend_g, d.beta, config, workers
    )
    return OptimizationResult(
        value=value,
        settings=GSettings(l=l, h=h),
        iterations_used=iterations,
        restart_index_of_best=best,
    )


def _grid_directions(resolution: int) -> RealArray:
    polar = (np.arange(resolution) + 0.5) * math.pi / resolution
    azimuth = 2.0 * math.pi * np.arange(resolution) / resolution
    theta, phi = np.meshgrid(polar, azimuth, indexing="ij")
    return np.stack(
        [np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)], axis=-1
    ).reshape(-1, 3)


def grid_scan_f(d: BlochDecomposition, resolution: int) -> float:
    """Cota inferior de F_max por barrido exhaustivo de (n, n′) en una malla esférica.

    Para cada par de la malla, m y m′ toman su valor óptimo exacto, así que
    F = |β_Mᵀ(n + n′)| + |β_Mᵀ(n − n′)|: cada punto es un valor alcanzable y el
    máximo de la malla nunca supera el máximo real.

    Raises:
        InvalidParameterError: si la resolución es menor que 8.
        ResolutionTooHighError: si la malla supera 10⁹ evaluaciones.
    """
    if resolution < MIN_GRID_RESOLUTION:
        raise InvalidParameterError(
            _RESOLUTION_LOW_ERROR.format(minimum=MIN_GRID_RESOLUTION, resolution=resolution)
        )
    evaluations = resolution**4
    if evaluations > MAX_GRID_EVALUATIONS:
        raise ResolutionTooHighError(
            _RESOLUTION_HIGH_ERROR.format(
                resolution=resolution, evaluations=evaluations, limit=MAX_GRID_EVALUATIONS
            )
        )

    projected = _grid_directions(resolution) @ d.beta
    best = 0.0
    for row in projected:
        plus = row + projected
        minus = row - projected
        values = np.sqrt(_row_dots(plus, plus)) + np.sqrt(_row_dots(minus, minus))
        best = max(best, float(np.max(values)))
    logger.debug("Barrido de malla (resolución %s): máximo %.12g", resolution, best)
    return best
