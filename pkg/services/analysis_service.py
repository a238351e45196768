"""Orquestación de los comandos: documentos de análisis, barridos y simulaciones."""

import logging
import math
from typing import Final

from config import __version__
from models.density import BlochDecomposition, DensityMatrix
from models.document import (
    AnalysisDocument,
    BlochSection,
    GSection,
    MeasurementSection,
    OracleSection,
    ReportSection,
    ShotSection,
    ShotTerm,
    SimulationDocument,
    SweepRow,
)
from models.measurement import MeasurementSettings
from models.optimization import OptimizerConfig
from models.report import ChshReport
from services.chsh_engine import chsh_value, classify, inequality_report
from services.exceptions import EmptyRangeError, InvalidParameterError
from services.optimizer_oracle import maximize_f, maximize_g
from services.quantum_core import decompose_bloch, purity
from services.shot_simulator import estimate_chsh
from services.state_factory import build
from utils.validators import StateFamily, StateParams, StateSpec

logger: Final = logging.getLogger(__name__)

WERNER_SEPARABLE_BOUND: Final = 1.0 / 3.0
SWEEP_DECIMALS: Final = 12
_TERM_LABELS: Final = ("E(A,B)", "E(A,B')", "E(A',B)", "E(A',B')")

_EMPTY_RANGE_ERROR = "El rango [{start}, {stop}] con paso {step} no contiene ningún punto."
_NOT_SWEEPABLE_ERROR = "La familia '{family}' no tiene un parámetro escalar que barrer."


def _measurement_section(s: MeasurementSettings) -> MeasurementSection:
    return MeasurementSection(**s.as_dict())


def _report_section(rho: DensityMatrix, report: ChshReport) -> ReportSection:
    inequality = inequality_report(rho)
    return ReportSection(
        f_max=report.f_max,
        g_max=report.g_max,
        p_e=report.p_e,
        singular_values=list(report.singular_values),
        correlation_norm=report.correlation_norm,
        gamma=report.gamma,
        delta=report.delta,
        eta=report.eta,
        x_vec=report.x_vec.tolist(),
        y_vec=report.y_vec.tolist(),
        x_norm=report.x_norm,
        y_norm=report.y_norm,
        beta_rank=report.beta_rank,
        entangled=report.entangled,
        chsh_violated=report.chsh_violated,
        generalized_violation=inequality.violation,
        maximal_violation_residual=inequality.maximal_violation_residual,
        purity=purity(rho),
        settings_f=_measurement_section(report.settings_f),
        settings_g=GSection(**report.settings_g.as_dict()),
    )


def oracle_section(d: BlochDecomposition, report: ChshReport, seed: int) -> OracleSection:
    """Ejecuta el oráculo sobre F y G y anota las diferencias con el camino analítico."""
    cfg = OptimizerConfig(seed=seed)
    result_f = maximize_f(d, cfg)
    result_g = maximize_g(d, cfg)
    return OracleSection(
        seed=seed,
        restarts=cfg.restarts,
        f_value=result_f.value,
        f_delta=abs(result_f.value - report.f_max),
        f_iterations=result_f.iterations_used,
        f_restart_index=result_f.restart_index_of_best,
        g_value=result_g.value,
        g_delta=abs(result_g.value - report.g_max),
        g_iterations=result_g.iterations_used,
        g_restart_index=result_g.restart_index_of_best,
    )


def shot_section(
    rho: DensityMatrix,
    settings_f: MeasurementSettings,
    shots_per_term: int,
    seed: int,
) -> ShotSection:
    """Estimación por disparos de F en `settings_f` junto al valor exacto."""
    estimate = estimate_chsh(rho, settings_f, shots_per_term, seed)
    terms = [
        ShotTerm(
            term=label,
            mean=term.mean,
            standard_error=term.standard_error,
            shots=term.shots,
            seed=term.seed,
        )
        for label, term in zip(_TERM_LABELS, estimate.terms, strict=True)
    ]
    return ShotSection(
        shots_per_term=shots_per_term,
        seed=seed,
        estimate=estimate.estimate,
        standard_error=estimate.standard_error,
        analytic=chsh_value(decompose_bloch(rho), settings_f),
        terms=terms,
    )


def build_document(
    spec: StateSpec,
    seed: int = 0,
    with_oracle: bool = False,
    shots: int | None = None,
) -> tuple[AnalysisDocument, DensityMatrix]:
    """Construye el estado de `spec` y su documento de análisis.

    Args:
        spec: Especificación validada del estado.
        seed: Semilla del oráculo y de la simulación por disparos.
        with_oracle: Añade la sección del oráculo.
        shots: Si se da, añade la sección de disparos en los ajustes óptimos de F.

    Returns:
        El documento y el estado construido.
    """
    rho = build(spec)
    d = decompose_bloch(rho)
    report = classify(rho)
    document = AnalysisDocument(
        tool_version=__version__,
        seed=seed,
        input=spec,
        bloch=BlochSection(u=d.u.tolist(), v=d.v.tolist(), beta=d.beta.tolist()),
        report=_report_section(rho, report),
        oracle=oracle_section(d, report, seed) if with_oracle else None,
        shots=shot_section(rho, report.settings_f, shots, seed) if shots is not None else None,
    )
    return document, rho


def parameter_values(start: float, stop: float, step: float) -> list[float]:
    """start, start + step, ... ≤ stop, redondeados para evitar residuos de coma flotante.

    Raises:
        EmptyRangeError: si el rango no tiene puntos.
    """
    if not all(math.isfinite(x) for x in (start, stop, step)) or step <= 0.0 or stop < start:
        raise EmptyRangeError(_EMPTY_RANGE_ERROR.format(start=start, stop=stop, step=step))
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [round(start + k * step, SWEEP_DECIMALS) for k in range(count)]
    return [min(value, stop) for value in values]


def sweep(
    family: StateFamily,
    start: float,
    stop: float,
    step: float,
    base_params: StateParams | None = None,
) -> list[SweepRow]:
    """Una fila por valor del parámetro escalar de la familia, en orden creciente."""
    parameter = family.scalar_parameter
    if parameter is None:
        raise InvalidParameterError(_NOT_SWEEPABLE_ERROR.format(family=family.value))
    base = base_params or StateParams()
    rows = []
    for value in parameter_values(start, stop, step):
        params = base.model_copy(update={parameter: value})
        report = classify(build(StateSpec(family=family, params=params)))
        rows.append(
            SweepRow(
                parameter=parameter,
                value=value,
                f_max=report.f_max,
                g_max=report.g_max,
                p_e=report.p_e,
                beta_rank=report.beta_rank,
                entangled=report.entangled,
                chsh_violated=report.chsh_violated,
                separable_per_cited_bound=(
                    value <= WERNER_SEPARABLE_BOUND if family is StateFamily.WERNER else None
                ),
            )
        )
    logger.info("Barrido de %s: %s filas", family.value, len(rows))
    return rows


def simulate(
    spec: StateSpec,
    shots_per_term: int,
    seed: int = 0,
    settings_f: MeasurementSettings | None = None,
) -> SimulationDocument:
    """Simula la medida CHSH por disparos en los ajustes dados o en los óptimos de F."""
    rho = build(spec)
    source = "explicit"
    if settings_f is None:
        settings_f = classify(rho).settings_f
        source = "optimal_f"
    return SimulationDocument(
        tool_version=__version__,
        input=spec,
        settings_source=source,
        settings_f=_measurement_section(settings_f),
        shots=shot_section(rho, settings_f, shots_per_term, seed),
    )

