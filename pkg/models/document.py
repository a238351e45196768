"""Documentos de salida de la CLI (modelos pydantic en la frontera de E/S).

Todos los campos numéricos deben ser finitos (`allow_inf_nan=False`); JSON usa la
representación más corta que reproduce cada float, CSV usa 17 cifras.
"""

from pydantic import BaseModel, ConfigDict

from utils.validators import StateSpec


class _FiniteModel(BaseModel):
    model_config = ConfigDict(allow_inf_nan=False, extra="forbid")


class BlochSection(_FiniteModel):
    u: list[float]
    v: list[float]
    beta: list[list[float]]


class MeasurementSection(_FiniteModel):
    n: list[float]
    n_prime: list[float]
    m: list[float]
    m_prime: list[float]


class GSection(_FiniteModel):
    l: list[float]  # noqa: E741
    h: list[float]


class ReportSection(_FiniteModel):
    """Campos de `ChshReport` más la desigualdad generalizada y la pureza."""

    f_max: float
    g_max: float
    p_e: float
    singular_values: list[float]
    correlation_norm: float
    gamma: float
    delta: float
    eta: float
    x_vec: list[float]
    y_vec: list[float]
    x_norm: float
    y_norm: float
    beta_rank: int
    entangled: bool
    chsh_violated: bool
    generalized_violation: bool
    maximal_violation_residual: float
    purity: float
    settings_f: MeasurementSection
    settings_g: GSection


class OracleSection(_FiniteModel):
    seed: int
    restarts: int
    f_value: float
    f_delta: float
    f_iterations: int
    f_restart_index: int
    g_value: float
    g_delta: float
    g_iterations: int
    g_restart_index: int


class ShotTerm(_FiniteModel):
    term: str
    mean: float
    standard_error: float
    shots: int
    seed: int


class ShotSection(_FiniteModel):
    shots_per_term: int
    seed: int
    estimate: float
    standard_error: float
    analytic: float
    terms: list[ShotTerm]


class AnalysisDocument(_FiniteModel):
    """Documento completo de `analyze`."""

    tool_version: str
    seed: int
    input: StateSpec  # noqa: A003
    bloch: BlochSection
    report: ReportSection
    oracle: OracleSection | None = None
    shots: ShotSection | None = None


class SweepRow(_FiniteModel):
    """Una fila de `sweep`; `separable_per_cited_bound` sólo existe para Werner."""

    parameter: str
    value: float
    f_max: float
    g_max: float
    p_e: float
    beta_rank: int
    entangled: bool
    chsh_violated: bool
    separable_per_cited_bound: bool | None = None


class SimulationDocument(_FiniteModel):
    """Resultado de `simulate`: estimación por disparos frente al valor analítico."""

    tool_version: str
    input: StateSpec  # noqa: A003
    settings_source: str
    settings_f: MeasurementSection
    shots: ShotSection


class VerificationDocument(_FiniteModel):
    tool_version: str
    count: int
    seed: int
    tolerance: float
    identity_tolerance: float
    worst_f_delta: float
    worst_g_delta: float
    worst_identity_residual: float
    identity_checked: int
    passed: bool
    failures: list[dict[str, float | int | str]]
