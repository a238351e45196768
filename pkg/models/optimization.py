"""Configuración y resultados del oráculo de optimización por fuerza bruta."""

from dataclasses import dataclass

from config.settings import settings
from models.measurement import GSettings, MeasurementSettings
from services.exceptions import InvalidParameterError
from utils.rng import check_seed

_NOT_POSITIVE_ERROR = "El parámetro {name} del oráculo debe ser positivo, se recibió {value}."


@dataclass(frozen=True)
class OptimizerConfig:
    """Parámetros del ascenso alterno; la semilla fija todo el flujo de reinicios."""

    restarts: int = settings.ORACLE_RESTARTS
    max_iterations: int = settings.ORACLE_MAX_ITERATIONS
    convergence_tol: float = settings.ORACLE_CONVERGENCE_TOL
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("restarts", "max_iterations", "convergence_tol"):
            value = getattr(self, name)
            if value <= 0:
                raise InvalidParameterError(_NOT_POSITIVE_ERROR.format(name=name, value=value))
        check_seed(self.seed)


@dataclass(frozen=True)
class OptimizationResult:
    """Mejor valor encontrado y los ajustes que lo alcanzan."""

    value: float
    settings: MeasurementSettings | GSettings
    iterations_used: int
    restart_index_of_best: int
