import logging
import os
from pathlib import Path

from dotenv import load_dotenv

# Cargar el archivo .env desde la carpeta "instance" ANTES de definir la config
dotenv_path = Path(__file__).parent.parent / "instance/.env"
load_dotenv(dotenv_path)

logger = logging.getLogger(__name__)

_MAX_DEFAULT_THREADS = 8
_VALID_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return float(raw)
    except ValueError as e:
        message = f"La variable {name} debe ser un número real, se recibió '{raw}'."
        raise ValueError(message) from e


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError as e:
        message = f"La variable {name} debe ser un entero, se recibió '{raw}'."
        raise ValueError(message) from e


class Settings:
    """Carga y valida la configuración de chsh-meter desde variables de entorno."""

    # Constants for error messages
    INVALID_THREADS_ERROR = "CHSH_METER_THREADS debe ser un entero positivo."
    INVALID_LOG_LEVEL_ERROR = "CHSH_METER_LOG_LEVEL debe ser uno de: " + ", ".join(
        _VALID_LOG_LEVELS
    )
    INVALID_TOLERANCE_ERROR = "Las tolerancias numéricas deben ser positivas."
    INVALID_ORACLE_ERROR = (
        "CHSH_METER_ORACLE_RESTARTS y CHSH_METER_ORACLE_MAX_ITERATIONS deben ser positivos."
    )

    def __init__(self) -> None:
        # Paralelismo interno
        cpu_count = os.cpu_count() or 1
        self.CPU_COUNT: int = cpu_count
        self.THREADS: int = _env_int(
            "CHSH_METER_THREADS", min(cpu_count, _MAX_DEFAULT_THREADS)
        )

        # Logging
        self.LOG_LEVEL: str = os.getenv("CHSH_METER_LOG_LEVEL", "WARNING").upper()
        self.LOG_FILE: str | None = os.getenv("CHSH_METER_LOG_FILE") or None

        # Tolerancias
        self.VALIDATION_TOLERANCE: float = _env_float(
            "CHSH_METER_VALIDATION_TOLERANCE", 1e-10
        )
        self.CLASSIFICATION_THRESHOLD: float = _env_float(
            "CHSH_METER_CLASSIFICATION_THRESHOLD", 1e-9
        )
        self.RANK_TOLERANCE: float = _env_float("CHSH_METER_RANK_TOLERANCE", 1e-9)
        self.VERIFY_TOLERANCE: float = _env_float("CHSH_METER_VERIFY_TOLERANCE", 1e-7)

        # Oráculo de optimización
        self.ORACLE_RESTARTS: int = _env_int("CHSH_METER_ORACLE_RESTARTS", 64)
        self.ORACLE_MAX_ITERATIONS: int = _env_int("CHSH_METER_ORACLE_MAX_ITERATIONS", 500)
        self.ORACLE_CONVERGENCE_TOL: float = _env_float(
            "CHSH_METER_ORACLE_CONVERGENCE_TOL", 1e-12
        )

        self._validate()

    def _validate(self) -> None:
        """Valida que las configuraciones críticas sean coherentes."""
        if self.THREADS < 1:
            raise ValueError(self.INVALID_THREADS_ERROR)
        if self.LOG_LEVEL not in _VALID_LOG_LEVELS:
            raise ValueError(self.INVALID_LOG_LEVEL_ERROR)
        tolerances = (
            self.VALIDATION_TOLERANCE,
            self.CLASSIFICATION_THRESHOLD,
            self.RANK_TOLERANCE,
            self.VERIFY_TOLERANCE,
            self.ORACLE_CONVERGENCE_TOL,
        )
        if any(tol <= 0 for tol in tolerances):
            raise ValueError(self.INVALID_TOLERANCE_ERROR)
        if self.ORACLE_RESTARTS < 1 or self.ORACLE_MAX_ITERATIONS < 1:
            raise ValueError(self.INVALID_ORACLE_ERROR)

        if self.THREADS > self.CPU_COUNT:
            logger.warning(
                "CHSH_METER_THREADS=%s supera los %s núcleos disponibles.",
                self.THREADS,
                self.CPU_COUNT,
            )


# Instancia única y centralizada de la configuración
settings = Settings()
