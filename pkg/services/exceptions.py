"""Excepciones del dominio de chsh-meter.

Cada excepción transporta el código de salida con el que la CLI debe terminar:
2 para entradas inválidas, 3 para estados no físicos y 1 para fallos internos
del oráculo.
"""

EXIT_FAILURE = 1
EXIT_INVALID_INPUT = 2
EXIT_UNPHYSICAL = 3


class AnalysisError(Exception):
    """Base exception for analysis errors."""

    exit_code = EXIT_INVALID_INPUT

    def __init__(self, message: str, exit_code: int | None = None):
        self.message = message
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(self.message)


# --- Estados no físicos (exit 3) ---


class UnphysicalStateError(AnalysisError):
    """La matriz no describe un estado cuántico de dos qubits."""

    exit_code = EXIT_UNPHYSICAL


class NotHermitianError(UnphysicalStateError):
    """La matriz no es hermítica dentro de la tolerancia."""


class TraceNotOneError(UnphysicalStateError):
    """La traza de la matriz se aleja de 1 más que la tolerancia."""


class NotPositiveError(UnphysicalStateError):
    """La matriz tiene un autovalor negativo por debajo de la tolerancia."""


# --- Entradas inválidas (exit 2) ---


class InvalidInputError(AnalysisError):
    """Parámetros o argumentos fuera de su dominio."""


class DimensionError(InvalidInputError):
    """Matriz con dimensión distinta de 2 o 4."""


class ZeroVectorError(InvalidInputError):
    """Vector nulo donde se esperaba una dirección o un estado."""


class NonFiniteValuesError(InvalidInputError):
    """Matriz o vector con entradas NaN o infinitas."""


class NotHermitianOperatorError(InvalidInputError):
    """Observable no hermítico."""


class InvalidSettingsError(InvalidInputError):
    """Direcciones de medida que no son vectores unitarios."""


class InvalidParameterError(InvalidInputError):
    """Parámetro de una familia de estados fuera de rango."""


class FactorizableStateError(InvalidInputError):
    """La fórmula del óptimo puro no está definida para k1·k2 = 0."""


class EmptyRangeError(InvalidInputError):
    """Rango de barrido sin puntos."""


class ResolutionTooHighError(InvalidInputError):
    """La malla del barrido exhaustivo supera el límite de evaluaciones."""


class DegenerateStateError(InvalidInputError):
    """La identidad geométrica no está definida cuando F_max es nulo."""


# --- Fallos internos (exit 1) ---


class OracleError(AnalysisError):
    """El ascenso alterno del oráculo perdió la monotonía."""

    exit_code = EXIT_FAILURE
