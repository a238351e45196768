from enum import Enum
import math
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from pydantic_core import PydanticCustomError

from models.base import ComplexArray
from services.exceptions import InvalidInputError

_VALIDATION_ERROR_TYPE = "value_error"

_MISSING_PARAMS_ERROR = "La familia '{family}' requiere los parámetros: {missing}."
_UNEXPECTED_MATRIX_ERROR = "La familia '{family}' no admite una matriz explícita."
_MISSING_MATRIX_ERROR = "La familia 'explicit' requiere el campo 'matrix'."
_MATRIX_SHAPE_ERROR = "La matriz debe tener 4 filas de 4 entradas, se recibió {shape}."
_ENTRY_ERROR = "Cada entrada debe ser un número real o un par [re, im]."
_NOT_FINITE_ERROR = "Los valores deben ser finitos."
_VECTOR_LENGTH_ERROR = "Un vector de Bloch tiene 3 componentes, se recibieron {count}."
_UNREADABLE_FILE_ERROR = "No se pudo leer el archivo de estado '{path}': {reason}"
_INVALID_FILE_ERROR = "Archivo de estado '{path}' inválido:\n{details}"


class StateFamily(str, Enum):
    """Familias de estados que sabe construir `state_factory.build`."""

    BELL_PSI_PLUS = "bell_psi_plus"
    BELL_PSI_MINUS = "bell_psi_minus"
    BELL_PHI_PLUS = "bell_phi_plus"
    BELL_PHI_MINUS = "bell_phi_minus"
    PURE_01_10 = "pure_01_10"
    PURE_00_11 = "pure_00_11"
    WERNER = "werner"
    PRODUCT = "product"
    RANDOM_MIXED = "random_mixed"
    EXPLICIT = "explicit"

    @property
    def scalar_parameter(self) -> str | None:
        """Parámetro escalar que puede barrer `sweep`, si la familia tiene uno."""
        return {
            StateFamily.WERNER: "alpha",
            StateFamily.PURE_01_10: "k1",
            StateFamily.PURE_00_11: "k1",
        }.get(self)


_REQUIRED_PARAMS: dict[StateFamily, tuple[str, ...]] = {
    StateFamily.PURE_01_10: ("k1",),
    StateFamily.PURE_00_11: ("k1",),
    StateFamily.WERNER: ("alpha",),
    StateFamily.PRODUCT: ("u", "v"),
}


class StateParams(BaseModel):
    """Parámetros específicos de cada familia; los rangos físicos los valida el constructor."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    k1: float | None = None
    k2: float | None = None
    alpha: float | None = None
    u: list[float] | None = None
    v: list[float] | None = None
    seed: int | None = Field(None, ge=0, le=2**64 - 1)
    mixture_size: int | None = Field(None, ge=1, le=8)

    @field_validator("u", "v")
    @classmethod
    def validate_bloch_vector(cls, value: list[float] | None) -> list[float] | None:
        """Comprueba que el vector de Bloch tenga exactamente 3 componentes."""
        if value is not None and len(value) != 3:
            raise PydanticCustomError(
                _VALIDATION_ERROR_TYPE, _VECTOR_LENGTH_ERROR.format(count=len(value))
            )
        return value


def _parse_entry(entry: Any) -> list[float]:  # noqa: ANN401
    if isinstance(entry, bool):
        raise PydanticCustomError(_VALIDATION_ERROR_TYPE, _ENTRY_ERROR)
    if isinstance(entry, int | float):
        pair = [float(entry), 0.0]
    elif isinstance(entry, list | tuple) and len(entry) == 2:
        if any(isinstance(part, bool) or not isinstance(part, int | float) for part in entry):
            raise PydanticCustomError(_VALIDATION_ERROR_TYPE, _ENTRY_ERROR)
        pair = [float(entry[0]), float(entry[1])]
    else:
        raise PydanticCustomError(_VALIDATION_ERROR_TYPE, _ENTRY_ERROR)
    if not all(math.isfinite(part) for part in pair):
        raise PydanticCustomError(_VALIDATION_ERROR_TYPE, _NOT_FINITE_ERROR)
    return pair


class StateSpec(BaseModel):
    """Especificación de un estado tal como llega de un archivo JSON o de la CLI.

    Formatos admitidos:
        {"family": "werner", "params": {"alpha": 0.5}}
        {"matrix": [[[re, im], ...], ...]}   (4 filas x 4 entradas, base |00⟩..|11⟩)
    """

    model_config = ConfigDict(extra="forbid")

    family: StateFamily
    params: StateParams = Field(default_factory=StateParams)
    matrix: list[list[list[float]]] | None = None

    @model_validator(mode="before")
    @classmethod
    def default_family(cls, data: Any) -> Any:  # noqa: ANN401
        """Un documento con sólo `matrix` se interpreta como familia explícita."""
        if isinstance(data, dict) and "family" not in data and "matrix" in data:
            return {**data, "family": StateFamily.EXPLICIT.value}
        return data

    @field_validator("matrix", mode="before")
    @classmethod
    def validate_matrix(cls, value: Any) -> Any:  # noqa: ANN401
        """Normaliza la matriz a 4x4 pares [re, im] comprobando la forma."""
        if value is None:
            return value
        if isinstance(value, np.ndarray):
            value = [[[float(z.real), float(z.imag)] for z in row] for row in value]
        if not isinstance(value, list | tuple) or len(value) != 4:
            shape = (
                f"{len(value)} filas" if isinstance(value, list | tuple) else type(value).__name__
            )
            raise PydanticCustomError(
                _VALIDATION_ERROR_TYPE, _MATRIX_SHAPE_ERROR.format(shape=shape)
            )
        rows = []
        for row in value:
            if not isinstance(row, list | tuple) or len(row) != 4:
                size = len(row) if isinstance(row, list | tuple) else type(row).__name__
                raise PydanticCustomError(
                    _VALIDATION_ERROR_TYPE,
                    _MATRIX_SHAPE_ERROR.format(shape=f"una fila con {size} entradas"),
                )
            rows.append([_parse_entry(entry) for entry in row])
        return rows

    @model_validator(mode="after")
    def validate_family_params(self) -> "StateSpec":
        """Exige los parámetros (o la matriz) que necesita cada familia."""
        if self.family is StateFamily.EXPLICIT:
            if self.matrix is None:
                raise PydanticCustomError(_VALIDATION_ERROR_TYPE, _MISSING_MATRIX_ERROR)
            return self
        if self.matrix is not None:
            raise PydanticCustomError(
                _VALIDATION_ERROR_TYPE, _UNEXPECTED_MATRIX_ERROR.format(family=self.family.value)
            )
        required = _REQUIRED_PARAMS.get(self.family, ())
        missing = [name for name in required if getattr(self.params, name) is None]
        if missing:
            raise PydanticCustomError(
                _VALIDATION_ERROR_TYPE,
                _MISSING_PARAMS_ERROR.format(family=self.family.value, missing=", ".join(missing)),
            )
        return self

    def complex_matrix(self) -> ComplexArray:
        """Matriz explícita como arreglo complejo 4x4."""
        if self.matrix is None:
            raise InvalidInputError(_MISSING_MATRIX_ERROR)
        pairs = np.array(self.matrix, dtype=np.float64)
        return pairs[..., 0] + 1j * pairs[..., 1]


def load_state_spec(path: str | Path) -> StateSpec:
    """Lee y valida un archivo de estado JSON.

    Raises:
        InvalidInputError: si el archivo no se puede leer o no es un `StateSpec`
            válido; el mensaje incluye la línea o el campo afectados.
    """
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InvalidInputError(
            _UNREADABLE_FILE_ERROR.format(path=file_path, reason=e)
        ) from e
    try:
        return StateSpec.model_validate_json(text)
    except ValidationError as e:
        raise InvalidInputError(
            _INVALID_FILE_ERROR.format(path=file_path, details=format_validation_error(e))
        ) from e


def format_validation_error(error: ValidationError) -> str:
    """Una línea por error con la ruta del campo (`params.alpha: ...`)."""
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "documento"
        lines.append(f"  {location}: {item['msg']}")
    return "\n".join(lines)
