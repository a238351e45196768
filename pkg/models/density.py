"""Modelos de estado: matriz densidad de dos qubits y su descomposición de Bloch.

Convención de base (fija): |00⟩, |01⟩, |10⟩, |11⟩ ocupan los índices 0..3 y el
primer ket corresponde a la partícula a.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from models.base import ComplexArray, RealArray, readonly_complex, readonly_real, vector_norm
from services.exceptions import DimensionError, InvalidParameterError

BLOCH_NORM_SLACK = 1e-9
MAX_CORRELATION_NORM = math.sqrt(3.0)

_DENSITY_SHAPE_ERROR = "Una matriz densidad de dos qubits es 4x4, se recibió {shape}."
_BLOCH_NORM_ERROR = "El vector de Bloch {name} tiene norma {norm:.3e} > 1."
_CORRELATION_NORM_ERROR = "La matriz de correlación tiene norma {norm:.3e} > √3."


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Estado de dos qubits ya validado (hermítico, traza 1, semidefinido positivo).

    Se construye a través de `quantum_core.validate_density`.
    """

    matrix: ComplexArray

    def __post_init__(self) -> None:
        matrix = readonly_complex(self.matrix)
        if matrix.shape != (4, 4):
            raise DimensionError(_DENSITY_SHAPE_ERROR.format(shape=matrix.shape))
        object.__setattr__(self, "matrix", matrix)

    def entries(self) -> list[list[tuple[float, float]]]:
        """Entradas como pares (re, im) en orden de filas, formato de los archivos JSON."""
        return [[(float(z.real), float(z.imag)) for z in row] for row in self.matrix]


@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    """Vectores de Bloch u, v y matriz de correlación β_M de un estado."""

    u: RealArray
    v: RealArray
    beta: RealArray
    correlation_vector: RealArray = field(init=False)

    def __post_init__(self) -> None:
        u = readonly_real(self.u, (3,))
        v = readonly_real(self.v, (3,))
        beta = readonly_real(self.beta, (3, 3))

        for name, vector in (("u", u), ("v", v)):
            norm = vector_norm(vector)
            if norm > 1.0 + BLOCH_NORM_SLACK:
                raise InvalidParameterError(_BLOCH_NORM_ERROR.format(name=name, norm=norm))
        beta_norm = float(np.sqrt(np.sum(beta * beta)))
        if beta_norm > MAX_CORRELATION_NORM + BLOCH_NORM_SLACK:
            raise InvalidParameterError(_CORRELATION_NORM_ERROR.format(norm=beta_norm))

        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "correlation_vector", readonly_real(beta.reshape(9), (9,)))

    @property
    def correlation_norm(self) -> float:
        """|β|, norma de Frobenius de β_M."""
        return float(np.sqrt(np.sum(self.beta * self.beta)))
