"""Utilidades comunes a los modelos del dominio.

Los modelos numéricos son dataclasses congeladas que guardan copias de sólo
lectura de sus arreglos de numpy.
"""

from typing import Any, TypeAlias

import numpy as np
import numpy.typing as npt

RealArray: TypeAlias = npt.NDArray[np.float64]
ComplexArray: TypeAlias = npt.NDArray[np.complex128]

UNIT_NORM_TOLERANCE = 1e-12


def readonly_real(values: Any, shape: tuple[int, ...]) -> RealArray:  # noqa: ANN401
    """Copia `values` como arreglo real de sólo lectura con la forma exigida."""
    array = np.array(values, dtype=np.float64, copy=True)
    if array.shape != shape:
        message = f"Se esperaba un arreglo de forma {shape}, se recibió {array.shape}."
        raise ValueError(message)
    array.setflags(write=False)
    return array


def readonly_complex(values: Any) -> ComplexArray:  # noqa: ANN401
    """Copia `values` como arreglo complejo de sólo lectura."""
    array = np.array(values, dtype=np.complex128, copy=True)
    array.setflags(write=False)
    return array


def vector_norm(vector: RealArray) -> float:
    """Norma euclídea de un 3-vector."""
    return float(np.sqrt(vector[0] ** 2 + vector[1] ** 2 + vector[2] ** 2))
