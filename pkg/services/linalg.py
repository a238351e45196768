"""Núcleos de Jacobi para matrices pequeñas de tamaño fijo.

- `hermitian_eigh`: Jacobi cíclico complejo para matrices hermíticas 2x2 / 4x4.
- `svd_3x3`: Jacobi de un solo lado (Hestenes) para la matriz de correlación 3x3.

Ambos paran cuando la masa fuera de la diagonal baja de 1e-14.
"""

import logging
import math

import numpy as np

from models.base import ComplexArray, RealArray
from models.report import SingularValueDecomposition

logger = logging.getLogger(__name__)

OFF_DIAGONAL_TOL = 1e-14
MAX_SWEEPS = 60


def _off_diagonal_mass(matrix: ComplexArray) -> float:
    off = matrix - np.diag(np.diag(matrix))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eigh(matrix: ComplexArray) -> tuple[RealArray, ComplexArray]:
    """Autovalores (ascendentes) y autovectores de una matriz hermítica pequeña.

    Cada rotación primero quita la fase del elemento (p, q) y después aplica
    una rotación de Jacobi real que lo anula.

    Args:
        matrix: Matriz hermítica n x n.

    Returns:
        (autovalores ordenados, matriz unitaria con los autovectores en columnas).
    """
    a = np.array(matrix, dtype=np.complex128)
    a = (a + a.conj().T) / 2
    size = a.shape[0]
    vectors = np.eye(size, dtype=np.complex128)
    scale = max(float(np.sqrt(np.sum(np.abs(a) ** 2))), 1.0)

    for sweep in range(MAX_SWEEPS):
        if _off_diagonal_mass(a) < OFF_DIAGONAL_TOL * scale:
            logger.debug("Jacobi hermítico convergió en %s barridos", sweep)
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                g = a[p, q]
                magnitude = abs(g)
                if magnitude < 1e-300:
                    continue
                phase = g / magnitude
                tau = (a[q, q].real - a[p, p].real) / (2.0 * magnitude)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                rotation = np.eye(size, dtype=np.complex128)
                rotation[p, p] = c
                rotation[q, q] = c
                rotation[p, q] = s * phase
                rotation[q, p] = -s * np.conj(phase)
                a = rotation.conj().T @ a @ rotation
                vectors = vectors @ rotation
    else:
        logger.debug(
            "Jacobi hermítico sin converger tras %s barridos (masa %.3e)",
            MAX_SWEEPS,
            _off_diagonal_mass(a),
        )

    values = np.real(np.diag(a))
    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]


def hermitian_eigenvalues(matrix: ComplexArray) -> RealArray:
    """Autovalores ascendentes de una matriz hermítica pequeña."""
    values, _ = hermitian_eigh(matrix)
    return values


def _complete_basis(columns: list[RealArray]) -> list[RealArray]:
    """Completa un conjunto ortonormal de 3-vectores hasta una base de R³.

    El segundo vector parte del eje canónico con menor componente sobre el
    primero y se ortogonaliza dos veces; el tercero es el producto vectorial.
    """
    basis = list(columns)
    if not basis:
        return list(np.eye(3))
    if len(basis) == 1:
        first = basis[0]
        vector = np.eye(3)[int(np.argmin(np.abs(first)))]
        for _ in range(2):
            vector = vector - float(first @ vector) * first
        basis.append(vector / math.sqrt(float(vector @ vector)))
    if len(basis) == 2:
        third = np.cross(basis[0], basis[1])
        basis.append(third / math.sqrt(float(third @ third)))
    return basis


def svd_3x3(matrix: RealArray) -> SingularValueDecomposition:
    """SVD de una matriz real 3x3 por Jacobi de un solo lado.

    Las columnas de A·V se ortogonalizan con rotaciones por la derecha; al
    converger, s_i = |(A·V)_i| y â_i = (A·V)_i / s_i.

    Args:
        matrix: Matriz real 3x3 con entradas finitas.

    Returns:
        La descomposición con valores singulares en orden descendente.
    """
    work = np.array(matrix, dtype=np.float64).reshape(3, 3).copy()
    right = np.eye(3)

    for sweep in range(MAX_SWEEPS):
        rotated = False
        for p in range(2):
            for q in range(p + 1, 3):
                alpha = float(work[:, p] @ work[:, p])
                beta = float(work[:, q] @ work[:, q])
                gamma = float(work[:, p] @ work[:, q])
                if gamma == 0.0 or abs(gamma) <= OFF_DIAGONAL_TOL * math.sqrt(alpha * beta):
                    continue
                rotated = True
                zeta = (beta - alpha) / (2.0 * gamma)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                col_p = work[:, p].copy()
                work[:, p] = c * col_p - s * work[:, q]
                work[:, q] = s * col_p + c * work[:, q]
                vec_p = right[:, p].copy()
                right[:, p] = c * vec_p - s * right[:, q]
                right[:, q] = s * vec_p + c * right[:, q]
        if not rotated:
            logger.debug("SVD de Jacobi convergió en %s barridos", sweep)
            break

    norms = np.sqrt(np.sum(work * work, axis=0))
    order = np.argsort(-norms, kind="stable")
    values = norms[order]
    right = right[:, order]
    work = work[:, order]

    scale = values[0]
    left_columns: list[RealArray] = []
    for index in range(3):
        if values[index] > 0.0 and values[index] > 1e-15 * scale:
            left_columns.append(work[:, index] / values[index])
        else:
            break
    left_columns = _complete_basis(left_columns)
    left = np.column_stack(left_columns)

    return SingularValueDecomposition(values=values, left=left, right=right)
