"""Aritmética de matrices de dos qubits: validación, estados puros, Pauli y trazas parciales.

Convención de base: |00⟩, |01⟩, |10⟩, |11⟩ → índices 0..3; el primer ket es la
partícula a.
"""

import logging
from typing import Any, Final, Literal

import numpy as np

from config.settings import settings
from models.base import ComplexArray, RealArray
from models.density import BlochDecomposition, DensityMatrix
from services.exceptions import (
    DimensionError,
    NonFiniteValuesError,
    NotHermitianError,
    NotHermitianOperatorError,
    NotPositiveError,
    TraceNotOneError,
    ZeroVectorError,
)
from services.linalg import hermitian_eigenvalues

logger: Final = logging.getLogger(__name__)

I2: Final = np.eye(2, dtype=np.complex128)
I4: Final = np.eye(4, dtype=np.complex128)
SIGMA_X: Final = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y: Final = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z: Final = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULI: Final = (SIGMA_X, SIGMA_Y, SIGMA_Z)

# PAULI_BASIS[i, j] = σ_i ⊗ σ_j con σ_0 = I₂
_SIGMAS = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)
PAULI_BASIS: Final = np.array([[np.kron(si, sj) for sj in _SIGMAS] for si in _SIGMAS])
for _operator in PAULI_BASIS.reshape(16, 4, 4):
    _operator.setflags(write=False)
PAULI_BASIS.setflags(write=False)

HERMITIAN_OPERATOR_TOL: Final = 1e-10
TRACE_EXACT_SLACK: Final = 16 * float(np.finfo(np.float64).eps)

# --- Mensajes de error ---
_DIMENSION_ERROR = "Se esperaba una matriz 2x2 o 4x4, se recibió forma {shape}."
_NOT_4X4_ERROR = "Se esperaba una matriz 4x4, se recibió forma {shape}."
_NOT_HERMITIAN_ERROR = (
    "La matriz no es hermítica: max|ρ_ij − conj(ρ_ji)| = {magnitude:.3e} > {bound:.1e}."
)
_TRACE_ERROR = "La traza no es 1: |Tr ρ − 1| = {magnitude:.3e} > {bound:.1e}."
_NOT_POSITIVE_ERROR = (
    "La matriz no es semidefinida positiva: autovalor mínimo {magnitude:.3e} < −{bound:.1e}."
)
_ZERO_VECTOR_ERROR = "El vector de amplitudes es nulo."
_NON_FINITE_ERROR = "{name} contiene entradas NaN o infinitas."
_AMPLITUDES_ERROR = "Se esperaban 4 amplitudes, se recibieron {count}."
_NOT_HERMITIAN_OPERATOR_ERROR = (
    "El observable no es hermítico: max|O_ij − conj(O_ji)| = {magnitude:.3e} > {bound:.1e}."
)
_PARTICLE_ERROR = "La partícula debe ser 'a' o 'b', se recibió '{particle}'."


def as_complex_matrix(entries: Any) -> ComplexArray:  # noqa: ANN401
    """Convierte `entries` en una matriz compleja 2x2 o 4x4 sin normalizarla."""
    matrix = np.array(entries, dtype=np.complex128)
    if matrix.shape not in ((2, 2), (4, 4)):
        raise DimensionError(_DIMENSION_ERROR.format(shape=matrix.shape))
    return matrix


def _hermiticity_defect(matrix: ComplexArray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def validate_density(
    matrix: Any,  # noqa: ANN401
    tolerance: float | None = None,
) -> DensityMatrix:
    """Valida una matriz 4x4 como estado de dos qubits.

    La matriz se simetriza (ρ ← (ρ + ρ†)/2) antes de comprobar la traza y la
    positividad, y la traza se renormaliza a 1 cuando está dentro de tolerancia.
    Una traza a menos de 16 ulp de 1 se deja intacta, así que validar de nuevo
    un estado ya validado devuelve exactamente la misma matriz.

    Args:
        matrix: Entradas 4x4 (cualquier cosa convertible a arreglo complejo).
        tolerance: Tolerancia de las tres comprobaciones; por defecto la de settings.

    Returns:
        El estado validado.

    Raises:
        NotHermitianError, TraceNotOneError, NotPositiveError: con la cota violada
        y su magnitud.
        NonFiniteValuesError: si alguna entrada es NaN o infinita.
    """
    bound = settings.VALIDATION_TOLERANCE if tolerance is None else tolerance
    rho = as_complex_matrix(matrix)
    if rho.shape != (4, 4):
        raise DimensionError(_NOT_4X4_ERROR.format(shape=rho.shape))
    if not np.all(np.isfinite(rho)):
        raise NonFiniteValuesError(_NON_FINITE_ERROR.format(name="La matriz densidad"))

    defect = _hermiticity_defect(rho)
    if defect > bound:
        raise NotHermitianError(_NOT_HERMITIAN_ERROR.format(magnitude=defect, bound=bound))
    rho = (rho + rho.conj().T) / 2

    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > bound:
        raise TraceNotOneError(_TRACE_ERROR.format(magnitude=abs(trace - 1.0), bound=bound))
    if abs(trace - 1.0) > TRACE_EXACT_SLACK:
        rho = rho / trace

    smallest = float(hermitian_eigenvalues(rho)[0])
    if smallest < -bound:
        raise NotPositiveError(_NOT_POSITIVE_ERROR.format(magnitude=smallest, bound=bound))

    return DensityMatrix(matrix=rho)


def pure_density(amplitudes: Any) -> DensityMatrix:  # noqa: ANN401
    """Construye |ψ⟩⟨ψ| a partir de 4 amplitudes (se normalizan)."""
    psi = np.array(amplitudes, dtype=np.complex128).reshape(-1)
    if psi.shape != (4,):
        raise DimensionError(_AMPLITUDES_ERROR.format(count=psi.size))
    if not np.all(np.isfinite(psi)):
        raise NonFiniteValuesError(_NON_FINITE_ERROR.format(name="El vector de amplitudes"))
    norm = float(np.sqrt(np.sum(np.abs(psi) ** 2)))
    if norm == 0.0:
        raise ZeroVectorError(_ZERO_VECTOR_ERROR)
    psi = psi / norm
    return validate_density(np.outer(psi, psi.conj()))


def decompose_bloch(rho: DensityMatrix) -> BlochDecomposition:
    """Descompone ρ en la base de Pauli.

    u_i = Tr[ρ(σ_i⊗I)], v_j = Tr[ρ(I⊗σ_j)], β_ij = Tr[ρ(σ_i⊗σ_j)].
    """
    # Tr[ρ·P] = Σ_ab ρ_ab P_ba
    coefficients = np.einsum("ab,ijba->ij", rho.matrix, PAULI_BASIS).real
    return BlochDecomposition(
        u=coefficients[1:, 0],
        v=coefficients[0, 1:],
        beta=coefficients[1:, 1:],
    )


def assemble_density(d: BlochDecomposition) -> ComplexArray:
    """¼(I⊗I + u·σ⊗I + I⊗v·σ + Σ β_ij σ_i⊗σ_j), sin validar."""
    coefficients = np.zeros((4, 4))
    coefficients[0, 0] = 1.0
    coefficients[1:, 0] = d.u
    coefficients[0, 1:] = d.v
    coefficients[1:, 1:] = d.beta
    return np.einsum("ij,ijab->ab", coefficients, PAULI_BASIS) / 4


def reconstruct_density(d: BlochDecomposition, tolerance: float | None = None) -> DensityMatrix:
    """Ensambla ρ desde (u, v, β) y comprueba que sea físico.

    Raises:
        NotPositiveError: si la terna no corresponde a ningún estado.
    """
    return validate_density(assemble_density(d), tolerance)


def reduced_state(rho: DensityMatrix, particle: Literal["a", "b"]) -> ComplexArray:
    """Traza parcial sobre la otra partícula; devuelve ρ_a o ρ_b (2x2)."""
    tensor = rho.matrix.reshape(2, 2, 2, 2)
    if particle == "a":
        return np.einsum("ijkj->ik", tensor)
    if particle == "b":
        return np.einsum("ijil->jl", tensor)
    raise ValueError(_PARTICLE_ERROR.format(particle=particle))


def operator_expectation(rho: DensityMatrix, op: Any) -> float:  # noqa: ANN401
    """Tr[ρ·op] para un observable hermítico 4x4."""
    operator = as_complex_matrix(op)
    if operator.shape != (4, 4):
        raise DimensionError(_NOT_4X4_ERROR.format(shape=operator.shape))
    defect = _hermiticity_defect(operator)
    if defect > HERMITIAN_OPERATOR_TOL:
        raise NotHermitianOperatorError(
            _NOT_HERMITIAN_OPERATOR_ERROR.format(magnitude=defect, bound=HERMITIAN_OPERATOR_TOL)
        )
    value = np.trace(rho.matrix @ operator)
    if abs(value.imag) > HERMITIAN_OPERATOR_TOL:
        logger.warning("Residuo imaginario %.3e en Tr[ρ·O]", value.imag)
    return float(value.real)


def purity(rho: DensityMatrix) -> float:
    """Tr(ρ²) ∈ [¼, 1]."""
    return float(np.trace(rho.matrix @ rho.matrix).real)


def spin_operator(direction: RealArray) -> ComplexArray:
    """σ·n para una dirección real de 3 componentes."""
    return direction[0] * SIGMA_X + direction[1] * SIGMA_Y + direction[2] * SIGMA_Z
