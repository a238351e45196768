"""Constructores de las familias de estados y estados aleatorios reproducibles."""

import logging
import math
from typing import Any, Final

import numpy as np

from models.base import RealArray, vector_norm
from models.density import BlochDecomposition, DensityMatrix
from models.measurement import GSettings, MeasurementSettings, normalized
from services.exceptions import FactorizableStateError, InvalidParameterError
from services.quantum_core import (
    I2,
    I4,
    pure_density,
    reconstruct_density,
    spin_operator,
    validate_density,
)
from utils.rng import (
    STREAM_RANDOM_STATE,
    STREAM_ROTATION,
    check_seed,
    derive_generator,
    random_rotation,
)
from utils.validators import StateFamily, StateParams, StateSpec

logger: Final = logging.getLogger(__name__)

INV_SQRT2: Final = 1.0 / math.sqrt(2.0)
MIN_MIXTURE_SIZE: Final = 2
MAX_MIXTURE_SIZE: Final = 8
BLOCH_NORM_SLACK: Final = 1e-12

_BELL_AMPLITUDES: Final = {
    StateFamily.BELL_PSI_PLUS: (0.0, INV_SQRT2, INV_SQRT2, 0.0),
    StateFamily.BELL_PSI_MINUS: (0.0, INV_SQRT2, -INV_SQRT2, 0.0),
    StateFamily.BELL_PHI_PLUS: (INV_SQRT2, 0.0, 0.0, INV_SQRT2),
    StateFamily.BELL_PHI_MINUS: (INV_SQRT2, 0.0, 0.0, -INV_SQRT2),
}

_ALPHA_RANGE_ERROR = "El parámetro alpha de Werner debe estar en [0, 1], se recibió {alpha}."
_K1_RANGE_ERROR = "Sin k2, el parámetro k1 debe estar en [−1, 1], se recibió {k1}."
_ZERO_AMPLITUDES_ERROR = "Los coeficientes k1 = {k1} y k2 = {k2} no pueden ser ambos nulos."
_BLOCH_NORM_ERROR = "El vector de Bloch {name} tiene norma {norm:.6g} > 1."
_MIXTURE_SIZE_ERROR = "El tamaño de la mezcla debe estar entre 1 y {maximum}, se recibió {size}."
_FACTORIZABLE_ERROR = (
    "Los ajustes óptimos explícitos no están definidos para k1·k2 = 0 (k1 = {k1}, k2 = {k2})."
)
_EMBEDDING_ERROR = (
    "Los valores singulares deben ser no negativos y sumar como mucho 1, se recibió {values}."
)


def _pure_coefficients(params: StateParams) -> tuple[float, float]:
    """(k1, k2) normalizados; sin k2 se toma k2 = √(1 − k1²)."""
    k1 = float(params.k1 if params.k1 is not None else 0.0)
    if params.k2 is None:
        if abs(k1) > 1.0:
            raise InvalidParameterError(_K1_RANGE_ERROR.format(k1=k1))
        k2 = math.sqrt(max(0.0, 1.0 - k1 * k1))
    else:
        k2 = float(params.k2)
    norm = math.hypot(k1, k2)
    if norm == 0.0:
        raise InvalidParameterError(_ZERO_AMPLITUDES_ERROR.format(k1=k1, k2=k2))
    return k1 / norm, k2 / norm


def werner(alpha: float) -> DensityMatrix:
    """(1 − α)·I₄/4 + α·|ψ⁺⟩⟨ψ⁺| con α ∈ [0, 1]."""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidParameterError(_ALPHA_RANGE_ERROR.format(alpha=alpha))
    psi = np.array(_BELL_AMPLITUDES[StateFamily.BELL_PSI_PLUS], dtype=np.complex128)
    bell = np.outer(psi, psi.conj())
    return validate_density((1.0 - alpha) * I4 / 4 + alpha * bell)


def product(u: Any, v: Any) -> DensityMatrix:  # noqa: ANN401
    """ρ_a ⊗ ρ_b con ρ_a = (I + σ·u)/2 y ρ_b = (I + σ·v)/2."""
    vectors = {"u": np.array(u, dtype=np.float64), "v": np.array(v, dtype=np.float64)}
    for name, vector in vectors.items():
        norm = vector_norm(vector)
        if norm > 1.0 + BLOCH_NORM_SLACK:
            raise InvalidParameterError(_BLOCH_NORM_ERROR.format(name=name, norm=norm))
    rho_a = (I2 + spin_operator(vectors["u"])) / 2
    rho_b = (I2 + spin_operator(vectors["v"])) / 2
    return validate_density(np.kron(rho_a, rho_b))


def random_mixed(seed: int, mixture_size: int | None = None, index: int = 0) -> DensityMatrix:
    """Mezcla de r estados puros aleatorios con pesos uniformes sobre el símplex.

    Args:
        seed: Semilla de 64 bits.
        mixture_size: r entre 1 y 8; si falta se sortea entre 2 y 8.
        index: Índice del estado dentro de la secuencia de la semilla.

    Returns:
        Un estado validado, determinista para (seed, mixture_size, index).
    """
    rng = derive_generator(check_seed(seed), STREAM_RANDOM_STATE, index)
    size = (
        int(rng.integers(MIN_MIXTURE_SIZE, MAX_MIXTURE_SIZE + 1))
        if mixture_size is None
        else mixture_size
    )
    if not 1 <= size <= MAX_MIXTURE_SIZE:
        raise InvalidParameterError(
            _MIXTURE_SIZE_ERROR.format(maximum=MAX_MIXTURE_SIZE, size=size)
        )
    weights = rng.dirichlet(np.ones(size))
    amplitudes = rng.standard_normal((size, 4)) + 1j * rng.standard_normal((size, 4))
    amplitudes /= np.sqrt(np.sum(np.abs(amplitudes) ** 2, axis=1))[:, None]
    rho = np.einsum("k,ki,kj->ij", weights, amplitudes, amplitudes.conj())
    return validate_density(rho)


def build(spec: StateSpec) -> DensityMatrix:
    """Construye el estado validado que describe `spec`.

    Raises:
        InvalidParameterError: con la restricción violada (α fuera de [0, 1],
            vector de Bloch de norma > 1, ...).
    """
    family = spec.family
    params = spec.params
    if family in _BELL_AMPLITUDES:
        rho = pure_density(_BELL_AMPLITUDES[family])
    elif family is StateFamily.PURE_01_10:
        k1, k2 = _pure_coefficients(params)
        rho = pure_density([0.0, k1, k2, 0.0])
    elif family is StateFamily.PURE_00_11:
        k1, k2 = _pure_coefficients(params)
        rho = pure_density([k1, 0.0, 0.0, k2])
    elif family is StateFamily.WERNER:
        rho = werner(float(params.alpha if params.alpha is not None else 0.0))
    elif family is StateFamily.PRODUCT:
        rho = product(params.u, params.v)
    elif family is StateFamily.RANDOM_MIXED:
        rho = random_mixed(params.seed or 0, params.mixture_size)
    else:
        rho = validate_density(spec.complex_matrix())
    logger.info("Estado construido: familia %s", family.value)
    return rho


def paper_optimal_settings_pure(k1: float, k2: float) -> MeasurementSettings:
    """Ajustes óptimos explícitos para k1|01⟩ + k2|10⟩.

    Con K = 2|k1·k2| y c = (1 + K²)^(−1/2):
    n = (sign(k1·k2), 0, 0), n′ = (0, 0, −1), m = (K·c, 0, c), m′ = (K·c, 0, −c),
    que dan F = 2√(1 + K²).

    Raises:
        FactorizableStateError: si k1·k2 = 0.
    """
    norm = math.hypot(k1, k2)
    if k1 * k2 == 0.0 or norm == 0.0:
        raise FactorizableStateError(_FACTORIZABLE_ERROR.format(k1=k1, k2=k2))
    k1, k2 = k1 / norm, k2 / norm
    coupling = 2.0 * abs(k1 * k2)
    c = 1.0 / math.sqrt(1.0 + coupling * coupling)
    return MeasurementSettings.from_directions(
        n=[math.copysign(1.0, k1 * k2), 0.0, 0.0],
        n_prime=[0.0, 0.0, -1.0],
        m=[coupling * c, 0.0, c],
        m_prime=[coupling * c, 0.0, -c],
    )


def paper_optimal_g_settings_pure() -> GSettings:
    """l = ê3, h = −ê3: G = 2 para todo k1|01⟩ + k2|10⟩."""
    return GSettings(l=np.array([0.0, 0.0, 1.0]), h=np.array([0.0, 0.0, -1.0]))


def pure_state_correlation(k1: float, k2: float, n: Any, m: Any) -> float:  # noqa: ANN401
    """⟨n·σ ⊗ m·σ⟩ en k1|01⟩ + k2|10⟩: 2k1k2(n1m1 + n2m2) − n3m3."""
    norm = math.hypot(k1, k2)
    if norm == 0.0:
        raise InvalidParameterError(_ZERO_AMPLITUDES_ERROR.format(k1=k1, k2=k2))
    k1, k2 = k1 / norm, k2 / norm
    a = normalized("n", n)
    b = normalized("m", m)
    return float(2.0 * k1 * k2 * (a[0] * b[0] + a[1] * b[1]) - a[2] * b[2])


def random_local_rotations(seed: int, index: int = 0) -> tuple[RealArray, RealArray]:
    """Par (R_a, R_b) de rotaciones de SO(3) reproducibles."""
    rng = derive_generator(check_seed(seed), STREAM_ROTATION, index)
    return random_rotation(rng), random_rotation(rng)


def rotate_decomposition(
    d: BlochDecomposition, r_a: RealArray, r_b: RealArray
) -> BlochDecomposition:
    """Acción de una rotación local: u → R_a·u, v → R_b·v, β_M → R_a·β_M·R_bᵀ."""
    return BlochDecomposition(u=r_a @ d.u, v=r_b @ d.v, beta=r_a @ d.beta @ r_b.T)


def correlation_embedding(
    singular_values: tuple[float, float, float], seed: int, index: int = 0
) -> DensityMatrix:
    """Estado físico con u = v = 0 y β_M = R_a·diag(s)·R_bᵀ.

    Σ s_i ≤ 1 garantiza que el estado sea semidefinido positivo; el rango de β_M
    es el número de s_i no nulos.
    """
    values = np.array(singular_values, dtype=np.float64)
    if values.shape != (3,) or np.any(values < 0.0) or float(np.sum(values)) > 1.0:
        raise InvalidParameterError(_EMBEDDING_ERROR.format(values=singular_values))
    r_a, r_b = random_local_rotations(seed, index)
    d = BlochDecomposition(u=np.zeros(3), v=np.zeros(3), beta=r_a @ np.diag(values) @ r_b.T)
    return reconstruct_density(d)


def serialize_state(rho: DensityMatrix) -> dict[str, Any]:
    """Documento `{"matrix": ...}` que `build` vuelve a leer como familia explícita."""
    return {"matrix": [[list(pair) for pair in row] for row in rho.entries()]}


__all__ = [
    "build",
    "correlation_embedding",
    "paper_optimal_g_settings_pure",
    "paper_optimal_settings_pure",
    "product",
    "pure_state_correlation",
    "random_local_rotations",
    "random_mixed",
    "rotate_decomposition",
    "serialize_state",
    "werner",
]
