"""Resultados del motor CHSH."""

from dataclasses import dataclass

import numpy as np

from models.base import RealArray, readonly_real, vector_norm
from models.measurement import GSettings, MeasurementSettings

CHSH_CLASSICAL_BOUND = 2.0


@dataclass(frozen=True, eq=False)
class SingularValueDecomposition:
    """β_M = U·diag(s)·Vᵀ con s1 ≥ s2 ≥ s3 ≥ 0.

    Las columnas de `left` (â_i) y `right` (b̂_i) tienen el signo elegido para que
    â_iᵀ β_M b̂_i = s_i.
    """

    values: RealArray
    left: RealArray
    right: RealArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", readonly_real(self.values, (3,)))
        object.__setattr__(self, "left", readonly_real(self.left, (3, 3)))
        object.__setattr__(self, "right", readonly_real(self.right, (3, 3)))

    def reconstruct(self) -> RealArray:
        return self.left @ np.diag(self.values) @ self.right.T


@dataclass(frozen=True, eq=False)
class ChshReport:
    """Informe completo de un estado: máximos F y G, grado P_E y geometría óptima."""

    f_max: float
    g_max: float
    p_e: float
    singular_values: tuple[float, float, float]
    correlation_norm: float
    gamma: float
    delta: float
    eta: float
    x_vec: RealArray
    y_vec: RealArray
    beta_rank: int
    entangled: bool
    settings_f: MeasurementSettings
    settings_g: GSettings

    def __post_init__(self) -> None:
        object.__setattr__(self, "x_vec", readonly_real(self.x_vec, (3,)))
        object.__setattr__(self, "y_vec", readonly_real(self.y_vec, (3,)))

    @property
    def x_norm(self) -> float:
        return vector_norm(self.x_vec)

    @property
    def y_norm(self) -> float:
        return vector_norm(self.y_vec)

    @property
    def chsh_violated(self) -> bool:
        """Violación de la desigualdad CHSH estándar |F| ≤ 2."""
        return self.f_max > CHSH_CLASSICAL_BOUND


@dataclass(frozen=True)
class IdentityResiduals:
    """Residuos de |X||Y| = 4·G_max·P_E/F_max² = sin(2η)."""

    commutator_product: float
    r1: float
    r2: float


@dataclass(frozen=True)
class InequalityReport:
    """Desigualdad generalizada -|G_max| ≤ F ≤ |G_max| y su violación máxima."""

    f_max: float
    g_max: float
    p_e: float
    violation: bool
    maximal_violation_residual: float
    chsh_violated: bool
