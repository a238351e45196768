"""Motor analítico CHSH: máximos F y G, grado de entrelazamiento y geometría óptima.

Todo se deriva de los valores singulares s1 ≥ s2 ≥ s3 de la matriz de
correlación β_M:

- F_max = 2√(s1² + s2²), con ajustes construidos desde los vectores singulares.
- G_max = 2·s1, con el par singular dominante.
- P_E = √((F_max/2)² − (G_max/2)²), que coincide con s2.
"""

import logging
import math
from typing import Final

import numpy as np

from config.settings import settings
from models.base import ComplexArray, RealArray
from models.density import BlochDecomposition, DensityMatrix
from models.measurement import GSettings, MeasurementSettings, TVector
from models.report import (
    CHSH_CLASSICAL_BOUND,
    ChshReport,
    IdentityResiduals,
    InequalityReport,
    SingularValueDecomposition,
)
from services.exceptions import DegenerateStateError
from services.linalg import svd_3x3
from services.quantum_core import decompose_bloch, spin_operator

logger: Final = logging.getLogger(__name__)

DEGENERATE_F_MAX: Final = 1e-12
GENERALIZED_VIOLATION_SLACK: Final = 1e-9

_E1: Final = np.array([1.0, 0.0, 0.0])
_E2: Final = np.array([0.0, 1.0, 0.0])

_DEGENERATE_ERROR = (
    "La identidad |X||Y| = 4·G_max·P_E/F_max² no está definida: "
    "F_max = {f_max:.3e} ≤ {bound:.0e}."
)


def t_vector(s: MeasurementSettings) -> TVector:
    """T_ij = (n_i + n′_i)·m_j + (n_i − n′_i)·m′_j, de norma 2."""
    t = np.outer(s.n + s.n_prime, s.m) + np.outer(s.n - s.n_prime, s.m_prime)
    return TVector(t=t.reshape(9))


def d_vector(s: GSettings) -> TVector:
    """D_ij = 2·l_i·h_j, el análogo de T para la funcional G."""
    return TVector(t=(2.0 * np.outer(s.l, s.h)).reshape(9))


def chsh_value(d: BlochDecomposition, s: MeasurementSettings) -> float:
    """F = β·T, producto escalar de dos 9-vectores."""
    return float(d.correlation_vector @ t_vector(s).t)


def chsh_operator(s: MeasurementSettings) -> ComplexArray:
    """Operador A⊗B + A⊗B′ + A′⊗B − A′⊗B′ con A = σ·n, B = σ·m."""
    a = spin_operator(s.n)
    a_prime = spin_operator(s.n_prime)
    b = spin_operator(s.m)
    b_prime = spin_operator(s.m_prime)
    return np.kron(a, b) + np.kron(a, b_prime) + np.kron(a_prime, b) - np.kron(a_prime, b_prime)


def g_value(d: BlochDecomposition, s: GSettings) -> float:
    """G = 2·lᵀ β_M h."""
    return float(2.0 * (s.l @ d.beta @ s.h))


def singular_values_3x3(beta_m: RealArray) -> SingularValueDecomposition:
    """Valores singulares descendentes y triadas singulares de β_M.

    Los signos cumplen â_iᵀ β_M b̂_i = s_i.
    """
    return svd_3x3(beta_m)


def _f_max_from_svd(svd: SingularValueDecomposition) -> tuple[float, MeasurementSettings]:
    s1, s2 = float(svd.values[0]), float(svd.values[1])
    if s1 == 0.0:
        # β = 0: cualquier ajuste es óptimo
        return 0.0, MeasurementSettings(n=_E1, n_prime=_E2, m=_E1, m_prime=_E2)

    theta = math.atan2(s2, s1)
    a1, a2 = svd.left[:, 0], svd.left[:, 1]
    b1, b2 = svd.right[:, 0], svd.right[:, 1]
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    optimal = MeasurementSettings.from_directions(
        n=a1,
        n_prime=a2,
        m=cos_t * b1 + sin_t * b2,
        m_prime=cos_t * b1 - sin_t * b2,
    )
    return 2.0 * math.hypot(s1, s2), optimal


def _g_max_from_svd(svd: SingularValueDecomposition) -> tuple[float, GSettings]:
    s1 = float(svd.values[0])
    if s1 == 0.0:
        return 0.0, GSettings(l=_E1, h=_E1)
    return 2.0 * s1, GSettings.from_directions(l=svd.left[:, 0], h=svd.right[:, 0])


def _degree_from_maxima(f_max: float, g_max: float) -> float:
    # (f/2)² − (g/2)² factorizado para no perder precisión cuando f ≈ g
    half_f, half_g = f_max / 2.0, g_max / 2.0
    return math.sqrt(max(0.0, (half_f - half_g) * (half_f + half_g)))


def f_max_analytic(d: BlochDecomposition) -> tuple[float, MeasurementSettings]:
    """Máximo de F y unos ajustes que lo alcanzan.

    n = â1, n′ = â2, m = cosθ·b̂1 + sinθ·b̂2, m′ = cosθ·b̂1 − sinθ·b̂2 con
    tanθ = s2/s1. Si β = 0 devuelve 0 con los ejes canónicos (ê1, ê2, ê1, ê2).
    """
    return _f_max_from_svd(singular_values_3x3(d.beta))


def g_max_analytic(d: BlochDecomposition) -> tuple[float, GSettings]:
    """Máximo de G = 2·s1 con l, h el par singular dominante (ê1, ê1 si β = 0)."""
    return _g_max_from_svd(singular_values_3x3(d.beta))


def entanglement_degree(d: BlochDecomposition) -> float:
    """P_E = √((F_max/2)² − (G_max/2)²)."""
    svd = singular_values_3x3(d.beta)
    f_max, _ = _f_max_from_svd(svd)
    g_max, _ = _g_max_from_svd(svd)
    return _degree_from_maxima(f_max, g_max)


def commutator_vectors(s: MeasurementSettings) -> tuple[RealArray, RealArray]:
    """Ejes de los conmutadores: [A, A′] = 2i σ·(n × n′), [B, B′] = 2i σ·(m × m′)."""
    return np.cross(s.n, s.n_prime), np.cross(s.m, s.m_prime)


def _angle_between(first: TVector, second: TVector) -> float:
    # 2·atan2(|â − b̂|, |â + b̂|) conserva la precisión en ángulos cercanos a 0 y a π
    a = first.t / first.norm
    b = second.t / second.norm
    return 2.0 * math.atan2(float(np.linalg.norm(a - b)), float(np.linalg.norm(a + b)))


def geometric_identity(report: ChshReport) -> IdentityResiduals:
    """Residuos de |X||Y| = 4·G_max·P_E/F_max² = sin(2η).

    Raises:
        DegenerateStateError: si F_max ≤ 1e-12.
    """
    if report.f_max <= DEGENERATE_F_MAX:
        raise DegenerateStateError(
            _DEGENERATE_ERROR.format(f_max=report.f_max, bound=DEGENERATE_F_MAX)
        )
    product = report.x_norm * report.y_norm
    ratio = 4.0 * report.g_max * report.p_e / report.f_max**2
    return IdentityResiduals(
        commutator_product=product,
        r1=abs(product - ratio),
        r2=abs(product - math.sin(2.0 * report.eta)),
    )


def _rank_from_values(values: RealArray, tolerance: float) -> int:
    scale = float(values[0])
    cutoff = tolerance * scale if scale > 0.0 else tolerance
    return int(np.count_nonzero(values > cutoff))


def correlation_rank(beta_m: RealArray, tolerance: float | None = None) -> int:
    """Rango numérico de β_M: valores singulares > tolerancia·s1 (absoluta si s1 = 0)."""
    tol = settings.RANK_TOLERANCE if tolerance is None else tolerance
    return _rank_from_values(singular_values_3x3(beta_m).values, tol)


def classify(rho: DensityMatrix, threshold: float | None = None) -> ChshReport:
    """Informe completo de un estado.

    entangled = P_E > umbral (1e-9 por defecto); el informe lleva además el rango
    de β_M y los vectores de conmutador para contrastar ambos criterios.

    Args:
        rho: Estado validado.
        threshold: Umbral de clasificación sobre P_E.

    Returns:
        El `ChshReport` con máximos, ángulos y ajustes óptimos.
    """
    limit = settings.CLASSIFICATION_THRESHOLD if threshold is None else threshold
    d = decompose_bloch(rho)
    svd = singular_values_3x3(d.beta)
    f_max, settings_f = _f_max_from_svd(svd)
    g_max, settings_g = _g_max_from_svd(svd)
    p_e = _degree_from_maxima(f_max, g_max)

    beta_norm = d.correlation_norm
    if beta_norm > 0.0:
        gamma = math.acos(min(1.0, f_max / (2.0 * beta_norm)))
        delta = math.acos(min(1.0, g_max / (2.0 * beta_norm)))
    else:
        gamma = delta = math.pi / 2

    x_vec, y_vec = commutator_vectors(settings_f)
    beta_rank = _rank_from_values(svd.values, settings.RANK_TOLERANCE)

    report = ChshReport(
        f_max=f_max,
        g_max=g_max,
        p_e=p_e,
        singular_values=(float(svd.values[0]), float(svd.values[1]), float(svd.values[2])),
        correlation_norm=beta_norm,
        gamma=gamma,
        delta=delta,
        eta=_angle_between(t_vector(settings_f), d_vector(settings_g)),
        x_vec=x_vec,
        y_vec=y_vec,
        beta_rank=beta_rank,
        entangled=p_e > limit,
        settings_f=settings_f,
        settings_g=settings_g,
    )
    logger.debug(
        "Clasificación: F_max=%.12g G_max=%.12g P_E=%.12g rango=%s",
        f_max,
        g_max,
        p_e,
        beta_rank,
    )
    return report


def inequality_report(rho: DensityMatrix) -> InequalityReport:
    """Desigualdad generalizada F ≤ |G_max| y la identidad de violación máxima."""
    d = decompose_bloch(rho)
    svd = singular_values_3x3(d.beta)
    f_max, _ = _f_max_from_svd(svd)
    g_max, _ = _g_max_from_svd(svd)
    p_e = _degree_from_maxima(f_max, g_max)
    residual = abs(f_max - 2.0 * math.sqrt((g_max / 2.0) ** 2 + p_e**2))
    return InequalityReport(
        f_max=f_max,
        g_max=g_max,
        p_e=p_e,
        violation=f_max > g_max + GENERALIZED_VIOLATION_SLACK,
        maximal_violation_residual=residual,
        chsh_violated=f_max > CHSH_CLASSICAL_BOUND,
    )
