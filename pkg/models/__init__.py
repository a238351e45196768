"""Tipos inmutables del dominio de dos qubits.

Convención de base: |00⟩, |01⟩, |10⟩, |11⟩ → índices 0..3, el primer ket es la
partícula a.
"""

from .density import BlochDecomposition, DensityMatrix
from .measurement import GSettings, MeasurementSettings, TVector
from .optimization import OptimizationResult, OptimizerConfig
from .report import ChshReport, IdentityResiduals, InequalityReport, SingularValueDecomposition
from .shots import ChshEstimate, OutcomeDistribution, ShotEstimate
from .verification import VerificationFailure, VerificationSummary

__all__ = [
    "BlochDecomposition",
    "ChshEstimate",
    "ChshReport",
    "DensityMatrix",
    "GSettings",
    "IdentityResiduals",
    "InequalityReport",
    "MeasurementSettings",
    "OptimizationResult",
    "OptimizerConfig",
    "OutcomeDistribution",
    "ShotEstimate",
    "SingularValueDecomposition",
    "TVector",
    "VerificationFailure",
    "VerificationSummary",
]
