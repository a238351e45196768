"""Resultados de la verificación cruzada analítica frente al oráculo."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerificationFailure:
    """Una comprobación que superó su tolerancia en un estado concreto."""

    index: int
    seed: int
    check: str
    delta: float
    tolerance: float


@dataclass(frozen=True)
class VerificationSummary:
    count: int
    seed: int
    tolerance: float
    identity_tolerance: float
    worst_f_delta: float
    worst_g_delta: float
    worst_identity_residual: float
    identity_checked: int
    failures: tuple[VerificationFailure, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures
