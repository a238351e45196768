"""Estimaciones de Monte Carlo con número finito de disparos."""

from dataclasses import dataclass


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilidades conjuntas p(a, b) de los resultados ±1 de ambos lados."""

    pp: float
    pm: float
    mp: float
    mm: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.pp, self.pm, self.mp, self.mm)

    @property
    def correlation(self) -> float:
        """E(A, B) = Σ ab·p(a, b)."""
        return self.pp - self.pm - self.mp + self.mm


@dataclass(frozen=True)
class ShotEstimate:
    mean: float
    shots: int
    standard_error: float
    seed: int


@dataclass(frozen=True)
class ChshEstimate:
    """Estimación de F = Ê(A,B) + Ê(A,B′) + Ê(A′,B) − Ê(A′,B′)."""

    estimate: float
    standard_error: float
    terms: tuple[ShotEstimate, ShotEstimate, ShotEstimate, ShotEstimate]
