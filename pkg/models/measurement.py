"""Ajustes de medida de espín y el 9-vector T asociado."""

from dataclasses import dataclass
from typing import Any

import numpy as np

from models.base import UNIT_NORM_TOLERANCE, RealArray, readonly_real, vector_norm
from services.exceptions import InvalidSettingsError, ZeroVectorError

_NOT_UNIT_ERROR = "La dirección {name} debe ser unitaria (norma {norm:.15f})."
_ZERO_DIRECTION_ERROR = "La dirección {name} es el vector nulo."


def _unit_checked(name: str, values: Any) -> RealArray:  # noqa: ANN401
    vector = readonly_real(values, (3,))
    norm = vector_norm(vector)
    if abs(norm - 1.0) > UNIT_NORM_TOLERANCE:
        raise InvalidSettingsError(_NOT_UNIT_ERROR.format(name=name, norm=norm))
    return vector


def normalized(name: str, values: Any) -> RealArray:  # noqa: ANN401
    """Normaliza una dirección arbitraria; falla con `ZeroVectorError` si es nula."""
    vector = np.array(values, dtype=np.float64).reshape(3)
    norm = vector_norm(vector)
    if norm == 0.0 or not np.isfinite(norm):
        raise ZeroVectorError(_ZERO_DIRECTION_ERROR.format(name=name))
    return vector / norm


@dataclass(frozen=True, eq=False)
class MeasurementSettings:
    """Ejes n, n′ (partícula a) y m, m′ (partícula b) de una medida CHSH."""

    n: RealArray
    n_prime: RealArray
    m: RealArray
    m_prime: RealArray

    def __post_init__(self) -> None:
        for name in ("n", "n_prime", "m", "m_prime"):
            object.__setattr__(self, name, _unit_checked(name, getattr(self, name)))

    @classmethod
    def from_directions(
        cls,
        n: Any,  # noqa: ANN401
        n_prime: Any,  # noqa: ANN401
        m: Any,  # noqa: ANN401
        m_prime: Any,  # noqa: ANN401
    ) -> "MeasurementSettings":
        """Construye los ajustes normalizando cada dirección."""
        return cls(
            n=normalized("n", n),
            n_prime=normalized("n_prime", n_prime),
            m=normalized("m", m),
            m_prime=normalized("m_prime", m_prime),
        )

    def as_dict(self) -> dict[str, list[float]]:
        return {
            "n": self.n.tolist(),
            "n_prime": self.n_prime.tolist(),
            "m": self.m.tolist(),
            "m_prime": self.m_prime.tolist(),
        }


@dataclass(frozen=True, eq=False)
class GSettings:
    """Ejes l, h de la funcional G = 2E(C, D)."""

    l: RealArray  # noqa: E741
    h: RealArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "l", _unit_checked("l", self.l))
        object.__setattr__(self, "h", _unit_checked("h", self.h))

    @classmethod
    def from_directions(cls, l: Any, h: Any) -> "GSettings":  # noqa: ANN401, E741
        return cls(l=normalized("l", l), h=normalized("h", h))

    def as_dict(self) -> dict[str, list[float]]:
        return {"l": self.l.tolist(), "h": self.h.tolist()}


@dataclass(frozen=True, eq=False)
class TVector:
    """9-vector T_ij (orden por filas); también sirve para el vector D de G."""

    t: RealArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", readonly_real(self.t, (9,)))

    @property
    def matrix(self) -> RealArray:
        return self.t.reshape(3, 3)

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.t * self.t)))
