"""Generadores aleatorios reproducibles basados en contador (Philox).

Cada consumidor pide un sub-flujo con `derive_generator(seed, stream, ...)`; el
resultado depende sólo de la semilla y de la ruta, nunca del orden de ejecución.
"""

import numpy as np
import numpy.typing as npt

from services.exceptions import InvalidParameterError

# Identificadores de sub-flujo
STREAM_RANDOM_STATE = 1
STREAM_ORACLE_F = 2
STREAM_ORACLE_G = 3
STREAM_SHOTS = 4
STREAM_ROTATION = 5
STREAM_VERIFY = 6

MAX_SEED = 2**64 - 1

_INVALID_SEED_ERROR = "La semilla debe ser un entero sin signo de 64 bits, se recibió {seed}."


def check_seed(seed: int) -> int:
    """Valida que la semilla sea un entero de 64 bits sin signo."""
    if isinstance(seed, bool) or not isinstance(seed, int | np.integer) or not (
        0 <= int(seed) <= MAX_SEED
    ):
        raise InvalidParameterError(_INVALID_SEED_ERROR.format(seed=seed))
    return int(seed)


def derive_generator(seed: int, *path: int) -> np.random.Generator:
    """Crea un generador Philox para la semilla y la ruta de sub-flujo dadas.

    Args:
        seed: Semilla de 64 bits.
        *path: Enteros no negativos que identifican el sub-flujo.

    Returns:
        Un `numpy.random.Generator` independiente para esa ruta.
    """
    sequence = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=tuple(path))
    return np.random.Generator(np.random.Philox(sequence))


def random_unit_vectors(rng: np.random.Generator, count: int) -> npt.NDArray[np.float64]:
    """Direcciones uniformes en la esfera: gaussianas de 3 componentes normalizadas."""
    samples = rng.standard_normal((count, 3))
    norms = np.sqrt(samples[:, 0] ** 2 + samples[:, 1] ** 2 + samples[:, 2] ** 2)
    # Probabilidad nula, pero evita dividir por cero
    norms[norms == 0.0] = 1.0
    samples[np.all(samples == 0.0, axis=1), 0] = 1.0
    return samples / norms[:, None]


def random_rotation(rng: np.random.Generator) -> npt.NDArray[np.float64]:
    """Rotación aleatoria de SO(3) por QR de una matriz gaussiana."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
