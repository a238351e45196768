"""Fixtures compartidas: estados de referencia y el runner de la CLI."""

import numpy as np
import pytest
from click.testing import CliRunner

from app import create_app
from services.quantum_core import I4, pure_density, validate_density
from services.state_factory import random_mixed

RANDOM_STATE_SEED = 2024


@pytest.fixture
def psi_plus():
    """(|01⟩ + |10⟩)/√2."""
    return pure_density([0.0, 1.0, 1.0, 0.0])


@pytest.fixture
def maximally_mixed():
    return validate_density(I4 / 4)


@pytest.fixture
def ket_00():
    return pure_density([1.0, 0.0, 0.0, 0.0])


@pytest.fixture(scope="session")
def random_states():
    """50 estados mixtos reproducibles."""
    return [random_mixed(RANDOM_STATE_SEED, index=i) for i in range(50)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def cli():
    return create_app()


@pytest.fixture
def runner():
    return CliRunner()
