import math

import numpy as np
import pytest

from models.density import BlochDecomposition
from models.optimization import OptimizerConfig
from services.chsh_engine import chsh_value, f_max_analytic, g_max_analytic, g_value
from services.exceptions import (
    EXIT_FAILURE,
    InvalidParameterError,
    OracleError,
    ResolutionTooHighError,
)
from services.optimizer_oracle import grid_scan_f, maximize_f, maximize_g
from services.quantum_core import decompose_bloch, pure_density
from services.state_factory import product, werner

SQRT2 = math.sqrt(2.0)
ZERO = BlochDecomposition(u=np.zeros(3), v=np.zeros(3), beta=np.zeros((3, 3)))


@pytest.fixture
def bell(psi_plus):
    return decompose_bloch(psi_plus)


class TestMaximizeF:
    def test_bell_state(self, bell):
        assert maximize_f(bell).value == pytest.approx(2 * SQRT2, abs=1e-7)

    def test_zero_correlations(self):
        assert maximize_f(ZERO).value == 0.0

    def test_werner(self):
        assert maximize_f(decompose_bloch(werner(0.7))).value == pytest.approx(
            1.4 * SQRT2, abs=1e-7
        )

    def test_value_matches_settings(self, random_states):
        for rho in random_states[:10]:
            d = decompose_bloch(rho)
            result = maximize_f(d, OptimizerConfig(seed=3))
            assert chsh_value(d, result.settings) == pytest.approx(result.value, abs=1e-12)
            assert 0 <= result.restart_index_of_best < 64
            assert result.iterations_used >= 1

    def test_agrees_with_analytic_maximum(self, random_states):
        for rho in random_states:
            d = decompose_bloch(rho)
            assert abs(maximize_f(d).value - f_max_analytic(d)[0]) <= 1e-7

    def test_same_result_for_any_worker_count(self, random_states):
        d = decompose_bloch(random_states[0])
        cfg = OptimizerConfig(seed=99, restarts=37)
        serial = maximize_f(d, cfg, workers=1)
        for workers in (2, 4, 7):
            parallel = maximize_f(d, cfg, workers=workers)
            assert parallel.value == serial.value
            assert parallel.restart_index_of_best == serial.restart_index_of_best
            assert parallel.iterations_used == serial.iterations_used
            np.testing.assert_array_equal(parallel.settings.n, serial.settings.n)
            np.testing.assert_array_equal(parallel.settings.m_prime, serial.settings.m_prime)

    def test_seed_changes_restart_stream(self, bell):
        first = maximize_f(bell, OptimizerConfig(seed=1, restarts=4))
        second = maximize_f(bell, OptimizerConfig(seed=2, restarts=4))
        assert not np.array_equal(first.settings.n, second.settings.n)

    def test_monotone_violation_raises(self, bell, mocker):
        restarts = 4
        mocker.patch(
            "services.optimizer_oracle._f_value",
            side_effect=[np.ones(restarts), np.zeros(restarts)],
        )
        with pytest.raises(OracleError) as excinfo:
            maximize_f(bell, OptimizerConfig(restarts=restarts), workers=1)
        assert excinfo.value.exit_code == EXIT_FAILURE

    def test_invalid_worker_count(self, bell):
        with pytest.raises(InvalidParameterError):
            maximize_f(bell, workers=0)


class TestMaximizeG:
    @pytest.mark.parametrize("k1", [0.2, 1 / SQRT2, 0.95])
    def test_pure_states(self, k1):
        k2 = math.sqrt(1 - k1 * k1)
        d = decompose_bloch(pure_density([0.0, k1, k2, 0.0]))
        assert maximize_g(d).value == pytest.approx(2.0, abs=1e-7)

    def test_werner(self):
        assert maximize_g(decompose_bloch(werner(0.4))).value == pytest.approx(0.8, abs=1e-7)

    def test_zero_correlations(self):
        assert maximize_g(ZERO).value == 0.0

    def test_agrees_with_analytic_maximum(self, random_states):
        for rho in random_states:
            d = decompose_bloch(rho)
            result = maximize_g(d)
            assert abs(result.value - g_max_analytic(d)[0]) <= 1e-7
            assert g_value(d, result.settings) == pytest.approx(result.value, abs=1e-12)


class TestGridScan:
    def test_bell_state(self, bell):
        value = grid_scan_f(bell, 24)
        assert 2.78 <= value <= 2 * SQRT2 + 1e-12

    def test_zero_correlations(self):
        assert grid_scan_f(ZERO, 8) == 0.0

    def test_rank_one_state_respects_classical_bound(self):
        d = decompose_bloch(product([0.0, 0.6, 0.8], [1.0, 0.0, 0.0]))
        assert grid_scan_f(d, 24) <= 2.0 + 1e-12

    def test_never_exceeds_oracle(self, random_states):
        for rho in random_states[:10]:
            d = decompose_bloch(rho)
            assert grid_scan_f(d, 12) <= maximize_f(d).value + 1e-12

    def test_resolution_too_low(self, bell):
        with pytest.raises(InvalidParameterError):
            grid_scan_f(bell, 7)

    def test_resolution_too_high(self, bell):
        with pytest.raises(ResolutionTooHighError):
            grid_scan_f(bell, 178)


def test_config_rejects_non_positive_bounds():
    with pytest.raises(InvalidParameterError):
        OptimizerConfig(restarts=0)
    with pytest.raises(InvalidParameterError):
        OptimizerConfig(convergence_tol=0.0)
    with pytest.raises(InvalidParameterError):
        OptimizerConfig(seed=-1)
