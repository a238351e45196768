"""Comprobaciones de extremo a extremo sobre familias conocidas y estados aleatorios."""

import math

import numpy as np
import pytest

from models.measurement import MeasurementSettings
from models.optimization import OptimizerConfig
from services.analysis_service import sweep
from services.chsh_engine import (
    classify,
    entanglement_degree,
    f_max_analytic,
    g_max_analytic,
    geometric_identity,
    t_vector,
)
from services.optimizer_oracle import maximize_f, maximize_g
from services.quantum_core import decompose_bloch
from services.shot_simulator import estimate_chsh
from services.state_factory import (
    build,
    correlation_embedding,
    random_local_rotations,
    random_mixed,
    rotate_decomposition,
    werner,
)
from utils.rng import derive_generator, random_unit_vectors
from utils.validators import StateFamily, StateParams, StateSpec

pytestmark = [pytest.mark.acceptance, pytest.mark.slow]

TSIRELSON = 2 * math.sqrt(2.0)
ORACLE_SEED = 500
ORACLE_STATES = 500


@pytest.fixture(scope="module")
def oracle_states():
    return [random_mixed(ORACLE_SEED, index=i) for i in range(ORACLE_STATES)]


@pytest.mark.parametrize("k1", [round(0.1 * i, 1) for i in range(1, 10)])
def test_pure_state_curve(k1):
    k2 = math.sqrt(1 - k1 * k1)
    rho = build(StateSpec(family=StateFamily.PURE_01_10, params=StateParams(k1=k1)))
    report = classify(rho)
    assert report.f_max == pytest.approx(2 * math.sqrt(1 + 4 * k1**2 * k2**2), abs=1e-9)
    assert report.p_e == pytest.approx(2 * abs(k1 * k2), abs=1e-9)


@pytest.mark.parametrize("family", [f for f in StateFamily if f.value.startswith("bell_")])
def test_bell_states_are_maximal(family):
    report = classify(build(StateSpec(family=family)))
    assert report.f_max == pytest.approx(TSIRELSON, abs=1e-9)
    assert report.g_max == pytest.approx(2.0, abs=1e-9)
    assert report.p_e == pytest.approx(1.0, abs=1e-9)


def test_werner_sweep():
    rows = sweep(StateFamily.WERNER, 0.0, 1.0, 0.1)
    assert len(rows) == 11
    for row in rows:
        assert row.p_e == pytest.approx(row.value, abs=1e-9)
        assert row.entangled == (row.value > 0)
    row = next(row for row in rows if row.value == 0.2)
    assert row.entangled
    assert row.separable_per_cited_bound is True


def test_oracle_matches_analytic_maxima(oracle_states):
    cfg = OptimizerConfig(seed=ORACLE_SEED)
    worst_f = worst_g = 0.0
    for rho in oracle_states:
        d = decompose_bloch(rho)
        worst_f = max(worst_f, abs(maximize_f(d, cfg).value - f_max_analytic(d)[0]))
        worst_g = max(worst_g, abs(maximize_g(d, cfg).value - g_max_analytic(d)[0]))
    assert worst_f <= 1e-7
    assert worst_g <= 1e-7


def test_geometric_identity(oracle_states):
    checked = 0
    for rho in oracle_states:
        report = classify(rho)
        if report.f_max <= 1e-6:
            continue
        residuals = geometric_identity(report)
        assert residuals.r1 <= 1e-8
        assert residuals.r2 <= 1e-8
        checked += 1
    assert checked > 0


def test_rank_criterion():
    rng = derive_generator(6, 0)
    for index in range(100):
        rank_one = correlation_embedding((float(rng.uniform(0.05, 1.0)), 0.0, 0.0), 61, index)
        assert classify(rank_one).p_e <= 1e-9

        s1 = float(rng.uniform(0.01, 0.99))
        s2 = float(rng.uniform(0.001, 1.0 - s1))
        s1, s2 = max(s1, s2), min(s1, s2)
        rank_two = correlation_embedding((s1, s2, 0.0), 62, index)
        assert classify(rank_two).p_e > 1e-6


def test_normalization_properties():
    for index in range(1000):
        report = classify(random_mixed(7, index=index))
        assert report.f_max <= TSIRELSON + 1e-9
        assert -1e-12 <= report.p_e <= 1 + 1e-9
        assert report.f_max >= report.g_max

    directions = random_unit_vectors(derive_generator(7, 1), 4 * 10_000).reshape(-1, 4, 3)
    for n, n_prime, m, m_prime in directions:
        settings_f = MeasurementSettings(n=n, n_prime=n_prime, m=m, m_prime=m_prime)
        assert t_vector(settings_f).norm == pytest.approx(2.0, abs=1e-12)


def test_local_rotation_invariance():
    for index in range(200):
        d = decompose_bloch(random_mixed(8, index=index))
        rotated = rotate_decomposition(d, *random_local_rotations(8, index))
        assert f_max_analytic(rotated)[0] == pytest.approx(f_max_analytic(d)[0], abs=1e-9)
        assert g_max_analytic(rotated)[0] == pytest.approx(g_max_analytic(d)[0], abs=1e-9)
        assert entanglement_degree(rotated) == pytest.approx(entanglement_degree(d), abs=1e-9)


def test_shot_estimates_converge(psi_plus):
    shots = 1_000_000
    bell = estimate_chsh(psi_plus, classify(psi_plus).settings_f, shots, seed=2024)
    assert bell.estimate == pytest.approx(TSIRELSON, abs=0.01)

    weak = werner(0.2)
    report = classify(weak)
    estimate = estimate_chsh(weak, report.settings_f, shots, seed=2024)
    assert report.p_e == pytest.approx(0.2, abs=1e-12)
    assert report.entangled
    assert estimate.estimate == pytest.approx(TSIRELSON * 0.2, abs=0.01)
    assert estimate.estimate < 2.0


def test_commutator_structure(oracle_states):
    for rho in oracle_states[:200]:
        report = classify(rho)
        if report.p_e > 0.01:
            assert report.x_norm > 0.1
            assert report.y_norm > 1e-6

    rng = np.random.default_rng(10)
    for u, v in random_unit_vectors(rng, 40).reshape(20, 2, 3):
        spec = StateSpec(
            family=StateFamily.PRODUCT, params=StateParams(u=list(0.9 * u), v=list(v))
        )
        assert classify(build(spec)).y_norm <= 1e-12
