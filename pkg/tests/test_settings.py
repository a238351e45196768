import logging

import pytest

from config.settings import Settings

ENV_PREFIX = "CHSH_METER_"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in (
        "THREADS",
        "LOG_LEVEL",
        "LOG_FILE",
        "VALIDATION_TOLERANCE",
        "CLASSIFICATION_THRESHOLD",
        "RANK_TOLERANCE",
        "VERIFY_TOLERANCE",
        "ORACLE_RESTARTS",
        "ORACLE_MAX_ITERATIONS",
        "ORACLE_CONVERGENCE_TOL",
    ):
        monkeypatch.delenv(ENV_PREFIX + name, raising=False)


def test_defaults():
    config = Settings()
    assert config.LOG_LEVEL == "WARNING"
    assert config.LOG_FILE is None
    assert config.VALIDATION_TOLERANCE == 1e-10
    assert config.CLASSIFICATION_THRESHOLD == 1e-9
    assert config.VERIFY_TOLERANCE == 1e-7
    assert config.ORACLE_RESTARTS == 64
    assert config.ORACLE_MAX_ITERATIONS == 500
    assert 1 <= config.THREADS <= 8


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("CHSH_METER_LOG_LEVEL", "debug")
    monkeypatch.setenv("CHSH_METER_ORACLE_RESTARTS", "16")
    monkeypatch.setenv("CHSH_METER_VERIFY_TOLERANCE", "1e-9")
    monkeypatch.setenv("CHSH_METER_THREADS", "1")
    config = Settings()
    assert config.LOG_LEVEL == "DEBUG"
    assert config.ORACLE_RESTARTS == 16
    assert config.VERIFY_TOLERANCE == 1e-9
    assert config.THREADS == 1


def test_blank_values_use_defaults(monkeypatch):
    monkeypatch.setenv("CHSH_METER_ORACLE_RESTARTS", "  ")
    assert Settings().ORACLE_RESTARTS == 64


@pytest.mark.parametrize(
    ("name", "value", "message"),
    [
        ("THREADS", "0", "entero positivo"),
        ("THREADS", "dos", "debe ser un entero"),
        ("LOG_LEVEL", "VERBOSE", "debe ser uno de"),
        ("RANK_TOLERANCE", "-1e-9", "deben ser positivas"),
        ("VERIFY_TOLERANCE", "pequeña", "número real"),
        ("ORACLE_MAX_ITERATIONS", "0", "deben ser positivos"),
    ],
)
def test_invalid_values(monkeypatch, name, value, message):
    monkeypatch.setenv(ENV_PREFIX + name, value)
    with pytest.raises(ValueError, match=message):
        Settings()


def test_more_threads_than_cores_warns(monkeypatch, caplog):
    monkeypatch.setattr("config.settings.os.cpu_count", lambda: 2)
    monkeypatch.setenv("CHSH_METER_THREADS", "4")
    with caplog.at_level(logging.WARNING, logger="config.settings"):
        config = Settings()
    assert config.THREADS == 4
    assert "supera los 2 núcleos" in caplog.text
