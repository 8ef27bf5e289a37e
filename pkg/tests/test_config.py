import pytest
from pydantic import ValidationError

from src.core import config
from src.core.config import Settings, get_settings


def test_defaults(monkeypatch):
    for name in ("RSQRT_FRACTION_BITS", "RSQRT_MAX_ITER", "RSQRT_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    settings = Settings(_env_file=None)
    assert settings.fraction_bits == 30
    assert settings.max_iter == 4
    assert settings.samples == 10000
    assert settings.prng_seed == 42
    assert settings.log_level == "INFO"


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("RSQRT_MAX_ITER", "6")
    monkeypatch.setenv("RSQRT_FRACTION_BITS", "52")
    monkeypatch.setenv("RSQRT_LOG_LEVEL", "debug")
    settings = Settings(_env_file=None)
    assert settings.max_iter == 6
    assert settings.fraction_bits == 52
    assert settings.log_level == "DEBUG"


@pytest.mark.parametrize("name, value", [
    ("RSQRT_FRACTION_BITS", "20"),
    ("RSQRT_MAX_ITER", "0"),
    ("RSQRT_SAMPLES", "0"),
    ("RSQRT_WORKERS", "0"),
    ("RSQRT_PRNG_SEED", "-1"),
    ("RSQRT_ALT_GRID_POINTS", "8"),
    ("RSQRT_LOG_LEVEL", "verbose"),
])
def test_invalid_environment_rejected(monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ValidationError):
        Settings(_env_file=None)


def test_get_settings_is_cached(monkeypatch):
    monkeypatch.setattr(config, "_settings", None)
    monkeypatch.setenv("RSQRT_SAMPLES", "500")
    first = get_settings()
    monkeypatch.setenv("RSQRT_SAMPLES", "900")
    assert get_settings() is first
    assert first.samples == 500
