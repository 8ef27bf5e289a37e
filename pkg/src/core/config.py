from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    fraction_bits: int = 30
    max_iter: int = 4
    samples: int = 10000
    prng_seed: int = 42
    alt_grid_points: int = 64
    workers: int = 1
    log_level: str = "INFO"
    api_host: str = "127.0.0.1"
    api_port: int = 8000

    model_config = SettingsConfigDict(env_prefix="RSQRT_", env_file=".env", extra="ignore")

    @field_validator("fraction_bits")
    @classmethod
    def validate_fraction_bits(cls, v: int) -> int:
        if not 24 <= v <= 128:
            raise ValueError("fraction_bits must be within [24, 128]")
        return v

    @field_validator("max_iter")
    @classmethod
    def validate_max_iter(cls, v: int) -> int:
        if not 1 <= v <= 16:
            raise ValueError("max_iter must be within [1, 16]")
        return v

    @field_validator("samples", "workers")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("prng_seed")
    @classmethod
    def validate_prng_seed(cls, v: int) -> int:
        if not 0 <= v < 1 << 64:
            raise ValueError("prng_seed must fit in 64 unsigned bits")
        return v

    @field_validator("alt_grid_points")
    @classmethod
    def validate_grid_points(cls, v: int) -> int:
        if v < 64:
            raise ValueError("alt_grid_points must be at least 64")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {v}")
        return level


_settings = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
