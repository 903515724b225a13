"""Runtime configuration via environment variables (pydantic-settings)."""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    PROJECT_NAME: str = "ct-amalgams"

    # Group closures
    CLOSURE_CAP: int = 100_000

    # Exhaustive scans over SL2(q)
    SL2_SCAN_LIMIT: int = 10_000
    MAX_SCAN_FIELD_ORDER: int = 9

    # Brute-force oracles
    POINTING_ORACLE_MAX_VERTICES: int = 12
    POINTING_ORACLE_BUDGET: int = 2_000_000
    MATRIX_ORACLE_MAX_VERTICES: int = 6
    ORIENTATION_MAX_VERTICES: int = 16

    # Sampling policy for pairwise oracle runs
    ORACLE_SAME_PAIRS: int = 200
    ORACLE_CROSS_PAIRS: int = 200
    MATRIX_ORACLE_PAIRS: int = 40
    ORACLE_FULL_PAIRWISE_LIMIT: int = 10_000
    ORACLE_MAX_UNIVERSE: int = 100_000

    # Completion witnesses
    NONTRIVIALITY_SAMPLE: int = 24

    DEFAULT_SEED: int = 0
    LOG_LEVEL: str = "INFO"

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")


@lru_cache
def get_settings():
    return Settings()


settings = get_settings()
