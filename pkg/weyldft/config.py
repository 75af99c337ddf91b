from functools import lru_cache
from typing import Mapping, Optional
import logging
import os

from pydantic import BaseModel, field_validator

logger = logging.getLogger(__name__)

ENV_PREFIX = "WEYLDFT_"


class Settings(BaseModel):
    """Runtime knobs, read once from WEYLDFT_* environment variables"""
    threads: int = 1
    weyl_cap: int = 10**6
    matrix_limit: int = 10**8
    log_level: str = "INFO"
    max_runs: int = 1000

    @field_validator("threads", "weyl_cap", "matrix_limit", "max_runs")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if not isinstance(logging.getLevelName(value), int):
            raise ValueError(f"unknown log level '{value}'")
        return value

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> "Settings":
        environ = os.environ if environ is None else environ
        values = {}
        for name in cls.model_fields:
            key = f"{ENV_PREFIX}{name.upper()}"
            if key in environ:
                values[name] = environ[key]
        return cls(**values)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = Settings.from_env()
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
