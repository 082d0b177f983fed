"""
Configuration - runtime settings and logging setup

Settings are read from the environment (prefix RAAG_) and an optional .env file.
"""

import logging
from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from pythonjsonlogger import jsonlogger


class Settings(BaseSettings):
    """Toolkit settings"""

    model_config = SettingsConfigDict(
        env_prefix="RAAG_", env_file=".env", extra="ignore"
    )

    # Norms
    tail_bound: int = Field(3, ge=0, description="Longest class length in the norm tail")

    # Searches
    search_budget: int = Field(10_000_000, gt=0, description="Clique search node limit")
    conjugator_bound_floor: int = Field(8, gt=0, description="Minimum conjugator length bound")
    explore_depth_limit: int = Field(4, ge=0)
    explore_max_nodes: int = Field(5000, gt=0)

    # Randomized property runs
    seed: int = 0

    # Logging
    log_level: str = "INFO"
    log_json: bool = False

    # Cache
    cache_enabled: bool = False
    redis_url: str = "redis://localhost:6379"
    cache_ttl: int = Field(86400, gt=0)


@lru_cache
def get_settings() -> Settings:
    """Process-wide settings instance"""
    return Settings()


def configure_logging(settings: Optional[Settings] = None) -> None:
    """Plain text logs by default, JSON lines when log_json is set"""
    settings = settings or get_settings()
    level = getattr(logging, settings.log_level.upper(), logging.INFO)

    if not settings.log_json:
        logging.basicConfig(level=level)
        return

    handler = logging.StreamHandler()
    handler.setFormatter(
        jsonlogger.JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s")
    )
    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(level)
