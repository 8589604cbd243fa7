"""Environment overrides (``GYRO_*``) layered over the YAML configuration."""

from __future__ import annotations

from dataclasses import replace
from functools import lru_cache
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .config_loader import Config


class GyroSettings(BaseSettings):
    """Settings read from the environment and an optional ``.env`` file."""

    tolerance: Optional[float] = Field(default=None, gt=0)
    max_radius: Optional[float] = Field(default=None, gt=0, lt=1)
    log_level: Optional[str] = None

    model_config = SettingsConfigDict(env_prefix="GYRO_", env_file=".env", extra="ignore")


@lru_cache(maxsize=1)
def get_settings() -> GyroSettings:
    """Return cached environment settings."""
    return GyroSettings()


def reset_settings_cache() -> None:
    """Clear cached settings (primarily for tests)."""
    get_settings.cache_clear()


def apply_env_overrides(config: Config, settings: Optional[GyroSettings] = None) -> Config:
    """Return ``config`` with every variable set in the environment applied."""
    settings = settings or get_settings()
    if settings.tolerance is not None:
        config = replace(config, verification=replace(config.verification, tolerance=settings.tolerance))
    if settings.max_radius is not None:
        config = replace(config, generation=replace(config.generation, max_radius=settings.max_radius))
    if settings.log_level:
        config = replace(config, logging=replace(config.logging, level=settings.log_level))
    return config
