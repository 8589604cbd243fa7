"""Configuration loader for gyrovector verification runs."""

import os
import yaml
from typing import Any, Dict, List, Optional
from dataclasses import dataclass, field

from .errors import ConfigError


@dataclass
class VerificationConfig:
    """Tolerances used by the evaluators."""
    tolerance: float = 1e-9
    stress_tolerance: float = 1e-6
    incidence_tolerance: float = 1e-9
    vertex_guard: float = 1e-6
    telescoping_tolerance: float = 1e-12
    converse_agreement: float = 1e-9


@dataclass
class GenerationConfig:
    """Random configuration generator settings."""
    seed: int = 0
    max_radius: float = 0.9
    max_retries: int = 1000
    require_auxiliary: bool = True
    require_simple: bool = True


@dataclass
class RenderConfig:
    """SVG figure geometry in pixels."""
    radius_px: int = 500
    margin_px: int = 50


@dataclass
class LimitConfig:
    """Euclidean-limit sweep settings."""
    s_values: List[float] = field(default_factory=lambda: [10.0, 100.0, 1000.0, 10000.0])
    threshold: float = 1e-7


@dataclass
class CampaignConfig:
    """Where campaign artefacts go."""
    repro_dir: str = "repro"
    case_log: Optional[str] = None


@dataclass
class LoggingConfig:
    """Logging configuration."""
    level: str = "WARNING"
    file: Optional[str] = None
    max_bytes: int = 10485760
    backup_count: int = 5
    console_output: bool = True


@dataclass
class Config:
    """Main configuration container."""
    verification: VerificationConfig = field(default_factory=VerificationConfig)
    generation: GenerationConfig = field(default_factory=GenerationConfig)
    render: RenderConfig = field(default_factory=RenderConfig)
    limit: LimitConfig = field(default_factory=LimitConfig)
    campaign: CampaignConfig = field(default_factory=CampaignConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)


def _section(data: Dict[str, Any], name: str) -> Dict[str, Any]:
    section = data.get(name, {}) or {}
    if not isinstance(section, dict):
        raise ConfigError(f"Section '{name}' must be a mapping")
    return section


def _build(section_type: type, values: Dict[str, Any], name: str) -> Any:
    try:
        return section_type(**values)
    except TypeError as e:
        raise ConfigError(f"Invalid keys in section '{name}': {e}") from e


def _validate(config: Config) -> None:
    v = config.verification
    for key in ("tolerance", "stress_tolerance", "incidence_tolerance", "vertex_guard",
                "telescoping_tolerance", "converse_agreement"):
        value = getattr(v, key)
        if not isinstance(value, (int, float)) or value <= 0:
            raise ConfigError(f"verification.{key} must be a positive number, got {value!r}")

    g = config.generation
    if not 0 < g.max_radius < 1:
        raise ConfigError(f"generation.max_radius must lie in (0, 1), got {g.max_radius!r}")
    if g.max_retries < 1:
        raise ConfigError(f"generation.max_retries must be positive, got {g.max_retries!r}")
    if not 0 <= g.seed < 2 ** 64:
        raise ConfigError(f"generation.seed must be an unsigned 64-bit integer, got {g.seed!r}")

    s_values = config.limit.s_values
    if not s_values or any(s <= 0 for s in s_values):
        raise ConfigError(f"limit.s_values must be positive, got {s_values!r}")
    if list(s_values) != sorted(s_values):
        raise ConfigError("limit.s_values must be ascending")

    if config.render.radius_px <= 0 or config.render.margin_px < 0:
        raise ConfigError("render.radius_px must be positive and render.margin_px non-negative")


def load_config(config_path: Optional[str] = None) -> Config:
    """
    Load configuration from a YAML file.

    Args:
        config_path: Path to the configuration file; None gives the defaults

    Returns:
        Config object with all settings

    Raises:
        FileNotFoundError: If an explicit config file doesn't exist
        ConfigError: If the config file is invalid
    """
    if config_path is None:
        return Config()

    if not os.path.exists(config_path):
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    with open(config_path, 'r', encoding='utf-8') as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"Configuration file is not valid YAML: {e}") from e

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("Configuration file must contain a mapping at the top level")

    limit_data = _section(data, 'limit')
    if 's_values' in limit_data:
        limit_data = dict(limit_data, s_values=[float(s) for s in limit_data['s_values']])

    config = Config(
        verification=_build(VerificationConfig, _section(data, 'verification'), 'verification'),
        generation=_build(GenerationConfig, _section(data, 'generation'), 'generation'),
        render=_build(RenderConfig, _section(data, 'render'), 'render'),
        limit=_build(LimitConfig, limit_data, 'limit'),
        campaign=_build(CampaignConfig, _section(data, 'campaign'), 'campaign'),
        logging=_build(LoggingConfig, _section(data, 'logging'), 'logging'),
    )
    _validate(config)
    return config
