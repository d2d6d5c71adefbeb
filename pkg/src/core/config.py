#!/usr/bin/env python3
"""
Configuration - Engine settings loaded from YAML and validated with pydantic
Resolution order: explicit path, HLCSA_CONFIG environment variable, bundled default file
"""

import os
from pathlib import Path
from typing import Optional, Tuple

import yaml
from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .constants import Defaults
from .exceptions import InvalidConfigException


class SolverConfig(BaseModel):
    """Truncation window and default power for subspace solvers"""
    model_config = ConfigDict(extra="forbid")

    deg_lambda: int = Field(default=Defaults.DEG_LAMBDA, ge=0)
    deg_partial: int = Field(default=Defaults.DEG_PARTIAL, ge=0)
    power_k: int = Field(default=Defaults.POWER_K, ge=0)

    @property
    def bounds(self) -> Tuple[int, int]:
        return (self.deg_lambda, self.deg_partial)


class RandomConfig(BaseModel):
    """Shape of seeded random cochains used by the d² property runs"""
    model_config = ConfigDict(extra="forbid")

    trials: int = Field(default=Defaults.TRIALS, ge=0)
    coeff_range: int = Field(default=Defaults.COEFF_RANGE, ge=1)
    max_deg_lambda: int = Field(default=Defaults.RANDOM_DEG_LAMBDA, ge=0)
    max_deg_partial: int = Field(default=Defaults.RANDOM_DEG_PARTIAL, ge=0)


class ReportConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: str = "text"
    timing: bool = False

    @field_validator("format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("text", "json"):
            raise ValueError(f"unknown report format: {value}")
        return value


class LoggingConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    level: str = "INFO"
    log_to_file: bool = False
    log_dir: str = "logs"

    @field_validator("level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown log level: {value}")
        return value


class EngineConfig(BaseModel):
    """Root configuration object"""
    model_config = ConfigDict(extra="forbid")

    solver: SolverConfig = Field(default_factory=SolverConfig)
    random: RandomConfig = Field(default_factory=RandomConfig)
    report: ReportConfig = Field(default_factory=ReportConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)


def load_config(config_path: Optional[str] = None) -> EngineConfig:
    """
    Load engine configuration

    Args:
        config_path: Explicit YAML path; falls back to HLCSA_CONFIG, then the bundled file

    Returns:
        Validated EngineConfig (defaults when no file is found)

    Raises:
        InvalidConfigException: file unreadable, not a mapping, or fails validation
    """
    load_dotenv()
    path = config_path or os.environ.get(Defaults.CONFIG_ENV)
    if path is None:
        default = Path(__file__).resolve().parents[2] / Defaults.CONFIG_PATH
        if not default.exists():
            logger.debug("No configuration file found, using defaults")
            return EngineConfig()
        path = str(default)

    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise InvalidConfigException(f"Cannot read configuration {path}: {e}") from e

    if not isinstance(data, dict):
        raise InvalidConfigException(f"Configuration {path} must be a mapping")

    try:
        config = EngineConfig.model_validate(data)
    except ValidationError as e:
        raise InvalidConfigException(f"Invalid configuration {path}: {e}") from e

    logger.debug(f"Loaded configuration from {path}")
    return config
