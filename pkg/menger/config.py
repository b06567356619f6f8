"""Configuration management for the Menger toolkit.

Loads configuration from:
1. menger.yaml in current directory
2. ~/.config/menger/menger.yaml
3. Environment variables (MENGER_* prefix)
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

TieBreak = Literal["least", "greatest"]


class ChecksConfig(BaseModel):
    """Axiom checker settings."""

    max_witnesses: int = Field(default=10, ge=0, description="Witnesses kept per axiom")


class TermsConfig(BaseModel):
    """Translation closure settings."""

    closure_cap: int = Field(default=20000, ge=1)
    oracle_depth_limit: int = Field(default=6, ge=0)


class PfuncConfig(BaseModel):
    """Partial function closure settings."""

    closure_cap: int = Field(default=200, ge=1)
    random_generator_count: int = Field(default=2, ge=0)


class OrderConfig(BaseModel):
    """Filter selection settings."""

    tiebreak: TieBreak = "least"


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: str = "INFO"
    format: str = "%(message)s"
    file: Path | None = None


class Config(BaseSettings):
    """Main configuration for the Menger toolkit."""

    model_config = SettingsConfigDict(
        env_prefix="MENGER_",
        env_nested_delimiter="__",
    )

    checks: ChecksConfig = Field(default_factory=ChecksConfig)
    terms: TermsConfig = Field(default_factory=TermsConfig)
    pfunc: PfuncConfig = Field(default_factory=PfuncConfig)
    order: OrderConfig = Field(default_factory=OrderConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)


def find_config_file() -> Path | None:
    """Find the configuration file.

    Searches in order:
    1. ./menger.yaml
    2. ~/.config/menger/menger.yaml
    """
    locations = [
        Path.cwd() / "menger.yaml",
        Path.home() / ".config" / "menger" / "menger.yaml",
    ]

    for path in locations:
        if path.exists():
            return path

    return None


def load_config() -> Config:
    """Load configuration from file and environment.

    Returns:
        Config: The loaded configuration.
    """
    config_data: dict[str, Any] = {}

    config_file = find_config_file()
    if config_file:
        with open(config_file) as f:
            config_data = yaml.safe_load(f) or {}

    # Short aliases for the settings scripts override most often
    env_overrides = {
        "MENGER_MAX_WITNESSES": ("checks", "max_witnesses"),
        "MENGER_CLOSURE_CAP": ("terms", "closure_cap"),
        "MENGER_TIEBREAK": ("order", "tiebreak"),
    }

    for env_var, path in env_overrides.items():
        value = os.environ.get(env_var)
        if value:
            section, key = path
            if section not in config_data:
                config_data[section] = {}
            config_data[section][key] = value

    return Config(**config_data)


# Global config instance (lazy loaded)
_config: Config | None = None


def get_config() -> Config:
    """Get the global configuration instance.

    Returns:
        Config: The configuration instance.
    """
    global _config
    if _config is None:
        _config = load_config()
    return _config


def reset_config() -> None:
    """Reset the global configuration (useful for testing)."""
    global _config
    _config = None
