"""Configuration management for revolving-fractals."""

import os
from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support.

    Every field can be overridden with a ``REVOLVE_`` prefixed variable,
    e.g. ``REVOLVE_ENUMERATION_CAP=200000``.
    """

    # Enumeration limits
    enumeration_cap: int = Field(
        default=5_000_000,
        ge=1,
        description="Refuse to enumerate more words or cloud points than this"
    )

    # Numerical tolerances
    dedup_tolerance: float = Field(
        default=1e-12,
        gt=0.0,
        description="Points closer than this are merged into one cloud point"
    )
    hausdorff_bruteforce_limit: int = Field(
        default=10_000,
        ge=1,
        description="Above this many points the indexed Hausdorff path is used"
    )

    # Sampling
    chaos_burn_in: int = Field(
        default=20,
        ge=1,
        le=200,
        description="Chaos-game iterations applied before a point is kept"
    )
    default_seed: int = Field(default=0, description="Seed used when none is given")
    default_samples: int = Field(
        default=1_000_000,
        ge=1,
        description="Sample count for rendering when no depth is given"
    )
    default_size: int = Field(
        default=1024,
        ge=1,
        le=16384,
        description="Default square image size in pixels"
    )

    # Output configuration
    output_directory: str = Field(
        default="./output",
        description="Directory for rendered images, clouds and reports"
    )

    # Logging
    log_level: str = Field(
        default="INFO",
        description="Logging level (DEBUG, INFO, WARNING, ERROR)"
    )
    log_file: Optional[str] = Field(
        default=None,
        description="Path to log file (None for console only)"
    )
    log_format: str = Field(
        default="standard",
        description="Log format: standard, json or colored"
    )
    environment: str = Field(
        default="default",
        description="Environment name (development, testing, production)"
    )

    @field_validator("output_directory")
    @classmethod
    def validate_output_directory(cls, v):
        """Ensure output directory is absolute path."""
        path = Path(v)
        if not path.is_absolute():
            path = Path.cwd() / path
        return str(path)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        """Validate log level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Invalid log level. Must be one of {valid_levels}")
        return v.upper()

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v):
        valid_formats = ["standard", "json", "colored"]
        if v.lower() not in valid_formats:
            raise ValueError(f"Invalid log format. Must be one of {valid_formats}")
        return v.lower()

    model_config = SettingsConfigDict(
        env_prefix="REVOLVE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


class DevelopmentSettings(Settings):
    """Development environment settings."""

    log_level: str = "DEBUG"
    environment: str = "development"


class ProductionSettings(Settings):
    """Production environment settings."""

    log_level: str = "WARNING"
    log_format: str = "json"
    environment: str = "production"


def get_settings() -> Settings:
    """
    Get settings based on environment.

    Returns:
        Settings object configured for the current environment
    """
    env = os.getenv("REVOLVE_ENVIRONMENT", "default").lower()

    if env == "production":
        return ProductionSettings()
    elif env == "development":
        return DevelopmentSettings()
    else:
        return Settings()
