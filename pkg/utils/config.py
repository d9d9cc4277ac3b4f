"""
Configuration module for the verification toolkit.

This module provides a centralized configuration system, loading defaults for
seeds, sharding, sample counts and pass thresholds from environment variables
and an optional .env file.
"""

import logging
import os
from typing import ClassVar, Dict, TypedDict, cast

from dotenv import load_dotenv

# Load environment variables from .env file if present
load_dotenv()

logger = logging.getLogger("pleijel_verify.config")


class SettingsDict(TypedDict):
    """Type definition for settings dictionary."""

    SEED: int
    SHARDS: int
    MAX_WORKERS: int
    BATCH_SIZE: int
    Z_THRESHOLD: float
    REJECTION_CAP: float
    LOW_POWER_SAMPLES: int
    SMOKE_SAMPLES: int
    FULL_SAMPLES: int
    OUTPUT_DIR: str
    LOG_LEVEL: str
    DEBUG: bool


def _env_int(name: str, default: str) -> int:
    # Accepts "1e5" as well as "100000"
    return int(float(os.environ.get(name, default)))


class Settings:
    """Configuration settings for verification runs."""

    # Randomness and parallelism
    SEED: ClassVar[int] = _env_int("PLEIJEL_SEED", "7")
    SHARDS: ClassVar[int] = _env_int("PLEIJEL_SHARDS", "1")
    MAX_WORKERS: ClassVar[int] = _env_int("PLEIJEL_MAX_WORKERS", "4")
    BATCH_SIZE: ClassVar[int] = _env_int("PLEIJEL_BATCH_SIZE", "65536")

    # Pass criteria
    Z_THRESHOLD: ClassVar[float] = float(os.environ.get("PLEIJEL_Z_THRESHOLD", "4.0"))
    REJECTION_CAP: ClassVar[float] = float(os.environ.get("PLEIJEL_REJECTION_CAP", "1e-3"))
    LOW_POWER_SAMPLES: ClassVar[int] = _env_int("PLEIJEL_LOW_POWER_SAMPLES", "1000")

    # Suites
    SMOKE_SAMPLES: ClassVar[int] = _env_int("PLEIJEL_SMOKE_SAMPLES", "1e5")
    FULL_SAMPLES: ClassVar[int] = _env_int("PLEIJEL_FULL_SAMPLES", "1e6")
    OUTPUT_DIR: ClassVar[str] = os.environ.get("PLEIJEL_OUTPUT_DIR", "reports")

    # Logging Settings
    LOG_LEVEL: ClassVar[str] = os.environ.get("LOG_LEVEL", "INFO")
    DEBUG: ClassVar[bool] = os.environ.get("DEBUG", "").lower() == "true"

    @classmethod
    def get_log_level(cls) -> int:
        """Get the log level as an integer value for logging module."""
        if cls.DEBUG:
            return logging.DEBUG
        levels: Dict[str, int] = {
            "CRITICAL": logging.CRITICAL,
            "ERROR": logging.ERROR,
            "WARNING": logging.WARNING,
            "INFO": logging.INFO,
            "DEBUG": logging.DEBUG,
        }
        return levels.get(cls.LOG_LEVEL.upper(), logging.INFO)

    @classmethod
    def as_dict(cls) -> SettingsDict:
        """Return all settings as a dictionary."""
        result = {
            key: value
            for key, value in cls.__dict__.items()
            if not key.startswith("_") and key.isupper()
        }
        return cast(SettingsDict, result)

    @classmethod
    def configure_logging(cls) -> None:
        """Configure logging based on settings."""
        log_level: int = cls.get_log_level()
        logging.basicConfig(
            level=log_level, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )
        logger.debug(f"Logging configured with level: {logging.getLevelName(log_level)}")


# Initialize settings
settings = Settings()

# Configure logging if not already configured
if os.environ.get("CONFIGURE_LOGGING", "true").lower() == "true":
    settings.configure_logging()

logger.debug(f"Loaded configuration: {settings.as_dict()}")
