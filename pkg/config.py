"""
Configuration module for loading environment variables from .env file.

All tunables of the solver (budgets, enumeration bounds, logging, contract
checks) are read here once and shared through the ``config`` singleton.
"""

from pathlib import Path
from dotenv import load_dotenv
import os

# Load .env file from project root
_env_path = Path(__file__).parent / ".env"
load_dotenv(_env_path)


def _flag(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Application configuration loaded from .env file."""

    # Resource bounds
    CLOSURE_BUDGET: int = int(os.getenv("CLOSURE_BUDGET", "20000"))
    GENERATION_BUDGET: int = int(os.getenv("GENERATION_BUDGET", "400"))
    MAX_ENUM_ARITY: int = int(os.getenv("MAX_ENUM_ARITY", "8"))
    LINK_EXPONENT_LIMIT: int = int(os.getenv("LINK_EXPONENT_LIMIT", "64"))

    # Construction postconditions are asserted only when this is on (test builds)
    CHECK_CONTRACTS: bool = _flag("CHECK_CONTRACTS", "false")

    # Runs
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "20240601"))
    MAX_WORKERS: int = int(os.getenv("MAX_WORKERS", "1"))
    OUTPUT_DIR: str = os.getenv("OUTPUT_DIR", "data")
    SCHEMA_VERSION: int = 1

    # Logging Configuration
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_DIR: str = os.getenv("LOG_DIR", "logs")
    LOG_TO_FILE: bool = _flag("LOG_TO_FILE", "true")


# Create a singleton instance for easy access
config = Config()
