"""
Runtime configuration

Values come from the environment (optionally a .env file in the working
directory), with defaults suitable for desk-scale runs.
"""

import logging
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

from .errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_FIELD_CHAR = 2
DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_DATA_DIR = "data"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def default_threads() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class Config:
    threads: int
    field_char: int = DEFAULT_FIELD_CHAR
    log_level: str = DEFAULT_LOG_LEVEL
    data_dir: str = DEFAULT_DATA_DIR

    @classmethod
    def from_env(cls, threads: Optional[int] = None) -> "Config":
        """
        Build the configuration from BEI_* environment variables

        Args:
            threads: explicit worker count (the --threads flag); overrides BEI_THREADS
        """
        load_dotenv()
        if threads is None:
            threads = _int_from_env("BEI_THREADS", default_threads())
        if threads < 1:
            raise ConfigError(f"thread count must be at least 1, got {threads}")

        field_char = _int_from_env("BEI_FIELD_CHAR", DEFAULT_FIELD_CHAR)
        if not is_prime(field_char):
            raise ConfigError(f"BEI_FIELD_CHAR must be a prime, got {field_char}")

        log_level = os.getenv("BEI_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
        if not isinstance(logging.getLevelName(log_level), int):
            raise ConfigError(f"unknown BEI_LOG_LEVEL {log_level!r}")

        return cls(
            threads=threads,
            field_char=field_char,
            log_level=log_level,
            data_dir=os.getenv("BEI_DATA_DIR", DEFAULT_DATA_DIR),
        )


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
