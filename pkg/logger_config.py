"""
Logging for the temporal pseudo-loop toolkit.

Every module asks for ``get_logger(__name__)`` and receives a child of one
shared ``temporal`` logger. The parent owns the handlers:

    - a rotating run log ``LOG_DIR/temporal_{YYYY-MM-DD}.log`` (10MB, 5 backups)
      with file and line numbers, always at DEBUG
    - a console handler on stderr at LOG_LEVEL, so documents on stdout stay clean

Levels used across the package:
    - DEBUG: slices, fences, chase steps, alignments
    - INFO: closure sizes, dispatch decisions, certificates, report totals
    - WARNING: hypothesis failures and budget pressure
    - ERROR: a typed error leaving a command

Environment:
    LOG_LEVEL (default INFO), LOG_DIR (default logs), LOG_TO_FILE (default true)
"""

import logging
import sys
from datetime import datetime
from logging.handlers import RotatingFileHandler
from pathlib import Path

from config import config

ROOT_NAME = "temporal"

FILE_FORMAT = logging.Formatter(
    fmt='[%(asctime)s] [%(name)s] [%(levelname)s] [%(filename)s:%(lineno)d] - %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S',
)
CONSOLE_FORMAT = logging.Formatter(
    fmt='[%(asctime)s] [%(levelname)s] [%(name)s] - %(message)s',
    datefmt='%H:%M:%S',
)


def _level(name: str) -> int:
    level = logging.getLevelName(name.upper())
    if not isinstance(level, int):
        raise ValueError(f"Unknown log level: {name}")
    return level


class LoggerConfig:
    """Owns the shared handlers of the ``temporal`` logger tree."""

    _root: logging.Logger | None = None
    _console: logging.Handler | None = None

    @classmethod
    def root(cls) -> logging.Logger:
        if cls._root is None:
            cls._root = cls._build_root(config.LOG_LEVEL, config.LOG_TO_FILE)
        return cls._root

    @classmethod
    def _build_root(
        cls,
        log_level: str,
        file_output: bool,
        max_bytes: int = 10 * 1024 * 1024,
        backup_count: int = 5,
    ) -> logging.Logger:
        root = logging.getLogger(ROOT_NAME)
        root.setLevel(logging.DEBUG if file_output else _level(log_level))
        root.propagate = False
        root.handlers.clear()

        if file_output:
            log_path = Path(config.LOG_DIR)
            log_path.mkdir(parents=True, exist_ok=True)
            stamp = datetime.now().strftime('%Y-%m-%d')
            file_handler = RotatingFileHandler(
                log_path / f"{ROOT_NAME}_{stamp}.log",
                maxBytes=max_bytes,
                backupCount=backup_count,
                encoding='utf-8',
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(FILE_FORMAT)
            root.addHandler(file_handler)

        cls._console = logging.StreamHandler(sys.stderr)
        cls._console.setLevel(_level(log_level))
        cls._console.setFormatter(CONSOLE_FORMAT)
        root.addHandler(cls._console)
        return root

    @classmethod
    def set_global_level(cls, level: str):
        """Change the console level; the run log keeps everything."""
        root = cls.root()
        cls._console.setLevel(_level(level))
        if not any(isinstance(h, RotatingFileHandler) for h in root.handlers):
            root.setLevel(_level(level))


def get_logger(name: str) -> logging.Logger:
    LoggerConfig.root()
    return logging.getLogger(f"{ROOT_NAME}.{name}")
