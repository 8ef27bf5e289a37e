import logging
import sys
from typing import Optional

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
PACKAGE = "src"

_level = "INFO"


def setup_logger(name: str, level: Optional[str] = None) -> logging.Logger:
    """Configure and return a logger writing to stderr."""
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, (level or _level).upper()))

    # stdout carries CSV, markdown and table data
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)

    return logger


def set_log_level(level: str) -> None:
    """Apply a level to existing package loggers and to those created later."""
    global _level
    _level = level.upper()
    resolved = getattr(logging, _level)
    for name, candidate in logging.Logger.manager.loggerDict.items():
        if name.startswith(PACKAGE) and isinstance(candidate, logging.Logger):
            candidate.setLevel(resolved)
