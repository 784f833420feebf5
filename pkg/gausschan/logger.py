"""Logging utilities for gausschan.

The library logs tolerance decisions at DEBUG and numerical trouble at
WARNING. Settings come from ``GAUSSCHAN_LOG_FILE`` / ``GAUSSCHAN_LOG_LEVEL`` or,
for the CLI, from :func:`gausschan.ini_manager.resolve_settings`.
"""

from __future__ import annotations

import logging
import os

PACKAGE = "gausschan"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


def _handler(log_file: str | None) -> logging.Handler:
    handler = logging.FileHandler(log_file) if log_file else logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    return handler


def _level(name: str | None, default: int = logging.INFO) -> int:
    if not name:
        return default
    return getattr(logging, name.upper(), default)


def create_logger(
    name: str,
    log_file: str | None = None,
    log_level: str | None = None,
    log_file_env: str = "GAUSSCHAN_LOG_FILE",
    log_level_env: str = "GAUSSCHAN_LOG_LEVEL",
) -> logging.Logger:
    """Return a :class:`logging.Logger` with one handler attached."""
    logger = logging.getLogger(name)
    logger.setLevel(_level(log_level or os.getenv(log_level_env)))
    if not logger.handlers:
        logger.addHandler(_handler(log_file or os.getenv(log_file_env)))
    return logger


def configure_package_logging(log_file: str | None = None, log_level: str | None = None) -> None:
    """Apply resolved settings to every ``gausschan`` logger created so far."""
    handler = _handler(log_file) if log_file else None
    for name, obj in list(logging.root.manager.loggerDict.items()):
        if name.split(".")[0] != PACKAGE or not isinstance(obj, logging.Logger):
            continue
        if log_level:
            obj.setLevel(_level(log_level, obj.level))
        if handler is not None:
            obj.handlers = [handler]
