"""Logging configuration for the application."""

import logging
import sys
from pathlib import Path

from ..config.settings import settings

ROOT_LOGGER_NAME = "solgeo"


def setup_logging(
    level: str | None = None,
    log_format: str | None = None,
    log_file: str | None = None,
) -> logging.Logger:
    """Set up application logging.

    Console output goes to stderr; stdout is reserved for reports.

    Args:
        level: Logging level name, defaults to ``settings.log_level``
        log_format: Formatter pattern, defaults to ``settings.log_format``
        log_file: Optional file to mirror log records into

    Returns:
        The configured package root logger
    """
    level = level or settings.log_level
    log_format = log_format or settings.log_format
    log_file = log_file or settings.log_file

    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.setLevel(getattr(logging, level))
    logger.propagate = False

    # Remove existing handlers
    logger.handlers.clear()

    formatter = logging.Formatter(log_format)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(getattr(logging, level))
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(getattr(logging, level))
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance."""
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")


# Initialize default logger
default_logger = setup_logging()
