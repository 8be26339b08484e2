import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

from .constants import (
    DEFAULT_LOG_LEVEL,
    LOG_DATE_FORMAT,
    LOG_FILE_PREFIX,
    LOG_MESSAGE_FORMAT,
    LOG_TIMESTAMP_FORMAT,
    LOGGER_NAME,
)

_logger_configured = False


def get_module_logger(module_name: str = LOGGER_NAME) -> logging.Logger:
    """Return a named logger for a package module."""
    setup_logger()
    return logging.getLogger(f"{LOGGER_NAME}.{module_name}")


def setup_logger(
    level: str = DEFAULT_LOG_LEVEL, log_dir: Optional[str] = None
) -> logging.Logger:
    global _logger_configured

    logger = logging.getLogger(LOGGER_NAME)

    if _logger_configured:
        return logger

    logger.setLevel(logging.DEBUG)
    logger.propagate = True

    formatter = logging.Formatter(
        LOG_MESSAGE_FORMAT,
        datefmt=LOG_TIMESTAMP_FORMAT,
    )

    # stdout is reserved for command output
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_dir:
        try:
            logs_dir = Path(log_dir)
            logs_dir.mkdir(parents=True, exist_ok=True)

            timestamp = datetime.now().strftime(LOG_DATE_FORMAT)
            log_file = logs_dir / f"{LOG_FILE_PREFIX}{timestamp}.log"

            file_handler = logging.FileHandler(log_file)
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

            logger.info(f"Logging to: {log_file}")

        except Exception as e:
            logger.warning(f"Could not set up file logging: {e}")

    _logger_configured = True
    return logger


def configure_logging(level: str, log_dir: Optional[str] = None) -> logging.Logger:
    """Re-apply handlers with an explicit level (used once the config is known)."""
    global _logger_configured

    logger = logging.getLogger(LOGGER_NAME)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    _logger_configured = False
    return setup_logger(level, log_dir)
