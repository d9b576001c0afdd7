"""Logging setup shared by the library modules and the command-line runner."""

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

ROOT_LOGGER = "sphere_lagrange"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a module.

    Args:
        name: Module name (typically __name__)

    Returns:
        Logger below the package root logger
    """
    if not name.startswith(ROOT_LOGGER):
        name = f"{ROOT_LOGGER}.{name.split('.')[-1]}"
    return logging.getLogger(name)


def configure_logging(level: str = "WARNING", log_file_path: str | None = None) -> None:
    """
    Configure package logging.

    Console output goes to stderr so that command results on stdout stay machine-readable.

    Args:
        level: Log level name (DEBUG, INFO, WARNING, ERROR)
        log_file_path: Optional path of a rotating log file
    """
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(getattr(logging, level.upper(), logging.WARNING))
    logger.handlers.clear()
    logger.propagate = False

    formatter = logging.Formatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S")

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file_path:
        try:
            log_path = Path(log_file_path)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            # 10 MB, 3 backups
            file_handler = RotatingFileHandler(log_path, maxBytes=10 * 1024 * 1024, backupCount=3, encoding="utf-8")
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
            logger.info("File logging enabled: %s", log_file_path)
        except OSError:
            logger.exception("Failed to set up file logging")

    logger.debug("Logging configured: level=%s, file=%s", level, log_file_path)
