"""Logging configuration for the application."""

import logging
import sys

from streamsum.config.settings import settings


def setup_logging(verbose: bool = False) -> None:
    """Configure logging for the application.

    Records go to stderr; stdout is reserved for JSONL output.

    Args:
        verbose: Force DEBUG for the streamsum loggers
    """

    # Create formatter
    formatter = logging.Formatter(
        fmt="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(settings.log_level)

    # Remove existing handlers
    root_logger.handlers.clear()

    # Console handler
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG if verbose else settings.log_level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    logging.getLogger("asyncio").setLevel(logging.WARNING)

    # Debug mode configuration
    if settings.debug or verbose:
        root_logger.setLevel(logging.DEBUG)
        logging.getLogger("streamsum").setLevel(logging.DEBUG)
        root_logger.debug("Debug logging enabled")


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the given name.

    Args:
        name: Name for the logger (typically __name__)

    Returns:
        Configured logger instance
    """
    return logging.getLogger(name)
