"""Logging configuration for stereorange.

Only the ``stereorange`` logger tree is configured, so embedding the library
leaves the host application's root logger alone. Results go to stdout through
the CLI; log records always go to stderr.
"""
import logging
import time
from contextlib import contextmanager
from typing import Iterator, Optional
from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "stereorange"
LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def setup_logging(level: str = "INFO", debug_mode: bool = False) -> None:
    """
    Attach a Rich handler on stderr to the stereorange logger.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL); unknown
            names fall back to INFO
        debug_mode: Force DEBUG and show time, source path and locals in tracebacks

    Calling it again replaces the previous handler.
    """
    name = level.upper()
    log_level = logging.DEBUG if debug_mode else getattr(logging, name, logging.INFO)

    handler = RichHandler(
        console=Console(stderr=True),
        rich_tracebacks=True,
        tracebacks_show_locals=debug_mode,
        show_time=debug_mode,
        show_path=debug_mode,
        markup=False,
    )
    handler.setFormatter(logging.Formatter("%(message)s", datefmt="[%X]"))

    logger = logging.getLogger(ROOT_LOGGER)
    for old in list(logger.handlers):
        logger.removeHandler(old)
    logger.addHandler(handler)
    logger.setLevel(log_level)
    logger.propagate = False

    if name not in LEVELS and not debug_mode:
        logger.warning(f"Unknown log level {level!r}, using INFO")


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    Get a logger instance.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Logger instance under the stereorange namespace
    """
    if name:
        return logging.getLogger(f"{ROOT_LOGGER}.{name}")
    return logging.getLogger(ROOT_LOGGER)


@contextmanager
def log_duration(logger: logging.Logger, what: str) -> Iterator[None]:
    """Log the wall time spent in the block at DEBUG."""
    start = time.perf_counter()
    try:
        yield
    finally:
        logger.debug(f"{what} took {(time.perf_counter() - start) * 1000:.1f} ms")
