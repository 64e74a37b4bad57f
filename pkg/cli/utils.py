"""Utility functions for CLI commands."""
import math
from contextlib import contextmanager
from typing import Iterator, NoReturn
import typer
from pydantic import ValidationError
from rich.console import Console
from core.exceptions import ComputationError, DomainError
from core.geometry import CameraModel
from config import get_logger

console = Console()
err_console = Console(stderr=True)
logger = get_logger(__name__)

EXIT_USAGE = 1
EXIT_COMPUTATION = 2


def fmt(value: float) -> str:
    """Fixed six-significant-digit rendering used for every printed number."""
    return f"{value:.6g}"


def emit(label: str, value: object) -> None:
    """Print one ``label value`` result line."""
    text = fmt(value) if isinstance(value, float) else str(value)
    console.print(f"{label} {text}", highlight=False, markup=False, soft_wrap=True)


def describe_error(error: Exception) -> str:
    """One-line diagnostic for an exception."""
    if isinstance(error, ValidationError):
        first = error.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        return f"{where}: {first['msg']}" if where else first["msg"]
    return " ".join(str(error).split())


def fail(message: str, code: int) -> NoReturn:
    err_console.print(f"error: {message}", highlight=False, markup=False, soft_wrap=True)
    raise typer.Exit(code)


@contextmanager
def handle_errors() -> Iterator[None]:
    """Map library errors to exit codes: bad input 1, failed computation 2."""
    try:
        yield
    except (DomainError, ValidationError) as e:
        logger.debug(f"Rejected input: {e!r}")
        fail(describe_error(e), EXIT_USAGE)
    except ComputationError as e:
        logger.debug(f"Computation failed: {e!r}")
        fail(describe_error(e), EXIT_COMPUTATION)


def camera_from_flags(hres: int, fov_deg: float, vres: int = 0) -> CameraModel:
    """Camera built from CLI flags; the vertical resolution defaults to H."""
    return CameraModel(
        h_resolution=hres,
        v_resolution=vres if vres > 0 else hres,
        fov_rad=math.radians(fov_deg),
    )
