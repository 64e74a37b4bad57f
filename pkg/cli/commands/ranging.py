"""Rig design and single-disparity ranging commands."""
import typer
from cli.utils import camera_from_flags, emit, handle_errors
from config import get_logger, settings
from core.ranging import (
    design_baseline,
    max_reliable_range,
    min_reliable_disparity,
    range_from_disparity,
    range_step,
)

logger = get_logger(__name__)


def design(
    range_m: float = typer.Option(..., "--range", help="Largest range to measure, meters"),
    fov_deg: float = typer.Option(..., "--fov-deg", help="Horizontal field of view, degrees"),
    hres: int = typer.Option(..., "--hres", help="Horizontal resolution, pixels"),
    sensitivity: float = typer.Option(
        settings.sensitivity,
        "--sensitivity",
        help="Largest relative range change per one-pixel disparity step",
    ),
):
    """
    Design a baseline: minimum reliable disparity, then the baseline that puts
    the farthest range at exactly that disparity.

    Examples:
        stereorange design --range 500 --fov-deg 13 --hres 1920
    """
    with handle_errors():
        camera = camera_from_flags(hres, fov_deg)
        dx_min = min_reliable_disparity(sensitivity)
        baseline = design_baseline(range_m, camera.fov_rad, camera.h_resolution, dx_min)
        logger.debug(f"design: dx_min={dx_min} baseline={baseline!r}")
        emit("min_disparity_px", dx_min)
        emit("baseline_m", baseline)
        emit(
            "max_range_m",
            max_reliable_range(baseline, camera.h_resolution, camera.fov_rad, sensitivity),
        )


def range_(
    baseline: float = typer.Option(..., "--baseline", help="Baseline d, meters"),
    fov_deg: float = typer.Option(..., "--fov-deg", help="Horizontal field of view, degrees"),
    hres: int = typer.Option(..., "--hres", help="Horizontal resolution, pixels"),
    disparity: int = typer.Option(..., "--disparity", help="Measured disparity, pixels"),
):
    """
    Range for an integer disparity, with its quantization error.

    Examples:
        stereorange range --baseline 1.1423 --fov-deg 13 --hres 1920 --disparity 19
    """
    with handle_errors():
        camera = camera_from_flags(hres, fov_deg)
        estimate = range_from_disparity(
            baseline, camera.h_resolution, camera.fov_rad, disparity
        )
        step = range_step(baseline, camera.h_resolution, camera.fov_rad, disparity)
        reliable = disparity >= min_reliable_disparity(settings.sensitivity)
        emit("range_m", estimate.range_m)
        emit("eps", estimate.eps_quantization)
        emit("range_step_m", step)
        emit("reliable", "yes" if reliable else "no")
