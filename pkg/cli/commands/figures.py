"""Curve generation commands: range, misalignment and target-size curves as CSV."""
from pathlib import Path
from typing import List
import typer
from cli.utils import camera_from_flags, emit, handle_errors
from config import get_logger, settings
from core.misalignment import MisalignmentDirection, fig2_curve
from core.ranging import fig1_curve, fig3_curve
from tools.csv_export import write_fig1_csv, write_fig2_csv, write_fig3_csv

logger = get_logger(__name__)

DEFAULT_FOV_DEG = 13.0
DEFAULT_HRES = 1920


def fig1(
    out: Path = typer.Option(..., "--out", help="CSV file to write"),
    baseline: float = typer.Option(1.14, "--baseline", help="Baseline d, meters"),
    fov_deg: float = typer.Option(DEFAULT_FOV_DEG, "--fov-deg", help="Field of view, degrees"),
    hres: int = typer.Option(DEFAULT_HRES, "--hres", help="Horizontal resolution, pixels"),
    dx_min: int = typer.Option(1, "--dx-min", help="First disparity, pixels"),
    dx_max: int = typer.Option(200, "--dx-max", help="Last disparity, pixels"),
):
    """
    Range against disparity.

    Examples:
        stereorange fig1 --baseline 1.1423 --out fig1.csv
    """
    with handle_errors():
        camera = camera_from_flags(hres, fov_deg)
        samples = fig1_curve(baseline, camera.h_resolution, camera.fov_rad, dx_min, dx_max)
        path = write_fig1_csv(samples, out)
        emit("rows", len(samples))
        emit("written", path)


def fig2(
    out: Path = typer.Option(..., "--out", help="CSV file to write"),
    baselines: List[float] = typer.Option(
        [0.60, 1.00, 1.14], "--baseline", help="Baseline d, meters (repeatable)"
    ),
    range_m: float = typer.Option(500.0, "--range", help="True range of the target, meters"),
    fov_deg: float = typer.Option(DEFAULT_FOV_DEG, "--fov-deg", help="Field of view, degrees"),
    hres: int = typer.Option(DEFAULT_HRES, "--hres", help="Horizontal resolution, pixels"),
    delta_min: float = typer.Option(0.0, "--delta-min", help="First misalignment, degrees"),
    delta_max: float = typer.Option(1.0, "--delta-max", help="Last misalignment, degrees"),
    delta_step: float = typer.Option(0.01, "--delta-step", help="Misalignment step, degrees"),
    direction: MisalignmentDirection = typer.Option(
        MisalignmentDirection.TOE_OUT, "--direction", help="Which way the right axis is turned"
    ),
):
    """
    Relative range error against camera axis misalignment, per baseline.

    Examples:
        stereorange fig2 --out fig2.csv
        stereorange fig2 --baseline 0.6 --baseline 1.14 --direction toe-in --out fig2.csv
    """
    with handle_errors():
        camera = camera_from_flags(hres, fov_deg)
        samples = fig2_curve(
            baselines,
            range_m,
            camera.h_resolution,
            camera.fov_rad,
            delta_min,
            delta_max,
            delta_step,
            direction=direction,
        )
        path = write_fig2_csv(samples, out)
        divergent = sum(1 for s in samples if not s.is_finite)
        emit("rows", len(samples))
        emit("divergent", divergent)
        emit("written", path)


def fig3(
    out: Path = typer.Option(..., "--out", help="CSV file to write"),
    baseline: float = typer.Option(1.14, "--baseline", help="Baseline d, meters"),
    fov_deg: float = typer.Option(DEFAULT_FOV_DEG, "--fov-deg", help="Field of view, degrees"),
    hres: int = typer.Option(DEFAULT_HRES, "--hres", help="Horizontal resolution, pixels"),
    widths: List[float] = typer.Option(
        [0.5, 1.0, 2.0, 4.0], "--width", help="Target width, meters (repeatable)"
    ),
    range_min: float = typer.Option(10.0, "--range-min", help="First range, meters"),
    range_max: float = typer.Option(500.0, "--range-max", help="Last range, meters"),
    range_step: float = typer.Option(10.0, "--range-step", help="Range step, meters"),
    kappa: float = typer.Option(
        settings.size_kappa_px2, "--kappa", help="Boundary localization constant, px^2"
    ),
):
    """
    Target-size dependent error against range, per target width.

    Examples:
        stereorange fig3 --out fig3.csv
        stereorange fig3 --width 0.5 --width 2 --range-max 300 --out fig3.csv
    """
    with handle_errors():
        camera = camera_from_flags(hres, fov_deg)
        samples = fig3_curve(camera, baseline, widths, range_min, range_max, range_step, kappa)
        path = write_fig3_csv(samples, out)
        unmeasurable = sum(1 for s in samples if not s.is_finite)
        emit("rows", len(samples))
        emit("unmeasurable", unmeasurable)
        emit("written", path)
