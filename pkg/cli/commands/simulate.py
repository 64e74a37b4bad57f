"""Simulation commands: render a scene file, match, range and warn."""
from collections import Counter
from pathlib import Path
from typing import List, Set, Tuple
import typer
from rich.table import Table
from rich import box
from cli.utils import EXIT_COMPUTATION, console, emit, fail, handle_errors
from config import get_logger, settings
from core.pipeline import FrameEstimate, SkippedEstimate, closing_warnings, iter_frames
from tools.csv_export import write_estimates_csv, write_warnings_csv
from tools.pgm import write_pgm
from tools.scene_file import load_scene

logger = get_logger(__name__)


def _run_scene(
    scene_path: Path, out_dir: Path, workers: int
) -> Tuple[List[FrameEstimate], List[SkippedEstimate]]:
    """Render every frame to PGM and write estimates.csv."""
    scene, frames = load_scene(scene_path)
    out_dir.mkdir(parents=True, exist_ok=True)
    estimates: List[FrameEstimate] = []
    skipped: List[SkippedEstimate] = []
    for result in iter_frames(scene, frames, workers, settings.search_fraction):
        write_pgm(result.pair.left, out_dir / f"left_{result.frame_index:03d}.pgm")
        write_pgm(result.pair.right, out_dir / f"right_{result.frame_index:03d}.pgm")
        estimates.extend(result.estimates)
        skipped.extend(result.skipped)
    write_estimates_csv(estimates, out_dir / "estimates.csv")
    logger.info(f"Simulation written to {out_dir}")
    emit("frames", len(frames))
    emit("estimates", len(estimates))
    emit("skipped", len(skipped))
    return estimates, skipped


def simulate(
    scene: Path = typer.Option(..., "--scene", help="Scene file (JSON)"),
    out_dir: Path = typer.Option(..., "--out-dir", help="Directory for images and CSV"),
    workers: int = typer.Option(settings.workers, "--workers", min=1, help="Frame threads"),
):
    """
    Render a scene's frames, block-match every target and range it.

    Writes left_NNN.pgm, right_NNN.pgm and estimates.csv.

    Examples:
        stereorange simulate --scene scene.json --out-dir out/
    """
    with handle_errors():
        _, skipped = _run_scene(scene, out_dir, workers)
    if skipped:
        fail(_skip_summary(skipped), EXIT_COMPUTATION)


def track(
    scene: Path = typer.Option(..., "--scene", help="Scene file (JSON)"),
    out_dir: Path = typer.Option(..., "--out-dir", help="Directory for images and CSV"),
    ttc_threshold: float = typer.Option(
        settings.ttc_threshold_s, "--ttc-threshold", help="Warning threshold, seconds"
    ),
    workers: int = typer.Option(settings.workers, "--workers", min=1, help="Frame threads"),
):
    """
    Simulate a scene and raise closing warnings when time-to-collision drops
    below the threshold.

    Writes everything `simulate` writes plus warnings.csv, and shows the
    nearest estimated range per frame.

    Examples:
        stereorange track --scene scene.json --out-dir out/ --ttc-threshold 2.5
    """
    with handle_errors():
        estimates, skipped = _run_scene(scene, out_dir, workers)
        events = closing_warnings(estimates, ttc_threshold)
        write_warnings_csv(events, out_dir / "warnings.csv")
        emit("warnings", len(events))
        _show_driver_table(estimates, {w.t_s for w in events})
    if skipped:
        fail(_skip_summary(skipped), EXIT_COMPUTATION)


def _skip_summary(skipped: List[SkippedEstimate]) -> str:
    """One-line count of skipped estimates per reason, e.g. ``3 estimate(s) skipped (out-of-view: 3)``."""
    counts = Counter(s.reason.value for s in skipped)
    reasons = ", ".join(f"{reason}: {n}" for reason, n in sorted(counts.items()))
    return f"{len(skipped)} estimate(s) skipped ({reasons})"


def _show_driver_table(estimates: List[FrameEstimate], warned_times: Set[float]) -> None:
    """Nearest estimated range per frame, as a dashboard would show it."""
    nearest = {}
    for estimate in estimates:
        current = nearest.get(estimate.t_s)
        if current is None or estimate.range_m < current.range_m:
            nearest[estimate.t_s] = estimate

    table = Table(title="Nearest target", box=box.ROUNDED, header_style="bold cyan")
    table.add_column("t, s", justify="right")
    table.add_column("target", justify="right")
    table.add_column("range, m", justify="right")
    table.add_column("warning")
    for t_s, estimate in nearest.items():
        table.add_row(
            f"{t_s:.6g}",
            str(estimate.target_index),
            f"{estimate.range_m:.6g}",
            "CLOSING" if t_s in warned_times else "",
        )
    console.print(table)
