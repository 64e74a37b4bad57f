"""Frame-sequence processing and the closing-rate warning.

Every frame renders the scene advanced by the ego motion, block-matches each
target's left ground-truth box against the right view, and converts the
matched disparity to a range. Estimates that cannot be produced are reported
as skipped, never raised.
"""
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence
from pydantic import BaseModel, ConfigDict, Field
from core.exceptions import DomainError, NoOverlapError, NonPositiveDisparityError
from core.matcher import RenderedPair, Scene, block_match, render_pair
from core.ranging import range_from_disparity
from config.logging import get_logger, log_duration

logger = get_logger(__name__)

DEFAULT_SEARCH_FRACTION = 0.25
DEFAULT_TTC_THRESHOLD_S = 2.0


class FrameSpec(BaseModel):
    """One time step: the ego vehicle has advanced ``ego_advance_m`` since t=0."""

    model_config = ConfigDict(frozen=True)

    t_s: float
    ego_advance_m: float = 0.0


class FrameEstimate(BaseModel):
    """Range measured for one target in one frame, next to its true range."""

    model_config = ConfigDict(frozen=True)

    t_s: float
    target_index: int
    disparity_px: int
    range_m: float = Field(..., gt=0.0)
    true_range_m: float


class SkipReason(str, Enum):
    """Why a target produced no estimate in a frame."""
    OUT_OF_VIEW = "out-of-view"
    NO_OVERLAP = "no-overlap"
    NON_POSITIVE_DISPARITY = "non-positive-disparity"


class SkippedEstimate(BaseModel):
    """A target left unranged in one frame."""

    model_config = ConfigDict(frozen=True)

    t_s: float
    target_index: int
    reason: SkipReason
    true_range_m: float


class FrameResult(BaseModel):
    """Everything produced for one frame."""

    model_config = ConfigDict(frozen=True)

    frame_index: int
    t_s: float
    pair: RenderedPair
    estimates: List[FrameEstimate]
    skipped: List[SkippedEstimate]


class WarningEvent(BaseModel):
    """Closing warning: a target approaching with time-to-collision below the threshold."""

    model_config = ConfigDict(frozen=True)

    t_s: float
    target_index: int
    closing_speed_mps: float = Field(..., gt=0.0)
    ttc_s: float


def validate_frames(frames: Sequence[FrameSpec]) -> None:
    if not frames:
        raise DomainError("at least one frame is required")
    for prev, cur in zip(frames, frames[1:]):
        if not cur.t_s > prev.t_s:
            raise DomainError(f"frame times must strictly increase ({prev.t_s} -> {cur.t_s})")


def process_frame(
    scene: Scene,
    frame: FrameSpec,
    frame_index: int = 0,
    search_fraction: float = DEFAULT_SEARCH_FRACTION,
) -> FrameResult:
    """
    Render, match and range every target of ``scene`` at one frame.

    Args:
        scene: Scene at t=0
        frame: Time step and cumulative ego advance
        frame_index: Position of the frame in its sequence
        search_fraction: Disparity search range as a fraction of the image width

    Returns:
        FrameResult with the rendered pair, the estimates and the skipped targets
    """
    current = scene.advanced(frame.ego_advance_m)
    with log_duration(logger, f"frame {frame_index} render"):
        pair = render_pair(current)
    camera = current.camera
    d_max = int(camera.h_resolution * search_fraction)

    estimates: List[FrameEstimate] = []
    skipped: List[SkippedEstimate] = []
    for index, target in enumerate(current.targets):
        box = pair.left_boxes[index]
        reason: Optional[SkipReason] = None
        disparity = 0
        if box is None:
            reason = SkipReason.OUT_OF_VIEW
        else:
            try:
                disparity = block_match(pair.left, pair.right, box, d_max)
                estimate = range_from_disparity(
                    current.rig.baseline_m, camera.h_resolution, camera.fov_rad, disparity
                )
            except NoOverlapError:
                reason = SkipReason.NO_OVERLAP
            except NonPositiveDisparityError:
                reason = SkipReason.NON_POSITIVE_DISPARITY

        if reason is not None:
            logger.warning(f"t={frame.t_s}s target {index}: estimate skipped ({reason.value})")
            skipped.append(
                SkippedEstimate(
                    t_s=frame.t_s,
                    target_index=index,
                    reason=reason,
                    true_range_m=target.range_m,
                )
            )
            continue

        logger.debug(
            f"t={frame.t_s}s target {index}: dx={disparity}px r={estimate.range_m:.3f}m "
            f"(true {target.range_m:.3f}m)"
        )
        estimates.append(
            FrameEstimate(
                t_s=frame.t_s,
                target_index=index,
                disparity_px=disparity,
                range_m=estimate.range_m,
                true_range_m=target.range_m,
            )
        )

    return FrameResult(
        frame_index=frame_index,
        t_s=frame.t_s,
        pair=pair,
        estimates=estimates,
        skipped=skipped,
    )


def iter_frames(
    scene: Scene,
    frames: Sequence[FrameSpec],
    workers: int = 1,
    search_fraction: float = DEFAULT_SEARCH_FRACTION,
) -> Iterator[FrameResult]:
    """
    Frame results in frame order, computed on up to ``workers`` threads.

    Raises:
        DomainError: The frame list is invalid or the ego motion reaches a target
    """
    validate_frames(frames)
    # fail before any rendering if the ego motion runs into a target
    for frame in frames:
        scene.advanced(frame.ego_advance_m)

    if workers <= 1:
        for index, frame in enumerate(frames):
            yield process_frame(scene, frame, index, search_fraction)
        return

    with ThreadPoolExecutor(max_workers=workers) as executor:
        yield from executor.map(
            lambda item: process_frame(scene, item[1], item[0], search_fraction),
            enumerate(frames),
        )


def run_sequence(
    scene: Scene,
    frames: Sequence[FrameSpec],
    workers: int = 1,
    search_fraction: float = DEFAULT_SEARCH_FRACTION,
) -> List[FrameEstimate]:
    """Per-frame, per-target range estimates in frame order."""
    estimates: List[FrameEstimate] = []
    for result in iter_frames(scene, frames, workers, search_fraction):
        estimates.extend(result.estimates)
    logger.info(f"Sequence processed: {len(frames)} frame(s), {len(estimates)} estimate(s)")
    return estimates


def closing_warnings(
    estimates: Sequence[FrameEstimate],
    ttc_threshold_s: float = DEFAULT_TTC_THRESHOLD_S,
) -> List[WarningEvent]:
    """Warnings for targets closing in faster than ``ttc_threshold_s`` allows.

    Consecutive estimates of the same target give a closing speed
    v = (r_prev - r_cur) / (t_cur - t_prev) and ttc = r_cur / v; an event is
    emitted when v > 0 and ttc < threshold.
    """
    if not ttc_threshold_s > 0:
        raise DomainError(f"ttc threshold must be positive, got {ttc_threshold_s}")
    previous: Dict[int, FrameEstimate] = {}
    events: List[WarningEvent] = []
    for current in estimates:
        prev = previous.get(current.target_index)
        previous[current.target_index] = current
        if prev is None:
            continue
        dt = current.t_s - prev.t_s
        if dt <= 0:
            raise DomainError(
                f"target {current.target_index}: timestamps must increase "
                f"({prev.t_s} -> {current.t_s})"
            )
        speed = (prev.range_m - current.range_m) / dt
        if speed <= 0:
            continue
        ttc = current.range_m / speed
        if ttc < ttc_threshold_s:
            events.append(
                WarningEvent(
                    t_s=current.t_s,
                    target_index=current.target_index,
                    closing_speed_mps=speed,
                    ttc_s=ttc,
                )
            )
    return events
