"""Range error caused by non-parallel optical axes.

The on-axis point (0, 0, r) is projected exactly through the yawed rig and
the perturbed continuous disparity is ranged as if the axes were parallel.
No small-angle approximation enters the definition; the small-angle shift
f*tan(delta) is only offered as a predictor.
"""
import math
from enum import Enum
from typing import List, Optional, Sequence, Union
from pydantic import BaseModel, ConfigDict
from core.exceptions import DomainError, ProjectionUndefinedError
from core.geometry import CameraModel, StereoRig, WorldPoint, continuous_disparity, focal_pixels
from core.ranging import ErrorSample, SampleMarker, sweep_grid
from config.logging import get_logger

logger = get_logger(__name__)


class MisalignmentDirection(str, Enum):
    """Which way the right optical axis is turned."""
    TOE_OUT = "toe-out"
    TOE_IN = "toe-in"

    def yaw_rad(self, angle_deg: float) -> float:
        """Signed right-camera yaw for a non-negative misalignment angle."""
        sign = -1.0 if self is MisalignmentDirection.TOE_OUT else 1.0
        return sign * math.radians(angle_deg)


class MisalignmentResult(BaseModel):
    """Measured range of an on-axis point seen through a yawed rig."""

    model_config = ConfigDict(frozen=True)

    delta_rad: float
    baseline_m: float
    true_range_m: float
    measured_range_m: Union[float, SampleMarker]
    rel_error: Union[float, SampleMarker]

    @property
    def divergent(self) -> bool:
        return self.rel_error is SampleMarker.DIVERGENT


def misalignment_range_error(rig: StereoRig, r_true: float) -> MisalignmentResult:
    """Range error of the on-axis point at ``r_true`` for the rig's yaw.

    The measured range is the ranging formula applied to the perturbed
    continuous disparity D'. It is computed as r_true * D / D', with D the
    disparity through the same rig with parallel axes, so zero yaw gives
    zero error exactly. D' <= 0 (or a point behind the yawed camera) is
    reported as divergent.
    """
    if not r_true > 0:
        raise DomainError(f"range must be positive, got {r_true}")
    point = WorldPoint(x_m=0.0, y_m=0.0, z_m=r_true)
    divergent = MisalignmentResult(
        delta_rad=rig.right_yaw_rad,
        baseline_m=rig.baseline_m,
        true_range_m=r_true,
        measured_range_m=SampleMarker.DIVERGENT,
        rel_error=SampleMarker.DIVERGENT,
    )

    try:
        perturbed = continuous_disparity(rig, point)
    except ProjectionUndefinedError:
        logger.debug(f"yaw {rig.right_yaw_rad} rad: point behind the right camera")
        return divergent
    if perturbed <= 0.0:
        logger.debug(f"yaw {rig.right_yaw_rad} rad: disparity {perturbed:.4f} px, divergent")
        return divergent

    ideal = continuous_disparity(rig.aligned(), point)
    ratio = ideal / perturbed
    return MisalignmentResult(
        delta_rad=rig.right_yaw_rad,
        baseline_m=rig.baseline_m,
        true_range_m=r_true,
        measured_range_m=r_true * ratio,
        rel_error=ratio - 1.0,
    )


def small_angle_disparity_shift(camera: CameraModel, delta_rad: float) -> float:
    """Approximate disparity shift f*tan|delta| caused by a yaw, pixels."""
    return focal_pixels(camera) * math.tan(abs(delta_rad))


def predicted_divergence_rad(d: float, r: float) -> float:
    """Yaw magnitude at which the small-angle toe-out shift equals f*d/r."""
    if not (d > 0 and r > 0):
        raise DomainError("baseline and range must be positive")
    return math.atan(d / r)


def fig2_curve(
    baselines: Sequence[float],
    r: float,
    H: int,
    alpha: float,
    delta_lo_deg: float,
    delta_hi_deg: float,
    delta_step_deg: float,
    direction: MisalignmentDirection = MisalignmentDirection.TOE_OUT,
    v_resolution: Optional[int] = None,
) -> List[ErrorSample]:
    """Relative range error against misalignment angle, one curve per baseline.

    Angles are non-negative magnitudes in degrees; ``direction`` gives the
    sign of the yaw. Samples past the divergence point carry the
    ``DIVERGENT`` marker.
    """
    if not baselines:
        raise DomainError("at least one baseline is required")
    if delta_lo_deg < 0:
        raise DomainError(f"misalignment angles must be non-negative, got {delta_lo_deg}")
    camera = CameraModel(
        h_resolution=H,
        v_resolution=v_resolution if v_resolution is not None else H,
        fov_rad=alpha,
    )
    angles = sweep_grid(delta_lo_deg, delta_hi_deg, delta_step_deg)
    samples = []
    for baseline in baselines:
        for angle in angles:
            rig = StereoRig(
                camera=camera,
                baseline_m=baseline,
                right_yaw_rad=direction.yaw_rad(angle),
            )
            result = misalignment_range_error(rig, r)
            if result.divergent:
                samples.append(
                    ErrorSample(abscissa=angle, group_key=baseline, marker=SampleMarker.DIVERGENT)
                )
            else:
                samples.append(ErrorSample(abscissa=angle, group_key=baseline, value=result.rel_error))
    logger.info(
        f"Misalignment curve: {len(baselines)} baselines x {len(angles)} angles ({direction.value})"
    )
    return samples
