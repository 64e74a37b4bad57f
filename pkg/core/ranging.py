"""Closed-form distance and error formulas for a rectified stereo pair.

Ranges follow r = d*H / (tan(alpha) * dx), equivalently r = f*d / dx with
f = H / tan(alpha). Disparities on the measurement path are integer pixels;
continuous disparity only appears as an analytical intermediate.
"""
import math
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Union
from pydantic import BaseModel, ConfigDict, Field
from core.exceptions import DomainError, NonPositiveDisparityError
from core.geometry import CameraModel, focal_pixels
from config.logging import get_logger

logger = get_logger(__name__)


class SampleMarker(str, Enum):
    """Explicit stand-ins for samples that have no numeric value."""
    DIVERGENT = "divergent"
    UNMEASURABLE = "unmeasurable"


class Disparity(BaseModel):
    """Integer pixel difference dx = x1 - x2."""

    model_config = ConfigDict(frozen=True)

    px: int


class RangeEstimate(BaseModel):
    """Distance r_i with the quantization error at its disparity."""

    model_config = ConfigDict(frozen=True)

    range_m: float = Field(..., gt=0.0)
    eps_quantization: float = Field(..., gt=0.0, le=0.5)


class ErrorSample(BaseModel):
    """One plotted point of a range or error curve.

    ``value`` is None exactly when ``marker`` is set.
    """

    model_config = ConfigDict(frozen=True)

    abscissa: float
    group_key: float
    value: Optional[float] = None
    marker: Optional[SampleMarker] = None

    @property
    def is_finite(self) -> bool:
        return self.marker is None


DisparityLike = Union[Disparity, int]


def _px(dx: DisparityLike) -> int:
    if isinstance(dx, Disparity):
        px = dx.px
    elif isinstance(dx, bool) or not float(dx).is_integer():
        raise DomainError(f"disparity must be a whole number of pixels, got {dx!r}")
    else:
        px = int(dx)
    if px <= 0:
        raise NonPositiveDisparityError(f"disparity must be ≥ 1, got {px}")
    return px


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise DomainError(f"{name} must be positive, got {value}")


def _range_constant(d: float, H: float, alpha: float) -> float:
    """C = d*H / tan(alpha), so that r(n) = C / n."""
    _check_positive(baseline=d, h_resolution=H)
    if not 0.0 < alpha < math.pi / 2:
        raise DomainError(f"field of view must lie in (0, pi/2) rad, got {alpha}")
    return d * H / math.tan(alpha)


def range_from_disparity(d: float, H: float, alpha: float, dx: DisparityLike) -> RangeEstimate:
    """Distance to a point seen with disparity ``dx`` (integer pixels)."""
    px = _px(dx)
    return RangeEstimate(
        range_m=_range_constant(d, H, alpha) / px,
        eps_quantization=quantization_error(px),
    )


def range_eq1(f_px: float, d: float, dx: DisparityLike) -> float:
    """Distance from focal length in pixels: r = f*d / dx."""
    px = _px(dx)
    _check_positive(focal_length=f_px, baseline=d)
    return f_px * d / px


def range_from_continuous(d: float, H: float, alpha: float, disparity_px: float) -> float:
    """Distance for a continuous (unquantized) disparity."""
    if not disparity_px > 0:
        raise NonPositiveDisparityError(f"disparity must be positive, got {disparity_px}")
    return _range_constant(d, H, alpha) / disparity_px


def disparity_for_range(d: float, H: float, alpha: float, r: float) -> float:
    """Continuous disparity at which a point ``r`` meters away is seen."""
    _check_positive(range=r)
    return _range_constant(d, H, alpha) / r


def quantization_error(dx: DisparityLike) -> float:
    """Relative gap between the ranges at disparities n and n+1.

    With r(n) = C/n the gap (r(n) - r(n+1)) / r(n) equals 1/(n+1) for every rig.
    """
    return 1.0 / (_px(dx) + 1)


def range_step(d: float, H: float, alpha: float, dx: DisparityLike) -> float:
    """Absolute distance between the ranges at disparities n and n+1."""
    px = _px(dx)
    c = _range_constant(d, H, alpha)
    return c / px - c / (px + 1)


def min_reliable_disparity(sensitivity: float) -> int:
    """Smallest disparity whose one-pixel step changes the range by at most ``sensitivity``."""
    if not 0.0 < sensitivity < 1.0:
        raise DomainError(f"sensitivity must lie in (0, 1), got {sensitivity}")
    n = max(1, math.ceil(1.0 / sensitivity - 1.0))
    # settle float rounding of the closed form against the error function itself
    while quantization_error(n) > sensitivity:
        n += 1
    while n > 1 and quantization_error(n - 1) <= sensitivity:
        n -= 1
    return n


def design_baseline(r_max: float, alpha: float, H: float, dx_min: int) -> float:
    """Baseline that puts a point at ``r_max`` exactly at disparity ``dx_min``."""
    _check_positive(range=r_max, h_resolution=H)
    if not 0.0 < alpha < math.pi / 2:
        raise DomainError(f"field of view must lie in (0, pi/2) rad, got {alpha}")
    if dx_min < 0:
        raise DomainError(f"disparity must be non-negative, got {dx_min}")
    return r_max * math.tan(alpha) * dx_min / H


def max_reliable_range(d: float, H: float, alpha: float, sensitivity: float) -> float:
    """Farthest range still measured at or above the reliable disparity."""
    return range_from_disparity(d, H, alpha, min_reliable_disparity(sensitivity)).range_m


def size_dependent_error(
    camera: CameraModel,
    d: float,
    target_width_m: float,
    r: float,
    kappa: float = 32.0,
) -> Union[float, SampleMarker]:
    """Worst-case relative range error caused by imprecise target boundaries.

    A target of apparent width s pixels has its boundaries located to within
    p = max(1, ceil(kappa / s)) pixels; underestimating the disparity by p
    overestimates the range by p / (D - p). Returns ``UNMEASURABLE`` once the
    perturbation swallows the whole disparity.
    """
    _check_positive(target_width=target_width_m, range=r, kappa=kappa)
    apparent_px = focal_pixels(camera) * target_width_m / r
    perturbation = max(1, math.ceil(kappa / apparent_px))
    true_disparity = disparity_for_range(d, camera.h_resolution, camera.fov_rad, r)
    margin = true_disparity - perturbation
    if margin <= 0:
        return SampleMarker.UNMEASURABLE
    return perturbation / margin


def sweep_grid(lo: float, hi: float, step: float) -> List[float]:
    """Evenly spaced values lo, lo+step, ... up to and including hi."""
    if not step > 0:
        raise DomainError(f"step must be positive, got {step}")
    if hi < lo:
        raise DomainError(f"empty sweep range [{lo}, {hi}]")
    count = int(math.floor((hi - lo) / step + 1e-9))
    return [lo + k * step for k in range(count + 1)]


def fig1_curve(d: float, H: float, alpha: float, dx_lo: int, dx_hi: int) -> List[ErrorSample]:
    """Range against integer disparity over [dx_lo, dx_hi]."""
    if not 1 <= dx_lo <= dx_hi:
        raise DomainError(f"disparity range must satisfy 1 ≤ lo ≤ hi, got [{dx_lo}, {dx_hi}]")
    samples = [
        ErrorSample(
            abscissa=n,
            group_key=d,
            value=range_from_disparity(d, H, alpha, n).range_m,
        )
        for n in range(dx_lo, dx_hi + 1)
    ]
    logger.info(f"Range curve: {len(samples)} samples, baseline {d} m")
    return samples


def fig3_curve(
    camera: CameraModel,
    d: float,
    widths: Sequence[float],
    r_lo: float,
    r_hi: float,
    r_step: float,
    kappa: float = 32.0,
) -> List[ErrorSample]:
    """Target-size error against range, one family member per width."""
    if not widths:
        raise DomainError("at least one target width is required")
    _check_positive(range=r_lo)
    ranges = sweep_grid(r_lo, r_hi, r_step)
    samples = []
    for width in widths:
        for r in ranges:
            error = size_dependent_error(camera, d, width, r, kappa)
            samples.append(_sample(r, width, error))
    logger.info(f"Size error curve: {len(widths)} widths x {len(ranges)} ranges")
    return samples


def _sample(abscissa: float, group_key: float, value: Union[float, SampleMarker]) -> ErrorSample:
    if isinstance(value, SampleMarker):
        return ErrorSample(abscissa=abscissa, group_key=group_key, marker=value)
    return ErrorSample(abscissa=abscissa, group_key=group_key, value=value)


def group_samples(samples: Iterable[ErrorSample]) -> Dict[float, List[ErrorSample]]:
    """Split a family of curves by group key, keeping sweep order."""
    groups: Dict[float, List[ErrorSample]] = {}
    for sample in samples:
        groups.setdefault(sample.group_key, []).append(sample)
    return groups
