"""Pinhole projection for a two-camera rig with optional yaw misalignment.

Frame conventions: the rig origin sits midway between the camera centers,
x points right, y down and z forward. The left camera is at (-d/2, 0, 0) looking
along +z; the right camera is at (+d/2, 0, 0) rotated by ``right_yaw_rad``
about the vertical axis. Negative yaw turns the right axis away from the left
camera (toe-out) and shrinks disparity; positive yaw is toe-in.

The focal length follows the ranging formula's convention f = H / tan(alpha),
with alpha the full horizontal field of view (no factor of two).
"""
import math
from enum import Enum
from typing import Tuple
from pydantic import BaseModel, ConfigDict, Field, model_validator
from core.exceptions import ProjectionUndefinedError


class CameraModel(BaseModel):
    """Resolution and horizontal field of view of one (of two identical) cameras."""

    model_config = ConfigDict(frozen=True)

    h_resolution: int = Field(..., ge=2, description="Horizontal resolution H in pixels")
    v_resolution: int = Field(..., ge=2, description="Vertical resolution in pixels")
    fov_rad: float = Field(
        ..., gt=0.0, lt=math.pi / 2, description="Horizontal field of view alpha in radians"
    )

    @classmethod
    def from_degrees(cls, h_resolution: int, v_resolution: int, fov_deg: float) -> "CameraModel":
        """
        Camera with its field of view given in degrees.

        Args:
            h_resolution: Image width in pixels
            v_resolution: Image height in pixels
            fov_deg: Horizontal field of view in degrees

        Returns:
            CameraModel with the angle converted to radians
        """
        return cls(
            h_resolution=h_resolution,
            v_resolution=v_resolution,
            fov_rad=math.radians(fov_deg),
        )

    @property
    def fov_deg(self) -> float:
        return math.degrees(self.fov_rad)

    @property
    def focal_px(self) -> float:
        return focal_pixels(self)


class StereoRig(BaseModel):
    """Two identical cameras a baseline apart, the right one possibly yawed."""

    model_config = ConfigDict(frozen=True)

    camera: CameraModel
    baseline_m: float = Field(..., gt=0.0, description="Distance d between camera centers")
    right_yaw_rad: float = Field(
        default=0.0, description="Yaw of the right optical axis; 0 means parallel axes"
    )

    @model_validator(mode="after")
    def _check_yaw(self) -> "StereoRig":
        if abs(self.right_yaw_rad) >= self.camera.fov_rad:
            raise ValueError("|right_yaw_rad| must be smaller than the field of view")
        return self

    def aligned(self) -> "StereoRig":
        """The same rig with parallel optical axes."""
        return self.model_copy(update={"right_yaw_rad": 0.0})

    def with_yaw(self, yaw_rad: float) -> "StereoRig":
        """The same rig with the right camera turned by ``yaw_rad`` (negative is toe-out)."""
        return StereoRig(camera=self.camera, baseline_m=self.baseline_m, right_yaw_rad=yaw_rad)

    def camera_x(self, side: "Side") -> float:
        half = self.baseline_m / 2.0
        return -half if side is Side.LEFT else half

    def camera_yaw(self, side: "Side") -> float:
        return 0.0 if side is Side.LEFT else self.right_yaw_rad


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class WorldPoint(BaseModel):
    """A point in the rig-centered frame, meters."""

    model_config = ConfigDict(frozen=True)

    x_m: float = 0.0
    y_m: float = 0.0
    z_m: float


class ProjectionPair(BaseModel):
    """Continuous image coordinates of one world point in both views."""

    model_config = ConfigDict(frozen=True)

    u_left: float
    u_right: float
    v: float

    @property
    def disparity(self) -> float:
        """Continuous disparity u_left - u_right."""
        return self.u_left - self.u_right

    @property
    def quantized_disparity(self) -> int:
        return quantize_coord(self.u_left) - quantize_coord(self.u_right)


def focal_pixels(camera: CameraModel) -> float:
    """Focal length in pixels, f = H / tan(alpha)."""
    return camera.h_resolution / math.tan(camera.fov_rad)


def to_camera_frame(rig: StereoRig, side: Side, p: WorldPoint) -> Tuple[float, float, float]:
    """Coordinates of ``p`` in the frame of one camera of the rig."""
    dx = p.x_m - rig.camera_x(side)
    yaw = rig.camera_yaw(side)
    if yaw == 0.0:
        return dx, p.y_m, p.z_m
    cos_d, sin_d = math.cos(yaw), math.sin(yaw)
    return cos_d * dx - sin_d * p.z_m, p.y_m, sin_d * dx + cos_d * p.z_m


def image_offsets(rig: StereoRig, side: Side, p: WorldPoint) -> Tuple[float, float]:
    """Image coordinates of ``p`` relative to the image center, pixels."""
    x_c, y_c, z_c = to_camera_frame(rig, side, p)
    if z_c <= 0.0:
        raise ProjectionUndefinedError(
            f"point ({p.x_m}, {p.y_m}, {p.z_m}) is behind the {side.value} camera"
        )
    f = focal_pixels(rig.camera)
    return f * x_c / z_c, f * y_c / z_c


def project(rig: StereoRig, side: Side, p: WorldPoint) -> Tuple[float, float]:
    """Continuous (u, v) image coordinates of ``p`` in one view."""
    du, dv = image_offsets(rig, side, p)
    camera = rig.camera
    return camera.h_resolution / 2.0 + du, camera.v_resolution / 2.0 + dv


def project_pair(rig: StereoRig, p: WorldPoint) -> ProjectionPair:
    """Project a world point into both views of the rig.

    The shared row ``v`` uses the left camera; with parallel axes both rows
    are identical.

    Raises:
        ProjectionUndefinedError: the point is not in front of both cameras.
    """
    if p.z_m <= 0.0:
        raise ProjectionUndefinedError(f"point depth must be positive, got {p.z_m}")
    u_left, v = project(rig, Side.LEFT, p)
    u_right, _ = project(rig, Side.RIGHT, p)
    return ProjectionPair(u_left=u_left, u_right=u_right, v=v)


def continuous_disparity(rig: StereoRig, p: WorldPoint) -> float:
    """Disparity of ``p`` computed from center-relative offsets.

    Equal to ``project_pair(rig, p).disparity`` up to rounding, without the
    cancellation against the image center.
    """
    if p.z_m <= 0.0:
        raise ProjectionUndefinedError(f"point depth must be positive, got {p.z_m}")
    du_left, _ = image_offsets(rig, Side.LEFT, p)
    du_right, _ = image_offsets(rig, Side.RIGHT, p)
    return du_left - du_right


def quantize_coord(u: float) -> int:
    """Pixel index containing continuous coordinate ``u`` (floor)."""
    return math.floor(u)
