"""Synthetic stereo-pair renderer and integer-disparity SAD block matcher.

Targets are fronto-parallel textured rectangles centered on the horizontal
plane through the optical axes. The texture is anchored to the target surface,
so both views sample the same pattern shifted by the true disparity.
"""
import math
from functools import lru_cache
from typing import List, Optional, Tuple
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from core.exceptions import DomainError, NoOverlapError, ProjectionUndefinedError
from core.geometry import CameraModel, Side, StereoRig, WorldPoint, focal_pixels, project
from config.logging import get_logger

logger = get_logger(__name__)

TEXTURE_SIZE = 64
_MASK64 = (1 << 64) - 1
_ZERO_SEED = 0x9E3779B97F4A7C15
_XORSHIFT_MULTIPLIER = 0x2545F4914F6CDD1D


class Image(BaseModel):
    """8-bit grayscale image, row-major, top row first."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pixels: np.ndarray

    @field_validator("pixels")
    @classmethod
    def _check_pixels(cls, value: np.ndarray) -> np.ndarray:
        if value.ndim != 2 or value.dtype != np.uint8:
            raise ValueError("pixels must be a 2-D uint8 array")
        if value.shape[0] < 1 or value.shape[1] < 1:
            raise ValueError("image must not be empty")
        value.setflags(write=False)
        return value

    @classmethod
    def filled(cls, width: int, height: int, intensity: int) -> "Image":
        return cls(pixels=np.full((height, width), intensity, dtype=np.uint8))

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])


class TargetSpec(BaseModel):
    """A textured rectangle facing the rig."""

    model_config = ConfigDict(frozen=True)

    range_m: float = Field(..., gt=0.0, description="Depth z of the target plane")
    lateral_m: float = Field(default=0.0, description="x of the target center")
    width_m: float = Field(..., gt=0.0)
    height_m: float = Field(..., gt=0.0)
    texture_seed: int = Field(default=1, ge=0, le=_MASK64)

    def advanced(self, ego_advance_m: float) -> "TargetSpec":
        """The target as seen after the rig moved ``ego_advance_m`` forward."""
        remaining = self.range_m - ego_advance_m
        if remaining <= 0:
            raise DomainError(
                f"ego advance {ego_advance_m} m reaches a target at {self.range_m} m"
            )
        return self.model_copy(update={"range_m": remaining})


class Scene(BaseModel):
    """Synthetic world seen by a stereo rig."""

    model_config = ConfigDict(frozen=True)

    camera: CameraModel
    rig: StereoRig
    background_intensity: int = Field(default=64, ge=0, le=255)
    targets: List[TargetSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_camera(self) -> "Scene":
        if self.rig.camera != self.camera:
            raise ValueError("scene camera and rig camera must match")
        return self

    def painting_order(self) -> List[int]:
        """Target indices far to near, so nearer targets are painted last."""
        return sorted(range(len(self.targets)), key=lambda i: -self.targets[i].range_m)

    def advanced(self, ego_advance_m: float) -> "Scene":
        if ego_advance_m == 0:
            return self
        return self.model_copy(
            update={"targets": [t.advanced(ego_advance_m) for t in self.targets]}
        )


class BoundingBox(BaseModel):
    """Pixel bounds, inclusive-exclusive [min, max)."""

    model_config = ConfigDict(frozen=True)

    u_min: int
    u_max: int
    v_min: int
    v_max: int

    @model_validator(mode="after")
    def _check_extent(self) -> "BoundingBox":
        if self.u_max <= self.u_min or self.v_max <= self.v_min:
            raise ValueError("bounding box must not be empty")
        return self

    @property
    def width(self) -> int:
        return self.u_max - self.u_min

    @property
    def height(self) -> int:
        return self.v_max - self.v_min

    def clipped(self, width: int, height: int) -> Optional["BoundingBox"]:
        u_min, u_max = max(self.u_min, 0), min(self.u_max, width)
        v_min, v_max = max(self.v_min, 0), min(self.v_max, height)
        if u_max <= u_min or v_max <= v_min:
            return None
        return BoundingBox(u_min=u_min, u_max=u_max, v_min=v_min, v_max=v_max)


class RenderedPair(BaseModel):
    """Both views of a scene and the ground-truth box of every target per view."""

    model_config = ConfigDict(frozen=True)

    left: Image
    right: Image
    left_boxes: List[Optional[BoundingBox]]
    right_boxes: List[Optional[BoundingBox]]


def texture_value(seed: int, i: int, j: int) -> int:
    """Intensity of texel (i, j) of the 64x64 texture identified by ``seed``.

    One xorshift64* step over seed XOR (texel index + 1), top 8 bits.
    """
    state = seed & _MASK64
    if state == 0:
        state = _ZERO_SEED
    x = state ^ ((i % TEXTURE_SIZE) * TEXTURE_SIZE + (j % TEXTURE_SIZE) + 1)
    x ^= x >> 12
    x ^= (x << 25) & _MASK64
    x ^= x >> 27
    x = (x * _XORSHIFT_MULTIPLIER) & _MASK64
    return x >> 56


@lru_cache(maxsize=64)
def texture_table(seed: int) -> np.ndarray:
    """All 64x64 texel intensities of one texture, indexed [row, col]."""
    table = np.array(
        [
            [texture_value(seed, i, j) for j in range(TEXTURE_SIZE)]
            for i in range(TEXTURE_SIZE)
        ],
        dtype=np.uint8,
    )
    table.setflags(write=False)
    return table


def _target_corners(target: TargetSpec) -> Tuple[WorldPoint, WorldPoint]:
    half_w, half_h = target.width_m / 2.0, target.height_m / 2.0
    return (
        WorldPoint(x_m=target.lateral_m - half_w, y_m=-half_h, z_m=target.range_m),
        WorldPoint(x_m=target.lateral_m + half_w, y_m=half_h, z_m=target.range_m),
    )


def target_box(rig: StereoRig, side: Side, target: TargetSpec) -> Optional[BoundingBox]:
    """Pixels whose centers fall on the projected target, clipped to the image.

    Returns None when the target is outside the view or behind the camera.
    """
    low, high = _target_corners(target)
    try:
        u_lo, v_lo = project(rig, side, low)
        u_hi, v_hi = project(rig, side, high)
    except ProjectionUndefinedError:
        return None
    # pixel k is covered when its center k + 0.5 lies in [lo, hi)
    u_min, u_max = math.ceil(u_lo - 0.5), math.ceil(u_hi - 0.5)
    v_min, v_max = math.ceil(v_lo - 0.5), math.ceil(v_hi - 0.5)
    if u_max <= u_min or v_max <= v_min:
        return None
    box = BoundingBox(u_min=u_min, u_max=u_max, v_min=v_min, v_max=v_max)
    camera = rig.camera
    return box.clipped(camera.h_resolution, camera.v_resolution)


def _pixel_rays(camera: CameraModel, yaw: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-pixel ray directions (x, y, z) in the rig frame, z of the optical axis = 1."""
    f = focal_pixels(camera)
    a = (np.arange(camera.h_resolution, dtype=np.float64) + 0.5 - camera.h_resolution / 2.0) / f
    b = (np.arange(camera.v_resolution, dtype=np.float64) + 0.5 - camera.v_resolution / 2.0) / f
    if yaw == 0.0:
        dir_x, dir_z = a, np.ones_like(a)
    else:
        cos_d, sin_d = math.cos(yaw), math.sin(yaw)
        dir_x = cos_d * a + sin_d
        dir_z = -sin_d * a + cos_d
    return dir_x, b, dir_z


def _render_view(scene: Scene, side: Side) -> Image:
    camera = scene.camera
    pixels = np.full(
        (camera.v_resolution, camera.h_resolution), scene.background_intensity, dtype=np.uint8
    )
    dir_x, dir_y, dir_z = _pixel_rays(camera, scene.rig.camera_yaw(side))
    cam_x = scene.rig.camera_x(side)
    facing = dir_z > 0

    for index in scene.painting_order():
        target = scene.targets[index]
        # ray parameter reaching the target plane, per column
        t = np.zeros_like(dir_z)
        t[facing] = target.range_m / dir_z[facing]
        left_edge = target.lateral_m - target.width_m / 2.0
        tx = (cam_x + t * dir_x - left_edge) / target.width_m
        col_ok = facing & (tx >= 0.0) & (tx < 1.0)
        if not col_ok.any():
            continue
        # yaw turns about the vertical axis, so y_w = t * dir_y
        ty = (np.outer(dir_y, t) + target.height_m / 2.0) / target.height_m
        mask = (ty >= 0.0) & (ty < 1.0) & col_ok[np.newaxis, :]
        if not mask.any():
            continue
        texels = texture_table(target.texture_seed)
        rows = np.clip(np.floor(ty[mask] * TEXTURE_SIZE), 0, TEXTURE_SIZE - 1).astype(np.intp)
        col_index = np.clip(np.floor(tx * TEXTURE_SIZE), 0, TEXTURE_SIZE - 1).astype(np.intp)
        cols = np.broadcast_to(col_index[np.newaxis, :], mask.shape)[mask]
        pixels[mask] = texels[rows, cols]

    return Image(pixels=pixels)


def render_pair(scene: Scene) -> RenderedPair:
    """Render both views of ``scene`` with per-target ground-truth boxes."""
    left = _render_view(scene, Side.LEFT)
    right = _render_view(scene, Side.RIGHT)
    left_boxes = [target_box(scene.rig, Side.LEFT, t) for t in scene.targets]
    right_boxes = [target_box(scene.rig, Side.RIGHT, t) for t in scene.targets]
    logger.debug(
        f"Rendered {left.width}x{left.height} pair with {len(scene.targets)} target(s)"
    )
    return RenderedPair(left=left, right=right, left_boxes=left_boxes, right_boxes=right_boxes)


def block_match(left: Image, right: Image, box: BoundingBox, d_max: int) -> int:
    """Integer disparity of the left-image region ``box`` along its epipolar rows.

    cost(k) is the mean |L(u, v) - R(u - k, v)| over box pixels with u - k >= 0;
    the smallest-cost k in 0..d_max wins, ties going to the smaller k.

    Args:
        left: Left view
        right: Right view, same size as ``left``
        box: Region of the left view to match
        d_max: Largest disparity tried

    Returns:
        The winning disparity in pixels

    Raises:
        NoOverlapError: no candidate leaves a valid pixel to compare.
    """
    if d_max < 0:
        raise DomainError(f"d_max must be non-negative, got {d_max}")
    if left.pixels.shape != right.pixels.shape:
        raise DomainError("left and right images must have the same size")
    region = box.clipped(left.width, left.height)
    if region is None:
        raise NoOverlapError("bounding box lies outside the image")

    rows = slice(region.v_min, region.v_max)
    left_block = left.pixels[rows, region.u_min:region.u_max].astype(np.int32)
    right_rows = right.pixels[rows].astype(np.int32)

    best_k: Optional[int] = None
    best_total, best_count = 0, 1
    for k in range(d_max + 1):
        start = max(region.u_min, k)
        if start >= region.u_max:
            break
        window = left_block[:, start - region.u_min:]
        shifted = right_rows[:, start - k:region.u_max - k]
        total = int(np.abs(window - shifted).sum())
        count = window.size
        # exact comparison of total/count against best_total/best_count
        if best_k is None or total * best_count < best_total * count:
            best_k, best_total, best_count = k, total, count

    if best_k is None:
        raise NoOverlapError("no disparity candidate overlaps the image")
    logger.debug(f"Block match over {region.width}x{region.height} px: k={best_k}")
    return best_k
