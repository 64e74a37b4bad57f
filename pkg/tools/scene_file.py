"""JSON scene file loader.

Angles are given in degrees in the file and converted to radians on load.
Unknown fields are rejected; every loaded value is re-validated by the domain
types it feeds.
"""
import math
from pathlib import Path
from typing import List, Optional, Tuple, Union
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from core.exceptions import DomainError, SceneFileError
from core.geometry import CameraModel, StereoRig
from core.matcher import Scene, TargetSpec
from core.pipeline import FrameSpec, validate_frames
from config import get_logger, settings

logger = get_logger(__name__)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class CameraEntry(_Strict):
    h_resolution: int
    v_resolution: int
    fov_deg: float


class RigEntry(_Strict):
    baseline_m: float
    right_yaw_deg: float = 0.0


class TargetEntry(_Strict):
    range_m: float
    lateral_m: float = 0.0
    width_m: float
    height_m: float
    texture_seed: int = 1


class FrameEntry(_Strict):
    t_s: float
    ego_advance_m: float = 0.0


class SceneFile(_Strict):
    """On-disk scene description."""

    camera: CameraEntry
    rig: RigEntry
    background_intensity: Optional[int] = None
    targets: List[TargetEntry] = Field(default_factory=list)
    frames: List[FrameEntry] = Field(
        default_factory=lambda: [FrameEntry(t_s=0.0, ego_advance_m=0.0)]
    )

    def to_scene(self) -> Scene:
        camera = CameraModel.from_degrees(
            self.camera.h_resolution, self.camera.v_resolution, self.camera.fov_deg
        )
        rig = StereoRig(
            camera=camera,
            baseline_m=self.rig.baseline_m,
            right_yaw_rad=math.radians(self.rig.right_yaw_deg),
        )
        return Scene(
            camera=camera,
            rig=rig,
            background_intensity=(
                self.background_intensity
                if self.background_intensity is not None
                else settings.background_intensity
            ),
            targets=[TargetSpec(**t.model_dump()) for t in self.targets],
        )

    def to_frames(self) -> List[FrameSpec]:
        frames = [FrameSpec(t_s=f.t_s, ego_advance_m=f.ego_advance_m) for f in self.frames]
        validate_frames(frames)
        return frames


def parse_scene(text: str) -> Tuple[Scene, List[FrameSpec]]:
    """Scene and frame list from the JSON text of a scene file."""
    try:
        document = SceneFile.model_validate_json(text)
        scene = document.to_scene()
        frames = document.to_frames()
        for frame in frames:
            scene.advanced(frame.ego_advance_m)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "scene"
        raise SceneFileError(f"{where}: {first['msg']}") from e
    except DomainError as e:
        raise SceneFileError(str(e)) from e
    return scene, frames


def load_scene(path: Union[str, Path]) -> Tuple[Scene, List[FrameSpec]]:
    """Read and validate a scene file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SceneFileError(f"cannot read scene file {path}: {e.strerror}") from e
    scene, frames = parse_scene(text)
    logger.info(
        f"Scene loaded: {len(scene.targets)} target(s), {len(frames)} frame(s) from {path}"
    )
    return scene, frames
