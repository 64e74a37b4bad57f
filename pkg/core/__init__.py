"""Core package for stereorange."""
from core.geometry import CameraModel, StereoRig, WorldPoint, ProjectionPair, project_pair
from core.ranging import Disparity, RangeEstimate, ErrorSample, SampleMarker
from core.misalignment import MisalignmentDirection, MisalignmentResult
from core.matcher import Image, Scene, TargetSpec, BoundingBox, RenderedPair
from core.pipeline import FrameSpec, FrameEstimate, WarningEvent

__all__ = [
    "CameraModel",
    "StereoRig",
    "WorldPoint",
    "ProjectionPair",
    "project_pair",
    "Disparity",
    "RangeEstimate",
    "ErrorSample",
    "SampleMarker",
    "MisalignmentDirection",
    "MisalignmentResult",
    "Image",
    "Scene",
    "TargetSpec",
    "BoundingBox",
    "RenderedPair",
    "FrameSpec",
    "FrameEstimate",
    "WarningEvent",
]
