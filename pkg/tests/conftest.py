"""Shared fixtures: the 1920 px, 13 degree camera used throughout the analysis."""
import math
import pytest
from core.geometry import CameraModel, StereoRig

REF_HRES = 1920
REF_FOV_RAD = math.radians(13.0)
REF_BASELINE = 1.14
DESIGNED_BASELINE = 1.1423


@pytest.fixture
def reference_camera() -> CameraModel:
    return CameraModel(h_resolution=REF_HRES, v_resolution=1080, fov_rad=REF_FOV_RAD)


@pytest.fixture
def reference_rig(reference_camera: CameraModel) -> StereoRig:
    return StereoRig(camera=reference_camera, baseline_m=REF_BASELINE)
