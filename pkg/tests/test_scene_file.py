import json
import math
import pytest
from config import settings
from core.exceptions import DomainError, SceneFileError
from tools.scene_file import load_scene, parse_scene

SCENE = {
    "camera": {"h_resolution": 640, "v_resolution": 120, "fov_deg": 13.0},
    "rig": {"baseline_m": 1.14, "right_yaw_deg": -0.05},
    "background_intensity": 30,
    "targets": [{"range_m": 40.0, "width_m": 2.0, "height_m": 1.5, "texture_seed": 9}],
    "frames": [{"t_s": 0.0}, {"t_s": 0.5, "ego_advance_m": 5.0}],
}


def scene_text(**overrides) -> str:
    document = dict(SCENE)
    document.update(overrides)
    return json.dumps(document)


def test_parse_converts_degrees():
    scene, frames = parse_scene(scene_text())
    assert scene.camera.h_resolution == 640
    assert scene.camera.fov_rad == pytest.approx(math.radians(13.0))
    assert scene.rig.right_yaw_rad == pytest.approx(math.radians(-0.05))
    assert scene.background_intensity == 30
    assert scene.targets[0].texture_seed == 9
    assert [f.ego_advance_m for f in frames] == [0.0, 5.0]


def test_defaults():
    document = {
        "camera": SCENE["camera"],
        "rig": {"baseline_m": 1.0},
        "targets": [{"range_m": 10.0, "width_m": 1.0, "height_m": 1.0}],
    }
    scene, frames = parse_scene(json.dumps(document))
    assert scene.rig.right_yaw_rad == 0.0
    assert scene.background_intensity == 64
    assert scene.targets[0].texture_seed == 1
    assert scene.targets[0].lateral_m == 0.0
    assert len(frames) == 1 and frames[0].t_s == 0.0


def test_background_defaults_to_settings(monkeypatch):
    monkeypatch.setattr(settings, "background_intensity", 20)
    document = dict(SCENE)
    del document["background_intensity"]
    scene, _ = parse_scene(json.dumps(document))
    assert scene.background_intensity == 20
    scene, _ = parse_scene(scene_text())
    assert scene.background_intensity == 30


@pytest.mark.parametrize(
    "overrides, fragment",
    [
        ({"camera": {"h_resolution": 640, "v_resolution": 120}}, "camera.fov_deg"),
        ({"rig": {"baseline_m": 1.0, "pitch_deg": 1.0}}, "rig.pitch_deg"),
        ({"rig": {"baseline_m": -1.0}}, "baseline_m"),
        ({"background_intensity": 300}, "background_intensity"),
        ({"frames": [{"t_s": 1.0}, {"t_s": 0.5}]}, "strictly increase"),
        ({"frames": [{"t_s": 0.0}, {"t_s": 1.0, "ego_advance_m": 40.0}]}, "ego advance"),
        ({"frames": []}, "at least one frame"),
    ],
)
def test_invalid_scenes(overrides, fragment):
    with pytest.raises(SceneFileError, match=fragment):
        parse_scene(scene_text(**overrides))


def test_malformed_json():
    with pytest.raises(SceneFileError):
        parse_scene("{not json")


def test_scene_file_error_is_domain_error(tmp_path):
    with pytest.raises(DomainError):
        load_scene(tmp_path / "missing.json")


def test_load_scene(tmp_path):
    path = tmp_path / "scene.json"
    path.write_text(scene_text())
    scene, frames = load_scene(path)
    assert len(scene.targets) == 1
    assert len(frames) == 2
