"""File format tools for stereorange: PGM images, CSV exports and scene files."""
from tools.pgm import read_pgm, write_pgm
from tools.csv_export import (
    write_fig1_csv,
    write_fig2_csv,
    write_fig3_csv,
    write_estimates_csv,
    write_warnings_csv,
)
from tools.scene_file import SceneFile, load_scene

__all__ = [
    "read_pgm",
    "write_pgm",
    "write_fig1_csv",
    "write_fig2_csv",
    "write_fig3_csv",
    "write_estimates_csv",
    "write_warnings_csv",
    "SceneFile",
    "load_scene",
]
