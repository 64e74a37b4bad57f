"""
stereorange - stereo rangefinding toolkit

Disparity-to-distance formulas, stereo rig design, error models and a
synthetic stereo simulator with block matching.
"""

__version__ = "0.1.0"
__author__ = "stereorange team"
__description__ = "Stereo rangefinding toolkit: disparity ranging, rig design and error models"
