"""CLI package for stereorange."""

__version__ = "0.1.0"
