"""CLI commands package for stereorange."""
