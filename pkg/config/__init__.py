"""Configuration package for stereorange."""
from config.settings import Settings, settings
from config.logging import setup_logging, get_logger, log_duration

__all__ = ["Settings", "settings", "setup_logging", "get_logger", "log_duration"]
