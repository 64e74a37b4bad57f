"""Settings management for stereorange using Pydantic."""
from typing import Tuple, Type
from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    """Tunable defaults shared by the library and the CLI.

    Only explicit init arguments are honored: the CLI takes all of its
    configuration from flags and the scene file, never from the environment.
    """

    # Logging
    debug_mode: bool = Field(default=False, description="Enable debug mode")
    log_level: str = Field(default="INFO", description="Logging level")

    # Ranging
    sensitivity: float = Field(
        default=0.05,
        gt=0.0,
        lt=1.0,
        description="Largest acceptable relative range change per one-pixel disparity step",
    )
    size_kappa_px2: float = Field(
        default=32.0,
        gt=0.0,
        description="Boundary localization constant of the target-size error model (px^2)",
    )

    # Simulation
    search_fraction: float = Field(
        default=0.25,
        gt=0.0,
        le=1.0,
        description="Disparity search range as a fraction of the horizontal resolution",
    )
    background_intensity: int = Field(default=64, ge=0, le=255, description="Scene background")
    workers: int = Field(default=1, ge=1, description="Threads used for frame processing")

    # Warnings
    ttc_threshold_s: float = Field(
        default=2.0,
        gt=0.0,
        description="Time-to-collision below which a closing warning is raised",
    )

    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="forbid",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


# Global settings instance
settings = Settings()
