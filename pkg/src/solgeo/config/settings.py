"""Application configuration using Pydantic settings."""

from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables (prefix ``SOLGEO_``)."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="SOLGEO_",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = Field(default="solgeo", description="Application name")
    app_version: str = Field(default="0.1.0", description="Application version")

    # Execution
    jobs: int = Field(default=1, ge=1, description="Worker count for grid sweeps (--jobs)")
    seed: int = Field(default=0, description="Seed for randomly sampled verification points")

    # Logging Configuration
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="WARNING", description="Logging level"
    )
    log_format: str = Field(
        default="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        description="Log message format",
    )
    log_file: str | None = Field(default=None, description="Optional log file path")

    # Finite differences
    fd_step: float = Field(
        default=1e-5, gt=0, description="Central-difference step for ambient derivatives"
    )
    christoffel_step: float = Field(
        default=1e-4, gt=0, description="Central-difference step for induced Christoffel symbols"
    )
    profile_step: float = Field(
        default=1e-3, gt=0, description="Fixed RK4 step for the umbilical profile"
    )

    # Classification tolerances
    tol_totally_geodesic: float = Field(default=1e-6, gt=0, description="Threshold on |h|")
    tol_totally_umbilical: float = Field(
        default=1e-6, gt=0, description="Threshold on |h - lambda g|"
    )
    tol_parallel: float = Field(default=1e-4, gt=0, description="Threshold on |nabla h|")
    tol_codazzi: float = Field(
        default=1e-4, gt=0, description="Threshold on the antisymmetrized |nabla h|"
    )

    # Sampling
    grid_points: int = Field(default=5, ge=1, description="Samples per parameter axis")
    grid_margin: float = Field(
        default=0.05, ge=0, lt=0.5, description="Relative margin kept free at each box edge"
    )

    # Degeneracy guards
    rank_tolerance: float = Field(
        default=1e-12, gt=0, description="Minimum induced-metric determinant"
    )
    plane_tolerance: float = Field(
        default=1e-12, gt=0, description="Minimum sectional-curvature denominator"
    )
    cos_beta_guard: float = Field(
        default=0.01, gt=0, description="Smallest |cos beta| the umbilical profile may reach"
    )

    @property
    def base_dir(self) -> Path:
        """Get base directory of the project."""
        return Path(__file__).parent.parent.parent.parent

    @property
    def data_dir(self) -> Path:
        """Get data directory path."""
        return self.base_dir / "data"

    @property
    def families_dir(self) -> Path:
        """Directory the family data script writes into."""
        return self.data_dir / "families"


# Global settings instance
settings = Settings()
