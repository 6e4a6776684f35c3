"""Pydantic schemas for jobs, reports and classification results."""

from enum import Enum
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, Field, ValidationError, computed_field, model_validator

from ..config.settings import settings
from ..utils.exceptions import ConfigurationError


class VerifyScope(str, Enum):
    """Oracle suites selectable by ``verify``."""

    GROUP = "group"
    CONNECTION = "connection"
    CURVATURE = "curvature"
    COMPLEX = "complex"
    FORMS = "forms"
    ALL = "all"


class FamilyName(str, Enum):
    """Hypersurface families with a constructor."""

    ZPLANE = "zplane"
    TPLANE = "tplane"
    VPLANE = "vplane"
    CYLINDER = "cylinder"
    UMBILICAL = "umbilical"


class HypersurfaceClass(str, Enum):
    """The four hypersurface classes, strongest first."""

    TOTALLY_GEODESIC = "totally_geodesic"
    TOTALLY_UMBILICAL = "totally_umbilical"
    PARALLEL = "parallel"
    CODAZZI = "codazzi"


# ============================================================================
# Sampling and thresholds
# ============================================================================


class Tolerances(BaseModel):
    """Verdict thresholds per hypersurface class."""

    totally_geodesic: float = Field(
        default_factory=lambda: settings.tol_totally_geodesic, gt=0, description="Max |h|"
    )
    totally_umbilical: float = Field(
        default_factory=lambda: settings.tol_totally_umbilical,
        gt=0,
        description="Max |h - lambda g|",
    )
    parallel: float = Field(
        default_factory=lambda: settings.tol_parallel, gt=0, description="Max |nabla h|"
    )
    codazzi: float = Field(
        default_factory=lambda: settings.tol_codazzi,
        gt=0,
        description="Max |antisymmetrized nabla h|",
    )

    def for_class(self, kind: HypersurfaceClass) -> float:
        """Threshold for one class."""
        return float(getattr(self, kind.value))


class GridSpec(BaseModel):
    """Uniform sample grid strictly inside a parameter box."""

    points: int = Field(
        default_factory=lambda: settings.grid_points, ge=1, description="Samples per axis"
    )
    margin: float = Field(
        default_factory=lambda: settings.grid_margin,
        ge=0,
        lt=0.5,
        description="Fraction of each edge length left free",
    )


# ============================================================================
# Jobs
# ============================================================================


class JobConfig(BaseModel):
    """A family/classification job, from CLI flags or a config file."""

    command: str = Field(default="classify", description="Subcommand the job belongs to")
    family: FamilyName = Field(..., description="Hypersurface family")
    c: float = Field(default=0.0, description="Level / offset constant")
    a: float | None = Field(default=None, description="x coefficient of a vertical plane")
    b: float | None = Field(default=None, description="y coefficient of a vertical plane")
    beta0: float | None = Field(default=None, description="Initial profile angle (radians)")
    interval: tuple[float, float] | None = Field(
        default=None, description="Curve / profile parameter interval"
    )
    step: float = Field(
        default_factory=lambda: settings.profile_step, gt=0, description="Profile RK4 step"
    )
    gamma1: str | None = Field(default=None, description="First curve component expression")
    gamma2: str | None = Field(default=None, description="Second curve component expression")
    extent: float = Field(
        default=0.5, gt=0, description="Half-width of the free parameter ranges"
    )
    grid: GridSpec = Field(default_factory=GridSpec)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    out: Path | None = Field(default=None, description="Output path (stdout when unset)")

    @model_validator(mode="before")
    @classmethod
    def _fold_flat_keys(cls, data: Any) -> Any:
        """Accept ``points``/``margin`` and ``tol_<class>`` at top level."""
        if not isinstance(data, dict):
            return data
        data = dict(data)
        grid = dict(data.pop("grid", None) or {})
        for key in ("points", "margin"):
            if key in data:
                grid[key] = data.pop(key)
        if grid:
            data["grid"] = grid
        tolerances = dict(data.pop("tolerances", None) or {})
        for key in list(data):
            if key.startswith("tol_"):
                tolerances[key.removeprefix("tol_")] = data.pop(key)
        if tolerances:
            data["tolerances"] = tolerances
        return data

    @model_validator(mode="after")
    def _check_family_parameters(self) -> "JobConfig":
        if self.family is FamilyName.VPLANE:
            if self.a is None or self.b is None:
                raise ValueError("vplane needs both a and b")
            if self.a == 0 and self.b == 0:
                raise ValueError("vplane needs (a, b) != (0, 0)")
        if self.family is FamilyName.CYLINDER and (not self.gamma1 or not self.gamma2):
            raise ValueError("cylinder needs gamma1 and gamma2 expressions")
        if self.family is FamilyName.UMBILICAL and self.beta0 is None:
            raise ValueError("umbilical needs beta0")
        if self.interval is not None and not self.interval[0] < self.interval[1]:
            raise ValueError("interval must satisfy lo < hi")
        return self

    @classmethod
    def from_file(cls, path: str | Path) -> "JobConfig":
        """Load a ``key: value`` YAML job file.

        Raises:
            ConfigurationError: unreadable file, malformed YAML or invalid fields
        """
        try:
            raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
        except (OSError, yaml.YAMLError) as e:
            raise ConfigurationError(f"cannot read config {path}: {e}") from e
        if not isinstance(raw, dict):
            raise ConfigurationError(f"config {path} must be a key: value mapping")
        try:
            return cls.model_validate(raw)
        except ValidationError as e:
            raise ConfigurationError(f"invalid config {path}: {e}") from e

    def echo(self) -> dict[str, Any]:
        """Flat job description for report headers."""
        flat: dict[str, Any] = {}
        for key, value in self.model_dump(mode="json", exclude_none=True).items():
            if isinstance(value, dict):
                for inner, inner_value in value.items():
                    flat[f"{key}.{inner}"] = inner_value
            else:
                flat[key] = value
        return flat


# ============================================================================
# Reports
# ============================================================================


class CheckResult(BaseModel):
    """One named check of a report."""

    name: str = Field(..., description="Check label")
    residual: float = Field(..., description="Measured residual")
    tolerance: float = Field(..., description="Acceptance threshold")
    passed: bool = Field(..., description="Whether the check passed")

    @classmethod
    def from_residual(cls, name: str, residual: float, tolerance: float) -> "CheckResult":
        """Build a check that passes iff residual <= tolerance."""
        return cls(
            name=name,
            residual=residual,
            tolerance=tolerance,
            passed=bool(residual <= tolerance),
        )


class Report(BaseModel):
    """Machine-readable outcome of a CLI command."""

    tool: str = Field(default_factory=lambda: settings.app_name)
    version: str = Field(default_factory=lambda: settings.app_version)
    job: dict[str, Any] = Field(default_factory=dict, description="Echo of the job")
    values: dict[str, float] = Field(default_factory=dict, description="Measured quantities")
    checks: list[CheckResult] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        """Summary: every check passed."""
        return all(check.passed for check in self.checks)


class ClassificationReport(BaseModel):
    """Residuals and verdicts of a hypersurface over a sample grid."""

    residuals: dict[HypersurfaceClass, float] = Field(..., description="Max residual per class")
    verdicts: dict[HypersurfaceClass, bool] = Field(..., description="Verdict per class")
    gauss_residual: float = Field(..., description="Max Gauss-equation residual")
    codazzi_eq_residual: float = Field(..., description="Max Codazzi-equation residual")
    weingarten_residual: float = Field(default=0.0, description="Max Weingarten residual")
    mean_curvature_range: tuple[float, float] = Field(..., description="Min and max of lambda")
    normal_forms: list[str] = Field(
        default_factory=list, description="Normal forms met on the grid"
    )
    samples: int = Field(..., ge=1, description="Number of grid samples")
    tolerances: Tolerances = Field(default_factory=Tolerances)

    def to_checks(self) -> list[CheckResult]:
        """Verdict rows in class order."""
        return [
            CheckResult(
                name=kind.value,
                residual=self.residuals[kind],
                tolerance=self.tolerances.for_class(kind),
                passed=self.verdicts[kind],
            )
            for kind in HypersurfaceClass
        ]
