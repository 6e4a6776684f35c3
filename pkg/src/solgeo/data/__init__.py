"""Data module for solgeo."""

from .schemas import (
    CheckResult,
    ClassificationReport,
    FamilyName,
    GridSpec,
    HypersurfaceClass,
    JobConfig,
    Report,
    Tolerances,
    VerifyScope,
)

__all__ = [
    "VerifyScope",
    "FamilyName",
    "HypersurfaceClass",
    "Tolerances",
    "GridSpec",
    "JobConfig",
    "CheckResult",
    "Report",
    "ClassificationReport",
]
