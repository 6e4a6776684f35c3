"""Predefined hypersurface scenarios."""

from .scenarios import (
    SCENARIOS,
    BuiltFamily,
    ScenarioConfig,
    ScenarioType,
    build_family,
    build_immersion,
    family_table,
    get_scenario,
)

__all__ = [
    "ScenarioType",
    "ScenarioConfig",
    "SCENARIOS",
    "get_scenario",
    "BuiltFamily",
    "build_family",
    "build_immersion",
    "family_table",
]
