"""Predefined hypersurface scenarios and the job-to-immersion factory."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np
import pandas as pd

from ..config.settings import settings
from ..data.schemas import FamilyName, GridSpec, HypersurfaceClass, JobConfig
from ..geometry.families import (
    PlaneCurve,
    UmbilicalProfile,
    cylinder_normal_curvature,
    family_cylinder,
    family_t_plane,
    family_umbilical,
    family_vertical_plane,
    family_z_plane,
    mean_curvature_closed_form,
    plane_curve_curvature,
    umbilical_profile,
)
from ..geometry.hypersurface import Immersion, second_fundamental_form
from ..utils.exceptions import ConfigurationError

DEFAULT_CURVE_INTERVAL = (-1.0, 1.0)
DEFAULT_PROFILE_INTERVAL = (0.0, 0.25)


class ScenarioType(str, Enum):
    """Types of predefined scenarios."""

    ZPLANE = "zplane"
    TPLANE = "tplane"
    VPLANE = "vplane"
    LINE_CYLINDER = "line_cylinder"
    CIRCLE_CYLINDER = "circle_cylinder"
    UMBILICAL = "umbilical"
    UMBILICAL_DEGENERATE = "umbilical_degenerate"


@dataclass
class ScenarioConfig:
    """A family job together with the verdicts it must produce."""

    name: str
    description: str
    job: JobConfig
    expected: dict[HypersurfaceClass, bool]


def _verdicts(tg: bool, umb: bool, par: bool, cod: bool) -> dict[HypersurfaceClass, bool]:
    return {
        HypersurfaceClass.TOTALLY_GEODESIC: tg,
        HypersurfaceClass.TOTALLY_UMBILICAL: umb,
        HypersurfaceClass.PARALLEL: par,
        HypersurfaceClass.CODAZZI: cod,
    }


# Predefined scenarios

ZPLANE = ScenarioConfig(
    name="Horizontal slice z = 1",
    description="Level set of z; unit normal +-E3, totally geodesic, curvature -1",
    job=JobConfig(family=FamilyName.ZPLANE, c=1.0),
    expected=_verdicts(tg=True, umb=True, par=True, cod=True),
)

TPLANE = ScenarioConfig(
    name="Level set t = 0",
    description="Unit normal +-E4, shape operator diag(1, 1, -2), flat",
    job=JobConfig(family=FamilyName.TPLANE, c=0.0),
    expected=_verdicts(tg=False, umb=False, par=True, cod=True),
)

VPLANE = ScenarioConfig(
    name="Vertical plane x = 0",
    description="a x + b y = c with (a, b, c) = (1, 0, 0); totally geodesic, curvature varies",
    job=JobConfig(family=FamilyName.VPLANE, a=1.0, b=0.0, c=0.0),
    expected=_verdicts(tg=True, umb=True, par=True, cod=True),
)

LINE_CYLINDER = ScenarioConfig(
    name="Cylinder over the line (u, 2u)",
    description="Straight profile, so the cylinder is a vertical plane",
    job=JobConfig(family=FamilyName.CYLINDER, gamma1="u", gamma2="2*u"),
    expected=_verdicts(tg=True, umb=True, par=True, cod=True),
)

CIRCLE_CYLINDER = ScenarioConfig(
    name="Cylinder over the unit circle",
    description="Horizontal normal; Codazzi but neither parallel nor umbilical",
    job=JobConfig(
        family=FamilyName.CYLINDER,
        gamma1="cos(u)",
        gamma2="sin(u)",
        interval=(-math.pi, math.pi),
    ),
    expected=_verdicts(tg=False, umb=False, par=False, cod=True),
)

UMBILICAL = ScenarioConfig(
    name="Totally umbilical profile, beta0 = pi/4",
    description="lambda = sin(beta) varies along u3, so the hypersurface is not Codazzi",
    job=JobConfig(family=FamilyName.UMBILICAL, beta0=math.pi / 4, interval=(0.0, 0.25)),
    expected=_verdicts(tg=False, umb=True, par=False, cod=False),
)

UMBILICAL_DEGENERATE = ScenarioConfig(
    name="Degenerate profile, beta0 = 0",
    description="beta stays 0: the profile is gamma = (0, -u), a reparametrized z = 0",
    job=JobConfig(family=FamilyName.UMBILICAL, beta0=0.0, interval=(-0.25, 0.25)),
    expected=_verdicts(tg=True, umb=True, par=True, cod=True),
)

# Scenario registry
SCENARIOS = {
    ScenarioType.ZPLANE: ZPLANE,
    ScenarioType.TPLANE: TPLANE,
    ScenarioType.VPLANE: VPLANE,
    ScenarioType.LINE_CYLINDER: LINE_CYLINDER,
    ScenarioType.CIRCLE_CYLINDER: CIRCLE_CYLINDER,
    ScenarioType.UMBILICAL: UMBILICAL,
    ScenarioType.UMBILICAL_DEGENERATE: UMBILICAL_DEGENERATE,
}


def get_scenario(scenario_type: ScenarioType) -> ScenarioConfig:
    """Get a predefined scenario by type."""
    return SCENARIOS[scenario_type]


# ============================================================================
# Job factory
# ============================================================================


class BuiltFamily(NamedTuple):
    """An immersion plus the curve data it was built from."""

    immersion: Immersion
    curve: PlaneCurve | None = None
    profile: UmbilicalProfile | None = None


def build_family(job: JobConfig) -> BuiltFamily:
    """Construct the immersion a job describes.

    Raises:
        ConfigurationError: required family parameters are missing
    """
    family = job.family
    if family is FamilyName.ZPLANE:
        return BuiltFamily(family_z_plane(job.c, job.extent))
    if family is FamilyName.TPLANE:
        return BuiltFamily(family_t_plane(job.c, job.extent))
    if family is FamilyName.VPLANE:
        if job.a is None or job.b is None:
            raise ConfigurationError("vplane needs a and b")
        return BuiltFamily(family_vertical_plane(job.a, job.b, job.c, job.extent))
    if family is FamilyName.CYLINDER:
        if not job.gamma1 or not job.gamma2:
            raise ConfigurationError("cylinder needs gamma1 and gamma2")
        curve = PlaneCurve.from_expressions(
            job.gamma1, job.gamma2, job.interval or DEFAULT_CURVE_INTERVAL
        )
        return BuiltFamily(family_cylinder(curve, job.extent), curve=curve)
    if job.beta0 is None:
        raise ConfigurationError("umbilical needs beta0")
    profile = umbilical_profile(job.beta0, job.interval or DEFAULT_PROFILE_INTERVAL, job.step)
    return BuiltFamily(
        family_umbilical(profile, job.extent), curve=profile.as_curve(), profile=profile
    )


def build_immersion(job: JobConfig) -> Immersion:
    return build_family(job).immersion


# ============================================================================
# Sampled family data
# ============================================================================

BASE_COLUMNS = [
    "u1", "u2", "u3", "x", "y", "z", "t", "N1", "N2", "N3", "N4",
    "h11", "h12", "h13", "h22", "h23", "h33", "lambda",
]  # fmt: skip


def _family_row(built: BuiltFamily, u: np.ndarray) -> list[float]:
    F = built.immersion
    forms = second_fundamental_form(F, u)
    h = forms.h_mat
    row = [
        *u,
        *F.coordinates(u),
        *forms.normal.comps,
        h[0, 0], h[0, 1], h[0, 2], h[1, 1], h[1, 2], h[2, 2],
        forms.mean_curvature,
    ]  # fmt: skip
    if built.profile is not None and built.curve is not None:
        row += [
            float(np.sin(built.profile.beta(u[2]))),
            mean_curvature_closed_form(built.curve, u[2]),
        ]
    elif built.curve is not None:
        row += [
            plane_curve_curvature(built.curve, u[0]),
            h[0, 0] / forms.g_ind[0, 0],
            cylinder_normal_curvature(built.curve, u[0], u[2]),
        ]
    return [float(v) for v in row]


def family_table(
    built: BuiltFamily, grid: GridSpec | None = None, jobs: int | None = None
) -> pd.DataFrame:
    """One row of (u, F(u), N, h, lambda, closed forms) per grid sample, in grid order."""
    jobs = settings.jobs if jobs is None else jobs
    samples = built.immersion.sample_grid(grid or GridSpec())
    columns = list(BASE_COLUMNS)
    if built.profile is not None:
        columns += ["sin_beta", "lambda_closed"]
    elif built.curve is not None:
        columns += ["kappa", "hWW", "hWW_closed"]

    def row(u: np.ndarray) -> list[float]:
        return _family_row(built, u)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(row, samples))
    else:
        rows = [row(u) for u in samples]
    return pd.DataFrame(rows, columns=columns)
