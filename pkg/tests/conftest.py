"""Pytest configuration and fixtures."""

import math

import numpy as np
import pytest

from solgeo.geometry import (
    PlaneCurve,
    Point,
    family_cylinder,
    family_t_plane,
    family_umbilical,
    family_vertical_plane,
    family_z_plane,
    umbilical_profile,
)


@pytest.fixture
def rng():
    """Seeded generator for randomized checks."""
    return np.random.default_rng(20240517)


@pytest.fixture
def random_points(rng):
    """Twenty points with coordinates in [-1, 1]."""
    return [Point.from_array(row) for row in rng.uniform(-1.0, 1.0, size=(20, 4))]


@pytest.fixture
def z_plane():
    """The slice z = 1."""
    return family_z_plane(1.0)


@pytest.fixture
def t_plane():
    """The level set t = 0."""
    return family_t_plane(0.0)


@pytest.fixture
def vertical_plane():
    """The vertical plane x = 0."""
    return family_vertical_plane(1.0, 0.0, 0.0)


@pytest.fixture
def circle():
    """Unit circle over the full period."""
    return PlaneCurve.circle(1.0, (-math.pi, math.pi))


@pytest.fixture
def circle_cylinder(circle):
    """Cylinder over the unit circle."""
    return family_cylinder(circle)


@pytest.fixture(scope="session")
def quarter_profile():
    """Umbilical profile with beta0 = pi/4 on [0, 0.25]."""
    return umbilical_profile(math.pi / 4, (0.0, 0.25))


@pytest.fixture
def umbilical(quarter_profile):
    """Totally umbilical hypersurface over the beta0 = pi/4 profile."""
    return family_umbilical(quarter_profile)
