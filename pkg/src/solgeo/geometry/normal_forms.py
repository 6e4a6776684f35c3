"""Normal-vector predicates for Codazzi and totally umbilical hypersurfaces.

A unit normal N = aE1 + bE2 + cE3 + dE4 of a Codazzi hypersurface is either +-E3, +-E4
or horizontal (cos a E1 + sin a E2). A totally umbilical one is horizontal with
lambda = 0, or lies in span{E3, E4} as cos b E3 + sin b E4 with cos b != 0 and
lambda = sin b. Both restrictions come from the Codazzi equation evaluated on the
adapted tangent frame of N, where g(R(T2, T3)T1, N) = 6 r^2 (1 - r^2), r^2 = a^2 + b^2.
"""

import math
from enum import Enum

import numpy as np

from .solgroup import FloatArray, TangentVector, curvature_tensor

DEFAULT_TOLERANCE = 1e-8


class NormalForm(str, Enum):
    """Shapes a unit normal can take in the frame E1..E4."""

    Z_AXIS = "z_axis"
    T_AXIS = "t_axis"
    HORIZONTAL = "horizontal"
    ZT_PLANE = "zt_plane"


def _components(normal: TangentVector | FloatArray) -> FloatArray:
    comps = normal.comps if isinstance(normal, TangentVector) else np.asarray(normal, float)
    norm = float(np.linalg.norm(comps))
    if not math.isclose(norm, 1.0, abs_tol=1e-9):
        raise ValueError(f"normal must be a unit vector, |N| = {norm}")
    return comps


def adapted_frame(normal: TangentVector | FloatArray) -> FloatArray:
    """Rows T1, T2, T3 completing N to an orthonormal frame."""
    a, b, c, d = _components(normal)
    return np.array(
        [
            [b, -a, d, -c],
            [c, -d, -a, b],
            [d, c, -b, -a],
        ]
    )


def codazzi_obstruction(normal: TangentVector | FloatArray) -> float:
    """g(R(T2, T3)T1, N) on the adapted frame; vanishes for Codazzi normals."""
    comps = _components(normal)
    T1, T2, T3 = adapted_frame(comps)
    return float(np.einsum("a,b,c,abcd,d->", T2, T3, T1, curvature_tensor(), comps))


def normal_angle(normal: TangentVector | FloatArray) -> tuple[float, float]:
    """(alpha, beta) with (a, b) = r(cos alpha, sin alpha), (c, d) ~ (cos beta, sin beta)."""
    a, b, c, d = _components(normal)
    return math.atan2(b, a), math.atan2(d, c)


def codazzi_normal_form(
    normal: TangentVector | FloatArray, tolerance: float = DEFAULT_TOLERANCE
) -> NormalForm | None:
    """Which Codazzi normal form N has, or None."""
    a, b, c, d = _components(normal)
    if math.hypot(a, b) <= tolerance:
        if abs(d) <= tolerance:
            return NormalForm.Z_AXIS
        if abs(c) <= tolerance:
            return NormalForm.T_AXIS
        return None
    if math.hypot(c, d) <= tolerance:
        return NormalForm.HORIZONTAL
    return None


def umbilical_normal_form(
    normal: TangentVector | FloatArray,
    mean_curvature: float,
    tolerance: float = DEFAULT_TOLERANCE,
    cos_guard: float = 0.0,
) -> NormalForm | None:
    """Which totally umbilical normal form (N, lambda) has, or None."""
    a, b, c, d = _components(normal)
    if math.hypot(c, d) <= tolerance:
        return NormalForm.HORIZONTAL if abs(mean_curvature) <= tolerance else None
    if math.hypot(a, b) <= tolerance:
        _, beta = normal_angle(normal)
        if abs(math.cos(beta)) > cos_guard and abs(mean_curvature - math.sin(beta)) <= tolerance:
            return NormalForm.ZT_PLANE
    return None
