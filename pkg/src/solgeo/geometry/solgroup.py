"""Closed-form ambient geometry of Sol^4_0.

Points are coordinate tuples (x, y, z, t) with the group law

    (a, b, c, d) . (x, y, z, t) = (a + e^d x, b + e^d y, c + e^{-2d} z, d + t)

and tangent vectors are stored by their components in the left-invariant orthonormal
frame E1 = e^t d/dx, E2 = e^t d/dy, E3 = e^{-2t} d/dz, E4 = d/dt. In that frame the
brackets, the Levi-Civita connection and the curvature tensor are constant tables, so
every routine here is exact up to floating point rounding.

Public index arguments are 1-based (E1..E4); the tables are 0-based numpy arrays.
"""

import math
from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np
import numpy.typing as npt

from ..config.settings import settings
from ..utils.exceptions import (
    BasePointMismatchError,
    DegeneratePlaneError,
    IndexOutOfRangeError,
    NonFiniteError,
)

FloatArray = npt.NDArray[np.float64]
SignLike = Literal[1, -1, "+", "-"]

DIM = 4


def frame_slot(i: int) -> int:
    """Validate a 1-based frame index and return the 0-based slot."""
    if isinstance(i, bool) or not isinstance(i, int | np.integer) or not 1 <= i <= DIM:
        raise IndexOutOfRangeError(f"frame index must be in 1..{DIM}, got {i!r}")
    return int(i) - 1


def parse_sign(sign: SignLike | int) -> int:
    """Normalize ``+``/``-``/``1``/``-1`` to +-1."""
    if sign in (1, "+"):
        return 1
    if sign in (-1, "-"):
        return -1
    raise ValueError(f"sign must be +1 or -1, got {sign!r}")


# ============================================================================
# Points and tangent vectors
# ============================================================================


@dataclass(frozen=True)
class Point:
    """A group element as a coordinate 4-tuple."""

    x: float
    y: float
    z: float
    t: float

    def __post_init__(self) -> None:
        for name in ("x", "y", "z", "t"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise NonFiniteError(f"point coordinate {name}={value} is not finite")
            object.__setattr__(self, name, value)

    def as_array(self) -> FloatArray:
        return np.array([self.x, self.y, self.z, self.t], dtype=float)

    @classmethod
    def from_array(cls, values: npt.ArrayLike) -> "Point":
        x, y, z, t = np.asarray(values, dtype=float).reshape(DIM)
        return cls(x, y, z, t)


IDENTITY = Point(0.0, 0.0, 0.0, 0.0)


def frame_scales(t: float) -> FloatArray:
    """Coordinate coefficients of E1..E4 at height t: (e^t, e^t, e^{-2t}, 1)."""
    et = math.exp(t)
    return np.array([et, et, math.exp(-2.0 * t), 1.0])


def frame_scale_derivatives(t: float) -> FloatArray:
    """d/dt of the coordinate-to-frame factors (e^{-t}, e^{-t}, e^{2t}, 1)."""
    emt = math.exp(-t)
    return np.array([-emt, -emt, 2.0 * math.exp(2.0 * t), 0.0])


def coordinate_to_frame(t: float) -> FloatArray:
    """Factors turning coordinate components into frame components at height t."""
    emt = math.exp(-t)
    return np.array([emt, emt, math.exp(2.0 * t), 1.0])


class TangentVector:
    """A point plus its components in the frame {E1, E2, E3, E4}."""

    __slots__ = ("base", "comps")

    def __init__(self, base: Point, comps: npt.ArrayLike):
        values = np.array(comps, dtype=float).reshape(DIM)
        if not np.all(np.isfinite(values)):
            raise NonFiniteError(f"tangent vector components {values} are not finite")
        values.setflags(write=False)
        self.base = base
        self.comps = values

    def __repr__(self) -> str:
        return f"TangentVector(base={self.base!r}, comps={self.comps.tolist()!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TangentVector):
            return NotImplemented
        return self.base == other.base and bool(np.array_equal(self.comps, other.comps))

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def frame(cls, p: Point, i: int) -> "TangentVector":
        """The frame vector E_i at p."""
        comps = np.zeros(DIM)
        comps[frame_slot(i)] = 1.0
        return cls(p, comps)

    @classmethod
    def from_coordinates(cls, p: Point, coords: npt.ArrayLike) -> "TangentVector":
        """Build from components in the coordinate basis d/dx, d/dy, d/dz, d/dt."""
        return cls(p, coordinate_to_frame(p.t) * np.asarray(coords, dtype=float))

    def to_coordinates(self) -> FloatArray:
        return frame_scales(self.base.t) * self.comps

    def norm(self) -> float:
        return float(np.linalg.norm(self.comps))

    def _check(self, other: "TangentVector") -> None:
        if other.base != self.base:
            raise BasePointMismatchError(f"vectors at {self.base} and {other.base}")

    def __add__(self, other: "TangentVector") -> "TangentVector":
        self._check(other)
        return TangentVector(self.base, self.comps + other.comps)

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        self._check(other)
        return TangentVector(self.base, self.comps - other.comps)

    def __neg__(self) -> "TangentVector":
        return TangentVector(self.base, -self.comps)

    def __mul__(self, scalar: float) -> "TangentVector":
        return TangentVector(self.base, float(scalar) * self.comps)

    __rmul__ = __mul__


def _common_base(*vectors: TangentVector, p: Point | None = None) -> Point:
    base = p if p is not None else vectors[0].base
    for v in vectors:
        if v.base != base:
            raise BasePointMismatchError(f"vector based at {v.base}, expected {base}")
    return base


@dataclass(frozen=True)
class VectorFieldFn:
    """A vector field given by its frame components.

    ``derivative(p, direction)`` optionally returns the exact directional derivative of
    the component functions along ``direction`` (frame components at p).
    """

    evaluate: Callable[[Point], npt.ArrayLike]
    derivative: Callable[[Point, FloatArray], npt.ArrayLike] | None = None

    def __call__(self, p: Point) -> TangentVector:
        return TangentVector(p, self.evaluate(p))

    @classmethod
    def constant(cls, comps: npt.ArrayLike) -> "VectorFieldFn":
        """A left-invariant field with constant frame components."""
        values = np.array(comps, dtype=float).reshape(DIM)
        return cls(evaluate=lambda p: values, derivative=lambda p, direction: np.zeros(DIM))

    @classmethod
    def frame_field(cls, i: int) -> "VectorFieldFn":
        comps = np.zeros(DIM)
        comps[frame_slot(i)] = 1.0
        return cls.constant(comps)


# ============================================================================
# Group law and metric
# ============================================================================


def group_mul(p: Point, q: Point) -> Point:
    """Group product p . q."""
    ed = math.exp(p.t)
    return Point(p.x + ed * q.x, p.y + ed * q.y, p.z + math.exp(-2.0 * p.t) * q.z, p.t + q.t)


def group_inv(p: Point) -> Point:
    """Group inverse."""
    emt = math.exp(-p.t)
    return Point(-emt * p.x, -emt * p.y, -math.exp(2.0 * p.t) * p.z, -p.t)


def frame_at(p: Point) -> FloatArray:
    """Rows are the coordinate components of E1..E4 at p."""
    return np.diag(frame_scales(p.t))


class Metric4:
    """The left-invariant metric e^{-2t}(dx^2 + dy^2) + e^{4t} dz^2 + dt^2."""

    @staticmethod
    def matrix(p: Point) -> FloatArray:
        """Coordinate-basis matrix at p."""
        return np.diag([math.exp(-2.0 * p.t), math.exp(-2.0 * p.t), math.exp(4.0 * p.t), 1.0])

    def inner(self, p: Point, a: npt.ArrayLike, b: npt.ArrayLike) -> float:
        """Inner product of two coordinate-component vectors at p."""
        return float(np.asarray(a, dtype=float) @ self.matrix(p) @ np.asarray(b, dtype=float))

    def __call__(self, v: TangentVector, w: TangentVector) -> float:
        return metric_eval(v.base, v, w)


METRIC = Metric4()


def metric_eval(p: Point, v: TangentVector, w: TangentVector) -> float:
    """g(v, w) at p; the frame is orthonormal so this is a dot product."""
    _common_base(v, w, p=p)
    return float(v.comps @ w.comps)


# ============================================================================
# Structure tables
# ============================================================================

# [E_i, E_j] for i < j; the rest by antisymmetry.
_BRACKET_ENTRIES: dict[tuple[int, int], dict[int, float]] = {
    (1, 4): {1: -1.0},
    (2, 4): {2: -1.0},
    (3, 4): {3: 2.0},
}

# nabla_{E_i} E_j, every nonzero entry.
_CONNECTION_ENTRIES: dict[tuple[int, int], dict[int, float]] = {
    (1, 1): {4: 1.0},
    (1, 4): {1: -1.0},
    (2, 2): {4: 1.0},
    (2, 4): {2: -1.0},
    (3, 3): {4: -2.0},
    (3, 4): {3: 2.0},
}

# R(E_i, E_j)E_j = K_ij E_i
_SECTIONAL_ENTRIES: dict[tuple[int, int], float] = {
    (1, 2): -1.0,
    (1, 3): 2.0,
    (1, 4): -1.0,
    (2, 3): 2.0,
    (2, 4): -1.0,
    (3, 4): -4.0,
}


def _frame_table(
    entries: dict[tuple[int, int], dict[int, float]], antisymmetric: bool
) -> FloatArray:
    table = np.zeros((DIM, DIM, DIM))
    for (i, j), comps in entries.items():
        for k, value in comps.items():
            table[i - 1, j - 1, k - 1] = value
            if antisymmetric:
                table[j - 1, i - 1, k - 1] = -value
    table.setflags(write=False)
    return table


BRACKETS = _frame_table(_BRACKET_ENTRIES, antisymmetric=True)
CONNECTION = _frame_table(_CONNECTION_ENTRIES, antisymmetric=False)


@lru_cache(maxsize=1)
def curvature_tensor() -> FloatArray:
    """R[a, b, c, d] = g(R(E_a, E_b)E_c, E_d), generated from the sectional entries."""
    R = np.zeros((DIM, DIM, DIM, DIM))
    for (i, j), k in _SECTIONAL_ENTRIES.items():
        a, b = i - 1, j - 1
        R[a, b, b, a] = k
        R[b, a, a, b] = k
        R[b, a, b, a] = -k
        R[a, b, a, b] = -k
    R.setflags(write=False)
    return R


def lie_bracket_frame(i: int, j: int) -> FloatArray:
    """Frame components of [E_i, E_j]."""
    return BRACKETS[frame_slot(i), frame_slot(j)].copy()


def nabla_frame(i: int, j: int) -> FloatArray:
    """Frame components of nabla_{E_i} E_j."""
    return CONNECTION[frame_slot(i), frame_slot(j)].copy()


def curvature_table(i: int, j: int, k: int) -> FloatArray:
    """Frame components of R(E_i, E_j)E_k."""
    return curvature_tensor()[frame_slot(i), frame_slot(j), frame_slot(k)].copy()


def bracket(a: npt.ArrayLike, b: npt.ArrayLike) -> FloatArray:
    """Bracket of two left-invariant fields given by constant frame components."""
    return np.einsum("i,j,ijk->k", a, b, BRACKETS)


def connection_apply(a: npt.ArrayLike, b: npt.ArrayLike) -> FloatArray:
    """nabla_A B for constant frame components A, B."""
    return np.einsum("i,j,ijk->k", a, b, CONNECTION)


# ============================================================================
# Covariant derivative and curvature
# ============================================================================


def covariant_derivative(
    X: VectorFieldFn, Y: VectorFieldFn, p: Point, h: float | None = None
) -> TangentVector:
    """nabla_X Y at p.

    Component derivatives X(Y^i) come from ``Y.derivative`` when supplied, otherwise from
    central differences with step h along X(p) in coordinates.

    Raises:
        NonFiniteError: a field evaluates to inf or nan near p
    """
    h = settings.fd_step if h is None else h
    if h <= 0:
        raise ValueError("step h must be positive")
    x = X(p).comps
    y = Y(p).comps
    if Y.derivative is not None:
        dy = np.asarray(Y.derivative(p, x), dtype=float)
    else:
        direction = frame_scales(p.t) * x
        centre = p.as_array()
        plus = np.asarray(Y.evaluate(Point.from_array(centre + h * direction)), dtype=float)
        minus = np.asarray(Y.evaluate(Point.from_array(centre - h * direction)), dtype=float)
        dy = (plus - minus) / (2.0 * h)
    value = dy + connection_apply(x, y)
    if not np.all(np.isfinite(value)):
        raise NonFiniteError(f"covariant derivative at {p} is not finite")
    return TangentVector(p, value)


def _riemann(x: FloatArray, y: FloatArray, z: FloatArray) -> FloatArray:
    return np.einsum("a,b,c,abcd->d", x, y, z, curvature_tensor())


def curvature_apply(X: TangentVector, Y: TangentVector, Z: TangentVector) -> TangentVector:
    """R(X, Y)Z from the curvature table."""
    p = _common_base(X, Y, Z)
    return TangentVector(p, _riemann(X.comps, Y.comps, Z.comps))


def curvature_invariant(X: TangentVector, Y: TangentVector, Z: TangentVector) -> TangentVector:
    """R(X, Y)Z from the frame-free formula in g, J+, J- and P."""
    p = _common_base(X, Y, Z)

    def g(a: TangentVector, b: TangentVector) -> float:
        return metric_eval(p, a, b)

    result = 2.0 * (g(Y, Z) * X - g(X, Z) * Y)
    for J in (apply_Jplus, apply_Jminus):
        JX, JY, JZ = J(X), J(Y), J(Z)
        result = result - 0.5 * (g(JY, Z) * JX - g(JX, Z) * JY + 2.0 * g(X, JY) * JZ)
    PX, PY = apply_P(X), apply_P(Y)
    result = result - 3.0 * (g(PY, Z) * X + g(Y, Z) * PX - g(PX, Z) * Y - g(X, Z) * PY)
    return result


def sectional_curvature(
    p: Point, v: TangentVector, w: TangentVector, tolerance: float | None = None
) -> float:
    """Sectional curvature of span{v, w}.

    Raises:
        DegeneratePlaneError: |v|^2 |w|^2 - g(v, w)^2 below tolerance
    """
    _common_base(v, w, p=p)
    tolerance = settings.plane_tolerance if tolerance is None else tolerance
    a, b = v.comps, w.comps
    denominator = float((a @ a) * (b @ b) - (a @ b) ** 2)
    if denominator < tolerance:
        raise DegeneratePlaneError(f"vectors {a} and {b} do not span a plane")
    return float(_riemann(a, b, b) @ a) / denominator


# ============================================================================
# Complex structures
# ============================================================================

# Columns are the images of E1..E4.
J_PLUS = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
    ]
)
J_MINUS = np.array(
    [
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)
PROJECTION_E4 = np.diag([0.0, 0.0, 0.0, 1.0])
for _matrix in (J_PLUS, J_MINUS, PROJECTION_E4):
    _matrix.setflags(write=False)

E4 = np.array([0.0, 0.0, 0.0, 1.0])


def complex_structure(sign: SignLike | int) -> FloatArray:
    """Matrix of J+ or J- acting on frame components."""
    return J_PLUS if parse_sign(sign) > 0 else J_MINUS


def apply_Jplus(v: TangentVector) -> TangentVector:
    return TangentVector(v.base, J_PLUS @ v.comps)


def apply_Jminus(v: TangentVector) -> TangentVector:
    return TangentVector(v.base, J_MINUS @ v.comps)


def apply_P(v: TangentVector) -> TangentVector:
    """Orthogonal projection onto E4."""
    return TangentVector(v.base, PROJECTION_E4 @ v.comps)


def nijenhuis(sign: SignLike | int, i: int, j: int) -> FloatArray:
    """Nijenhuis tensor of J+- on (E_i, E_j) from the bracket table."""
    J = complex_structure(sign)
    x = np.zeros(DIM)
    y = np.zeros(DIM)
    x[frame_slot(i)] = 1.0
    y[frame_slot(j)] = 1.0
    jx, jy = J @ x, J @ y
    return bracket(jx, jy) - J @ bracket(jx, y) - J @ bracket(x, jy) - bracket(x, y)


def nabla_J(sign: SignLike | int, X: TangentVector, Y: TangentVector) -> TangentVector:
    """(nabla_X J+-)Y in closed form."""
    p = _common_base(X, Y)
    J = complex_structure(sign)
    x, y = X.comps, Y.comps
    jy = J @ y
    value = -(jy @ E4) * x + (y @ E4) * (J @ x) + (jy @ x) * E4 - (y @ x) * (J @ E4)
    return TangentVector(p, value)


def nabla_P(X: TangentVector, Y: TangentVector) -> TangentVector:
    """(nabla_X P)Y in closed form."""
    p = _common_base(X, Y)
    x, y = X.comps, Y.comps
    jjx = J_PLUS @ (J_MINUS @ x)
    value = (
        0.5 * ((y @ x) * E4 + (y @ E4) * x)
        - 4.0 * (y @ (PROJECTION_E4 @ x)) * E4
        + 1.5 * ((y @ jjx) * E4 + (y @ E4) * jjx)
    )
    return TangentVector(p, value)


def nabla_E4(X: TangentVector) -> TangentVector:
    """nabla_X E4 = X/2 - 2PX + (3/2) J+J-X."""
    x = X.comps
    value = 0.5 * x - 2.0 * (PROJECTION_E4 @ x) + 1.5 * (J_PLUS @ (J_MINUS @ x))
    return TangentVector(X.base, value)


# ============================================================================
# Isometries
# ============================================================================


class Isometry(ABC):
    """An isometry that is affine in coordinates: q -> linear @ q + offset."""

    @property
    @abstractmethod
    def linear(self) -> FloatArray:
        """Constant coordinate Jacobian."""

    @property
    @abstractmethod
    def offset(self) -> FloatArray:
        """Coordinate translation part."""

    def apply(self, p: Point) -> Point:
        return Point.from_array(self.linear @ p.as_array() + self.offset)

    def coordinate_push_forward(self, v: TangentVector) -> TangentVector:
        """Differential computed through the coordinate Jacobian."""
        return TangentVector.from_coordinates(self.apply(v.base), self.linear @ v.to_coordinates())

    def push_forward(self, v: TangentVector) -> TangentVector:
        return self.coordinate_push_forward(v)


@dataclass(frozen=True)
class LeftTranslation(Isometry):
    """Left multiplication by ``a``; the identity on frame components."""

    a: Point

    @property
    def linear(self) -> FloatArray:
        return np.diag([math.exp(self.a.t), math.exp(self.a.t), math.exp(-2.0 * self.a.t), 1.0])

    @property
    def offset(self) -> FloatArray:
        return self.a.as_array()

    def apply(self, p: Point) -> Point:
        return group_mul(self.a, p)

    def push_forward(self, v: TangentVector) -> TangentVector:
        return TangentVector(self.apply(v.base), v.comps)


@dataclass(frozen=True)
class XYRotation(Isometry):
    """Rotation by theta in the xy-plane; rotates (E1, E2) components alike."""

    theta: float

    def _rotation(self) -> FloatArray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, -s], [s, c]])

    @property
    def linear(self) -> FloatArray:
        L = np.eye(DIM)
        L[:2, :2] = self._rotation()
        return L

    @property
    def offset(self) -> FloatArray:
        return np.zeros(DIM)

    def push_forward(self, v: TangentVector) -> TangentVector:
        comps = v.comps.copy()
        comps[:2] = self._rotation() @ comps[:2]
        return TangentVector(self.apply(v.base), comps)


@dataclass(frozen=True)
class ZReflection(Isometry):
    """z -> -z; flips the E3 component."""

    @property
    def linear(self) -> FloatArray:
        return np.diag([1.0, 1.0, -1.0, 1.0])

    @property
    def offset(self) -> FloatArray:
        return np.zeros(DIM)

    def push_forward(self, v: TangentVector) -> TangentVector:
        comps = v.comps.copy()
        comps[2] = -comps[2]
        return TangentVector(self.apply(v.base), comps)


def isometry_check(kind: Isometry, p: Point, v: TangentVector, w: TangentVector) -> float:
    """|g(d phi v, d phi w) - g(v, w)| for the isometry phi = ``kind``."""
    _common_base(v, w, p=p)
    dv, dw = kind.push_forward(v), kind.push_forward(w)
    return abs(metric_eval(dv.base, dv, dw) - metric_eval(p, v, w))
