"""Extrinsic geometry of hypersurfaces F: (u1, u2, u3) -> Sol^4_0.

Everything is computed in the left-invariant frame: the coordinate tangents d_i F are
turned into frame components, the ambient derivatives nabla_{d_i} d_j combine second
parameter derivatives with the constant connection table, and the scalar second
fundamental form is taken against the unit normal N.
"""

import itertools
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from ..config.settings import settings
from ..data.schemas import ClassificationReport, GridSpec, HypersurfaceClass, Tolerances
from ..utils.exceptions import (
    BoundaryProximityError,
    DegeneratePlaneError,
    GeometryError,
    NonFiniteError,
    RankDeficiencyError,
)
from ..utils.logging import get_logger
from .normal_forms import codazzi_normal_form, umbilical_normal_form
from .solgroup import (
    CONNECTION,
    DIM,
    FloatArray,
    Isometry,
    LeftTranslation,
    Point,
    TangentVector,
    coordinate_to_frame,
    curvature_tensor,
    frame_scale_derivatives,
)

logger = get_logger("hypersurface")

PARAMS = 3
STENCIL_FRACTION = 0.01  # largest finite-difference step per unit of the narrowest box side
MapFn = Callable[[FloatArray], npt.ArrayLike]
NablaH = FloatArray  # (3, 3, 3): (nabla h)(d_i, d_j, d_k)


# ============================================================================
# Immersions
# ============================================================================


@dataclass(frozen=True)
class Immersion:
    """A parametrized hypersurface over the box ``lower <= u <= upper``.

    ``jacobian(u)`` returns the 4x3 coordinate partials and ``hessian(u)`` the 4x3x3
    second partials; either may be omitted and is then replaced by central differences.
    """

    map: MapFn
    lower: tuple[float, float, float]
    upper: tuple[float, float, float]
    jacobian: Callable[[FloatArray], npt.ArrayLike] | None = None
    hessian: Callable[[FloatArray], npt.ArrayLike] | None = None
    orientation: int = 1
    name: str = "immersion"

    def __post_init__(self) -> None:
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        if len(lower) != PARAMS or len(upper) != PARAMS:
            raise ValueError("parameter box must be 3-dimensional")
        if not all(lo < hi for lo, hi in zip(lower, upper, strict=True)):
            raise ValueError(f"empty parameter box {lower} .. {upper}")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    # -- evaluation ---------------------------------------------------------

    def coordinates(self, u: npt.ArrayLike) -> FloatArray:
        values = np.asarray(self.map(np.asarray(u, dtype=float)), dtype=float).reshape(DIM)
        if not np.all(np.isfinite(values)):
            raise NonFiniteError(f"{self.name} is not finite at u={u}")
        return values

    def point(self, u: npt.ArrayLike) -> Point:
        return Point.from_array(self.coordinates(u))

    def first_derivatives(self, u: npt.ArrayLike) -> FloatArray:
        """4x3 matrix of coordinate partials d F^a / d u_i."""
        u = np.asarray(u, dtype=float)
        if self.jacobian is not None:
            J = np.asarray(self.jacobian(u), dtype=float).reshape(DIM, PARAMS)
        else:
            step = settings.fd_step
            J = np.empty((DIM, PARAMS))
            for i in range(PARAMS):
                shift = np.zeros(PARAMS)
                shift[i] = step
                J[:, i] = (self.coordinates(u + shift) - self.coordinates(u - shift)) / (2 * step)
        if not np.all(np.isfinite(J)):
            raise NonFiniteError(f"{self.name} derivatives are not finite at u={u}")
        return J

    def second_derivatives(self, u: npt.ArrayLike) -> FloatArray:
        """4x3x3 array of second partials d^2 F^a / d u_i d u_j."""
        u = np.asarray(u, dtype=float)
        if self.hessian is not None:
            H = np.asarray(self.hessian(u), dtype=float).reshape(DIM, PARAMS, PARAMS)
        elif self.jacobian is not None:
            step = settings.fd_step
            H = np.empty((DIM, PARAMS, PARAMS))
            for i in range(PARAMS):
                shift = np.zeros(PARAMS)
                shift[i] = step
                H[:, i, :] = (
                    self.first_derivatives(u + shift) - self.first_derivatives(u - shift)
                ) / (2 * step)
            H = 0.5 * (H + H.transpose(0, 2, 1))
        else:
            step = settings.christoffel_step
            H = np.empty((DIM, PARAMS, PARAMS))
            f0 = self.coordinates(u)
            for i, j in itertools.product(range(PARAMS), repeat=2):
                ei = np.zeros(PARAMS)
                ej = np.zeros(PARAMS)
                ei[i] = step
                ej[j] = step
                if i == j:
                    H[:, i, i] = (
                        self.coordinates(u + ei) - 2 * f0 + self.coordinates(u - ei)
                    ) / step**2
                else:
                    H[:, i, j] = (
                        self.coordinates(u + ei + ej)
                        - self.coordinates(u + ei - ej)
                        - self.coordinates(u - ei + ej)
                        + self.coordinates(u - ei - ej)
                    ) / (4 * step**2)
        if not np.all(np.isfinite(H)):
            raise NonFiniteError(f"{self.name} second derivatives are not finite at u={u}")
        return H

    # -- domain -------------------------------------------------------------

    def contains(self, u: npt.ArrayLike, margin: float = 0.0) -> bool:
        u = np.asarray(u, dtype=float)
        return bool(
            np.all(u - margin >= np.asarray(self.lower))
            and np.all(u + margin <= np.asarray(self.upper))
        )

    def require_interior(self, u: npt.ArrayLike, margin: float) -> None:
        if not self.contains(u, margin):
            raise BoundaryProximityError(
                f"u={np.asarray(u).tolist()} is closer than {margin} to the boundary of "
                f"{self.name} ({self.lower} .. {self.upper})"
            )

    def sample_grid(self, grid: GridSpec | None = None) -> FloatArray:
        """Uniform samples strictly inside the box, in grid-index order."""
        grid = grid or GridSpec()
        axes = []
        for lo, hi in zip(self.lower, self.upper, strict=True):
            pad = grid.margin * (hi - lo)
            if grid.points == 1:
                axes.append(np.array([0.5 * (lo + hi)]))
            else:
                axes.append(np.linspace(lo + pad, hi - pad, grid.points))
        return np.array(list(itertools.product(*axes)))

    # -- derived immersions -------------------------------------------------

    def with_orientation(self, sign: int) -> "Immersion":
        """Same map with the normal multiplied by ``sign``."""
        return replace(self, orientation=self.orientation * (1 if sign > 0 else -1))

    def transformed(self, isometry: Isometry) -> "Immersion":
        """The image phi o F under an isometry that is affine in coordinates."""
        L, offset = isometry.linear, isometry.offset
        base_map, base_jac, base_hess = self.map, self.jacobian, self.hessian

        def jacobian(u: FloatArray) -> FloatArray:
            return L @ np.asarray(base_jac(u), dtype=float).reshape(DIM, PARAMS)

        def hessian(u: FloatArray) -> FloatArray:
            H = np.asarray(base_hess(u), dtype=float).reshape(DIM, PARAMS, PARAMS)
            return np.einsum("ab,bij->aij", L, H)

        return replace(
            self,
            map=lambda u: L @ np.asarray(base_map(u), dtype=float) + offset,
            jacobian=jacobian if base_jac is not None else None,
            hessian=hessian if base_hess is not None else None,
            name=f"{type(isometry).__name__}({self.name})",
        )

    def left_translated(self, a: Point) -> "Immersion":
        return self.transformed(LeftTranslation(a))

    def reparametrized(
        self,
        A: npt.ArrayLike,
        b: npt.ArrayLike,
        lower: tuple[float, float, float],
        upper: tuple[float, float, float],
    ) -> "Immersion":
        """G(v) = F(A v + b) over the box ``lower .. upper``.

        Raises:
            ValueError: A is singular or the new box does not map into the old one
        """
        A = np.asarray(A, dtype=float).reshape(PARAMS, PARAMS)
        b = np.asarray(b, dtype=float).reshape(PARAMS)
        if abs(np.linalg.det(A)) < 1e-12:
            raise ValueError("reparametrization matrix is singular")
        for corner in itertools.product(*zip(lower, upper, strict=True)):
            if not self.contains(A @ np.asarray(corner) + b):
                raise ValueError(f"corner {corner} maps outside the parameter box")
        base_map, base_jac, base_hess = self.map, self.jacobian, self.hessian

        def jacobian(v: FloatArray) -> FloatArray:
            J = np.asarray(base_jac(A @ v + b), dtype=float).reshape(DIM, PARAMS)
            return J @ A

        def hessian(v: FloatArray) -> FloatArray:
            H = np.asarray(base_hess(A @ v + b), dtype=float).reshape(DIM, PARAMS, PARAMS)
            return np.einsum("aij,ip,jq->apq", H, A, A)

        return Immersion(
            map=lambda v: base_map(A @ v + b),
            lower=lower,
            upper=upper,
            jacobian=jacobian if base_jac is not None else None,
            hessian=hessian if base_hess is not None else None,
            orientation=self.orientation,
            name=f"reparametrized({self.name})",
        )


# ============================================================================
# Local frame and fundamental forms
# ============================================================================


class LocalFrame(NamedTuple):
    """Frame data of F at one parameter point."""

    point: Point
    tangents: FloatArray  # (3, 4) frame components of d_1, d_2, d_3
    metric: FloatArray  # (3, 3) induced metric
    metric_inverse: FloatArray
    normal: FloatArray  # (4,) unit normal


class FundamentalForms(NamedTuple):
    """Induced metric, scalar second fundamental form, unit normal and lambda."""

    g_ind: FloatArray
    h_mat: FloatArray
    normal: TangentVector
    mean_curvature: float


class GaussCodazziResidual(NamedTuple):
    """Residuals of the Gauss and Codazzi equations at one point."""

    gauss: float
    codazzi: float


def _cross_normal(tangents: FloatArray) -> FloatArray:
    """Generalized cross product n with det[T1; T2; T3; n] > 0."""
    basis = np.eye(DIM)
    return np.array([np.linalg.det(np.vstack([tangents, basis[k]])) for k in range(DIM)])


def _tangent_components(F: Immersion, u: FloatArray) -> tuple[Point, FloatArray, FloatArray]:
    point = F.point(u)
    J = F.first_derivatives(u)
    tangents = (coordinate_to_frame(point.t)[:, None] * J).T
    return point, tangents, J


def induced_metric(F: Immersion, u: npt.ArrayLike) -> FloatArray:
    """g_ij = g(d_i F, d_j F)."""
    _, tangents, _ = _tangent_components(F, np.asarray(u, dtype=float))
    return tangents @ tangents.T


def local_frame(F: Immersion, u: npt.ArrayLike) -> LocalFrame:
    """Tangents, induced metric and oriented unit normal at u.

    Raises:
        RankDeficiencyError: det g_ind below ``settings.rank_tolerance``
    """
    u = np.asarray(u, dtype=float)
    point, tangents, _ = _tangent_components(F, u)
    metric = tangents @ tangents.T
    det = float(np.linalg.det(metric))
    if det < settings.rank_tolerance:
        logger.warning(f"{F.name}: rank-deficient tangents at u={u.tolist()} (det g={det:.3e})")
        raise RankDeficiencyError(f"{F.name}: coordinate tangents are dependent at u={u}")
    normal = _cross_normal(tangents)
    normal = F.orientation * normal / np.linalg.norm(normal)
    return LocalFrame(point, tangents, metric, np.linalg.inv(metric), normal)


def coordinate_tangents(F: Immersion, u: npt.ArrayLike) -> list[TangentVector]:
    """d_1 F, d_2 F, d_3 F as tangent vectors at F(u)."""
    frame = local_frame(F, u)
    return [TangentVector(frame.point, row) for row in frame.tangents]


def unit_normal(F: Immersion, u: npt.ArrayLike) -> TangentVector:
    frame = local_frame(F, u)
    return TangentVector(frame.point, frame.normal)


def ambient_derivatives(F: Immersion, u: npt.ArrayLike) -> FloatArray:
    """Frame components of the ambient derivative nabla_{d_i} d_j, shape (3, 3, 4)."""
    u = np.asarray(u, dtype=float)
    point, tangents, J = _tangent_components(F, u)
    H = F.second_derivatives(u)
    scales = coordinate_to_frame(point.t)
    slopes = frame_scale_derivatives(point.t)
    # d_i of the frame components c^k_j = scales_k(t) J^k_j
    component_derivatives = np.einsum("k,i,kj->ijk", slopes, J[3], J) + np.einsum(
        "k,kij->ijk", scales, H
    )
    connection = np.einsum("il,jk,lkm->ijm", tangents, tangents, CONNECTION)
    return component_derivatives + connection


def second_fundamental_form(F: Immersion, u: npt.ArrayLike) -> FundamentalForms:
    """g_ind, h_mat = g(nabla_{d_i} d_j, N), N and lambda = tr(g^-1 h) / 3."""
    frame = local_frame(F, u)
    h_mat = ambient_derivatives(F, u) @ frame.normal
    if not np.all(np.isfinite(h_mat)):
        raise NonFiniteError(f"{F.name}: second fundamental form is not finite at u={u}")
    mean_curvature = float(np.trace(frame.metric_inverse @ h_mat)) / PARAMS
    return FundamentalForms(
        g_ind=frame.metric,
        h_mat=h_mat,
        normal=TangentVector(frame.point, frame.normal),
        mean_curvature=mean_curvature,
    )


def shape_operator(forms: FundamentalForms) -> FloatArray:
    """A = g_ind^-1 h_mat in parameter coordinates."""
    try:
        return np.linalg.solve(forms.g_ind, forms.h_mat)
    except np.linalg.LinAlgError as e:
        raise RankDeficiencyError("induced metric is singular") from e


# ============================================================================
# Intrinsic quantities from finite differences
# ============================================================================


def _shifts(step: float) -> list[FloatArray]:
    return [step * row for row in np.eye(PARAMS)]


def induced_christoffel(F: Immersion, u: npt.ArrayLike, step: float | None = None) -> FloatArray:
    """Gamma[l, i, j] from central differences of g_ind.

    Raises:
        BoundaryProximityError: u closer than ``step`` to the boundary
    """
    step = settings.christoffel_step if step is None else step
    u = np.asarray(u, dtype=float)
    F.require_interior(u, step)
    dg = np.array(
        [(induced_metric(F, u + s) - induced_metric(F, u - s)) / (2 * step) for s in _shifts(step)]
    )
    first_kind = 0.5 * (
        np.einsum("imj->mij", dg) + np.einsum("jmi->mij", dg) - dg
    )
    return np.einsum("lm,mij->lij", np.linalg.inv(induced_metric(F, u)), first_kind)


def gauss_formula_christoffel(F: Immersion, u: npt.ArrayLike) -> FloatArray:
    """Gamma[l, i, j] as the tangential part of nabla_{d_i} d_j."""
    frame = local_frame(F, u)
    return np.einsum(
        "lm,ijk,mk->lij", frame.metric_inverse, ambient_derivatives(F, u), frame.tangents
    )


def intrinsic_curvature(F: Immersion, u: npt.ArrayLike, step: float | None = None) -> FloatArray:
    """R[l, k, i, j]: component l of R(d_i, d_j)d_k from the induced Christoffels."""
    step = settings.christoffel_step if step is None else step
    u = np.asarray(u, dtype=float)
    F.require_interior(u, 2 * step)
    gamma = induced_christoffel(F, u, step)
    d_gamma = np.array(
        [
            (induced_christoffel(F, u + s, step) - induced_christoffel(F, u - s, step))
            / (2 * step)
            for s in _shifts(step)
        ]
    )
    return (
        np.einsum("iljk->lkij", d_gamma)
        - np.einsum("jlik->lkij", d_gamma)
        + np.einsum("lim,mjk->lkij", gamma, gamma)
        - np.einsum("ljm,mik->lkij", gamma, gamma)
    )


def nabla_h(F: Immersion, u: npt.ArrayLike, step: float | None = None) -> NablaH:
    """(nabla h)[i, j, k] = d_i h_jk - Gamma^l_ij h_lk - Gamma^l_ik h_jl.

    The normal bundle is a trivial line bundle, so the normal connection acts on the
    scalar h_jk as the plain derivative.

    Raises:
        BoundaryProximityError: u closer than ``step`` to the boundary
    """
    step = settings.christoffel_step if step is None else step
    u = np.asarray(u, dtype=float)
    F.require_interior(u, step)
    h = second_fundamental_form(F, u).h_mat
    dh = np.array(
        [
            (
                second_fundamental_form(F, u + s).h_mat
                - second_fundamental_form(F, u - s).h_mat
            )
            / (2 * step)
            for s in _shifts(step)
        ]
    )
    gamma = induced_christoffel(F, u, step)
    return dh - np.einsum("lij,lk->ijk", gamma, h) - np.einsum("lik,jl->ijk", gamma, h)


def _ambient_curvature(frame: LocalFrame) -> FloatArray:
    """Frame components of R(d_i, d_j)d_k, shape (3, 3, 3, 4)."""
    T = frame.tangents
    return np.einsum("ia,jb,kc,abcd->ijkd", T, T, T, curvature_tensor())


def gauss_codazzi_check(
    F: Immersion, u: npt.ArrayLike, step: float | None = None
) -> GaussCodazziResidual:
    """Residuals of the Gauss and Codazzi equations on the coordinate tangents.

    Gauss: (R(X,Y)Z)^T = R_ind(X,Y)Z - A_{h(Y,Z)} X + A_{h(X,Z)} Y.
    Codazzi: g(R(X,Y)Z, N) = (nabla h)(X,Y,Z) - (nabla h)(Y,X,Z).
    """
    step = settings.christoffel_step if step is None else step
    u = np.asarray(u, dtype=float)
    frame = local_frame(F, u)
    forms = second_fundamental_form(F, u)
    A = shape_operator(forms)
    h = forms.h_mat
    ambient = _ambient_curvature(frame)

    tangential = np.einsum("lm,ijkd,md->lkij", frame.metric_inverse, ambient, frame.tangents)
    expected = (
        intrinsic_curvature(F, u, step)
        - np.einsum("jk,li->lkij", h, A)
        + np.einsum("ik,lj->lkij", h, A)
    )
    normal_part = ambient @ frame.normal
    nh = nabla_h(F, u, step)
    return GaussCodazziResidual(
        gauss=float(np.max(np.abs(tangential - expected))),
        codazzi=float(np.max(np.abs(normal_part - (nh - nh.transpose(1, 0, 2))))),
    )


def weingarten_residual(F: Immersion, u: npt.ArrayLike, step: float | None = None) -> float:
    """max_i |nabla_{d_i} N + A(d_i)| in the frame norm."""
    step = settings.christoffel_step if step is None else step
    u = np.asarray(u, dtype=float)
    F.require_interior(u, step)
    frame = local_frame(F, u)
    A = shape_operator(second_fundamental_form(F, u))
    worst = 0.0
    for i, s in enumerate(_shifts(step)):
        dN = (local_frame(F, u + s).normal - local_frame(F, u - s).normal) / (2 * step)
        derivative = dN + np.einsum("l,k,lkm->m", frame.tangents[i], frame.normal, CONNECTION)
        shape_image = A[:, i] @ frame.tangents
        worst = max(worst, float(np.linalg.norm(derivative + shape_image)))
    return worst


def umbilical_codazzi_residual(
    F: Immersion, u: npt.ArrayLike, step: float | None = None
) -> float:
    """Residual of g(R(d_i,d_j)d_k, N) = g_jk d_i lambda - g_ik d_j lambda."""
    step = settings.christoffel_step if step is None else step
    u = np.asarray(u, dtype=float)
    F.require_interior(u, step)
    frame = local_frame(F, u)
    d_lambda = np.array(
        [
            (
                second_fundamental_form(F, u + s).mean_curvature
                - second_fundamental_form(F, u - s).mean_curvature
            )
            / (2 * step)
            for s in _shifts(step)
        ]
    )
    g = frame.metric
    expected = np.einsum("jk,i->ijk", g, d_lambda) - np.einsum("ik,j->ijk", g, d_lambda)
    return float(np.max(np.abs(_ambient_curvature(frame) @ frame.normal - expected)))


def induced_sectional_curvature(
    F: Immersion,
    u: npt.ArrayLike,
    first: npt.ArrayLike | TangentVector,
    second: npt.ArrayLike | TangentVector,
) -> float:
    """Sectional curvature of the hypersurface via the Gauss equation.

    The plane is given by two parameter-space vectors (coefficients of d_1, d_2, d_3) or
    by two tangent vectors at F(u).

    Raises:
        DegeneratePlaneError: the vectors do not span a plane
        GeometryError: a TangentVector is not tangent to the hypersurface
    """
    frame = local_frame(F, u)
    forms = second_fundamental_form(F, u)

    def parameters(v: npt.ArrayLike | TangentVector) -> FloatArray:
        if not isinstance(v, TangentVector):
            return np.asarray(v, dtype=float).reshape(PARAMS)
        if v.base != frame.point:
            raise GeometryError(f"vector based at {v.base}, hypersurface point {frame.point}")
        if abs(v.comps @ frame.normal) > 1e-9 * max(1.0, v.norm()):
            raise GeometryError("vector is not tangent to the hypersurface")
        return frame.metric_inverse @ (frame.tangents @ v.comps)

    a, b = parameters(first), parameters(second)
    X, Y = a @ frame.tangents, b @ frame.tangents
    denominator = float((X @ X) * (Y @ Y) - (X @ Y) ** 2)
    if denominator < settings.plane_tolerance:
        raise DegeneratePlaneError("tangent vectors do not span a plane")
    h = forms.h_mat
    ambient = float(np.einsum("a,b,c,d,abcd->", X, Y, Y, X, curvature_tensor()))
    extrinsic = (a @ h @ a) * (b @ h @ b) - (a @ h @ b) ** 2
    return (ambient + extrinsic) / denominator


# ============================================================================
# Classification
# ============================================================================


class SampleResiduals(NamedTuple):
    """Per-sample residuals feeding a ClassificationReport."""

    totally_geodesic: float
    totally_umbilical: float
    parallel: float
    codazzi: float
    gauss: float
    codazzi_eq: float
    weingarten: float
    mean_curvature: float
    normal_form: str


def _norm2(tensor: FloatArray, ginv: FloatArray) -> float:
    return math.sqrt(max(0.0, float(np.einsum("ij,kl,ik,jl->", tensor, tensor, ginv, ginv))))


def _norm3(tensor: FloatArray, ginv: FloatArray) -> float:
    value = np.einsum("ijk,abc,ia,jb,kc->", tensor, tensor, ginv, ginv, ginv)
    return math.sqrt(max(0.0, float(value)))


def stencil_step(F: Immersion, step: float | None = None) -> float:
    """``step`` (default ``settings.christoffel_step``) capped by the narrowest box side."""
    step = settings.christoffel_step if step is None else step
    width = float(np.min(np.asarray(F.upper) - np.asarray(F.lower)))
    capped = min(step, STENCIL_FRACTION * width)
    if capped < step:
        logger.debug(f"{F.name}: finite-difference step {step:g} capped to {capped:g}")
    return capped


def sample_residuals(F: Immersion, u: npt.ArrayLike, step: float | None = None) -> SampleResiduals:
    """Class residuals (g-tensor norms) and equation residuals at one sample.

    The finite-difference step is capped by :func:`stencil_step` so that narrow boxes
    keep their grid samples clear of the stencil.
    """
    step = stencil_step(F, step)
    u = np.asarray(u, dtype=float)
    F.require_interior(u, 2 * step)
    forms = second_fundamental_form(F, u)
    ginv = np.linalg.inv(forms.g_ind)
    h, lam = forms.h_mat, forms.mean_curvature
    nh = nabla_h(F, u, step)
    skew = 0.5 * (nh - nh.transpose(1, 0, 2))
    gauss = gauss_codazzi_check(F, u, step)

    form = codazzi_normal_form(forms.normal) or umbilical_normal_form(
        forms.normal, lam, tolerance=1e-6, cos_guard=settings.cos_beta_guard
    )
    return SampleResiduals(
        totally_geodesic=_norm2(h, ginv),
        totally_umbilical=_norm2(h - lam * forms.g_ind, ginv),
        parallel=_norm3(nh, ginv),
        codazzi=_norm3(skew, ginv),
        gauss=gauss.gauss,
        codazzi_eq=gauss.codazzi,
        weingarten=weingarten_residual(F, u, step),
        mean_curvature=lam,
        normal_form=form.value if form is not None else "generic",
    )


def classify(
    F: Immersion,
    grid: GridSpec | None = None,
    tol: Tolerances | None = None,
    jobs: int | None = None,
    step: float | None = None,
) -> ClassificationReport:
    """Classify F over a sample grid.

    Verdicts follow the class implications: totally geodesic implies parallel and
    totally umbilical, parallel implies Codazzi.

    Args:
        F: Immersion to classify
        grid: Sample grid (default 5x5x5 with a 5% margin)
        tol: Verdict thresholds
        jobs: Worker threads; results are reduced in grid order
        step: Finite-difference step for Christoffels and nabla h, capped by stencil_step

    Returns:
        ClassificationReport with max residuals and verdicts
    """
    grid = grid or GridSpec()
    tol = tol or Tolerances()
    jobs = settings.jobs if jobs is None else jobs
    samples = F.sample_grid(grid)
    logger.info(f"Classifying {F.name} on {len(samples)} samples with {jobs} worker(s)")

    def evaluate(u: FloatArray) -> SampleResiduals:
        return sample_residuals(F, u, step)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(evaluate, samples))
    else:
        results = [evaluate(u) for u in samples]

    residuals = {
        HypersurfaceClass.TOTALLY_GEODESIC: max(r.totally_geodesic for r in results),
        HypersurfaceClass.TOTALLY_UMBILICAL: max(r.totally_umbilical for r in results),
        HypersurfaceClass.PARALLEL: max(r.parallel for r in results),
        HypersurfaceClass.CODAZZI: max(r.codazzi for r in results),
    }
    geodesic = residuals[HypersurfaceClass.TOTALLY_GEODESIC] <= tol.totally_geodesic
    parallel = geodesic or residuals[HypersurfaceClass.PARALLEL] <= tol.parallel
    verdicts = {
        HypersurfaceClass.TOTALLY_GEODESIC: geodesic,
        HypersurfaceClass.TOTALLY_UMBILICAL: geodesic
        or residuals[HypersurfaceClass.TOTALLY_UMBILICAL] <= tol.totally_umbilical,
        HypersurfaceClass.PARALLEL: parallel,
        HypersurfaceClass.CODAZZI: parallel
        or residuals[HypersurfaceClass.CODAZZI] <= tol.codazzi,
    }
    lambdas = [r.mean_curvature for r in results]
    report = ClassificationReport(
        residuals=residuals,
        verdicts=verdicts,
        gauss_residual=max(r.gauss for r in results),
        codazzi_eq_residual=max(r.codazzi_eq for r in results),
        weingarten_residual=max(r.weingarten for r in results),
        mean_curvature_range=(min(lambdas), max(lambdas)),
        normal_forms=sorted({r.normal_form for r in results}),
        samples=len(results),
        tolerances=tol,
    )
    logger.info(
        f"{F.name}: "
        + ", ".join(f"{kind.value}={verdicts[kind]}" for kind in HypersurfaceClass)
    )
    return report
