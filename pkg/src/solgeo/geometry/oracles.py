"""Independent verifiers for the closed forms in solgroup.

Each oracle recomputes a table or formula from more primitive data (brackets and
orthonormality, the connection, the coordinate metric) and the ``*_suite`` functions
compare the two, returning ``OracleReport`` rows for the ``verify`` command.
"""

import itertools
import math
from collections.abc import Callable, Iterator
from enum import Enum
from typing import NamedTuple

import numpy as np

from ..config.settings import settings
from ..data.schemas import VerifyScope
from ..utils.logging import get_logger
from .solgroup import (
    BRACKETS,
    CONNECTION,
    DIM,
    IDENTITY,
    J_MINUS,
    J_PLUS,
    METRIC,
    PROJECTION_E4,
    FloatArray,
    LeftTranslation,
    Point,
    SignLike,
    TangentVector,
    VectorFieldFn,
    XYRotation,
    ZReflection,
    apply_Jminus,
    apply_Jplus,
    bracket,
    complex_structure,
    connection_apply,
    coordinate_to_frame,
    covariant_derivative,
    curvature_invariant,
    curvature_table,
    curvature_tensor,
    frame_at,
    frame_slot,
    group_inv,
    group_mul,
    isometry_check,
    nabla_E4,
    nabla_frame,
    nabla_J,
    nabla_P,
    nijenhuis,
    sectional_curvature,
)

logger = get_logger("oracles")

_BASIS = np.eye(DIM)
_TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
CONVERGENCE_STEPS = (1e-2, 5e-3, 2.5e-3)


class OracleReport(NamedTuple):
    """Outcome of one oracle comparison."""

    name: str
    max_residual: float
    samples: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


class TensorName(str, Enum):
    """Frame-constant tensors whose covariant derivatives are checked."""

    JPLUS = "J+"
    JMINUS = "J-"
    P = "P"


def _tensor_matrix(which: TensorName | str) -> FloatArray:
    kind = TensorName(which)
    if kind is TensorName.JPLUS:
        return J_PLUS
    if kind is TensorName.JMINUS:
        return J_MINUS
    return PROJECTION_E4


# ============================================================================
# Oracles
# ============================================================================


def koszul_oracle(i: int, j: int) -> FloatArray:
    """nabla_{E_i} E_j from Koszul's formula on the orthonormal left-invariant frame.

    Metric-derivative terms vanish, leaving
    2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
    """
    X, Y = _BASIS[frame_slot(i)], _BASIS[frame_slot(j)]
    comps = np.empty(DIM)
    for k in range(DIM):
        Z = _BASIS[k]
        comps[k] = 0.5 * (bracket(X, Y) @ Z - bracket(Y, Z) @ X + bracket(Z, X) @ Y)
    return comps


def curvature_direct_oracle(i: int, j: int, k: int, h: float | None = None) -> FloatArray:
    """R(E_i, E_j)E_k from nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.

    With ``h=None`` the connection table is applied directly. With a step the inner and
    outer covariant derivatives go through ``covariant_derivative`` on fields without
    derivative callbacks, so the finite-difference path is exercised.
    """
    X, Y, Z = _BASIS[frame_slot(i)], _BASIS[frame_slot(j)], _BASIS[frame_slot(k)]
    if h is None:
        first = connection_apply(X, connection_apply(Y, Z))
        second = connection_apply(Y, connection_apply(X, Z))
        return first - second - connection_apply(bracket(X, Y), Z)

    def field(comps: FloatArray) -> VectorFieldFn:
        return VectorFieldFn(evaluate=lambda p: comps)

    def nested(outer: FloatArray, inner: FloatArray) -> FloatArray:
        inner_field = VectorFieldFn(
            evaluate=lambda p: covariant_derivative(field(inner), field(Z), p, h).comps
        )
        return covariant_derivative(field(outer), inner_field, IDENTITY, h).comps

    bracket_term = covariant_derivative(field(bracket(X, Y)), field(Z), IDENTITY, h).comps
    return nested(X, Y) - nested(Y, X) - bracket_term


def two_form_components(sign: SignLike | int, p: Point, scaled: bool = True) -> FloatArray:
    """omega_ab = f(t) g(d_a, J d_b) for J = J+-, with f = e^{2t} when ``scaled``."""
    J = complex_structure(sign)
    D = np.diag(coordinate_to_frame(p.t))
    omega = D @ J @ D
    return math.exp(2.0 * p.t) * omega if scaled else omega


def exterior_derivative(
    sign: SignLike | int, p: Point, h: float | None = None, scaled: bool = True
) -> FloatArray:
    """d omega on the coordinate triples (x,y,z), (x,y,t), (x,z,t), (y,z,t).

    Partial derivatives of the component functions are central differences with step h.
    """
    h = settings.fd_step if h is None else h
    if h <= 0:
        raise ValueError("step h must be positive")
    centre = p.as_array()
    partials = np.empty((DIM, DIM, DIM))
    for a in range(DIM):
        shift = np.zeros(DIM)
        shift[a] = h
        plus = two_form_components(sign, Point.from_array(centre + shift), scaled)
        minus = two_form_components(sign, Point.from_array(centre - shift), scaled)
        partials[a] = (plus - minus) / (2.0 * h)
    return np.array(
        [partials[a, b, c] + partials[b, c, a] + partials[c, a, b] for a, b, c in _TRIPLES]
    )


def dform_closedness_oracle(
    sign: SignLike | int, p: Point, h: float | None = None, scaled: bool = True
) -> float:
    """Max |d(e^{2t} Omega+-)| over the four independent slot triples at p."""
    return float(np.max(np.abs(exterior_derivative(sign, p, h, scaled))))


class ClosednessSweep(NamedTuple):
    """Closedness residuals of Omega+- over a point set, one entry per step."""

    steps: FloatArray
    scaled: FloatArray  # max |d(e^{2t} Omega)|
    unscaled: FloatArray  # max |d Omega - exact d Omega|

    @property
    def ratios(self) -> FloatArray:
        """Error ratios of consecutive steps of the unscaled form."""
        return self.unscaled[:-1] / self.unscaled[1:]


def unscaled_dform_exact(p: Point) -> FloatArray:
    """d Omega+- on the four triples; only (x, y, t) is nonzero, with value 2 e^{-2t}."""
    return np.array([0.0, 2.0 * math.exp(-2.0 * p.t), 0.0, 0.0])


def closedness_sweep(
    sign: SignLike | int, points: list[Point], steps: tuple[float, ...] = CONVERGENCE_STEPS
) -> ClosednessSweep:
    """Max residuals of the scaled and unscaled two-forms over ``points`` at each step.

    The scaled components carry no truncation error, so their residual is rounding
    only; the unscaled error shrinks by 4 per halving of the step.
    """
    scaled, unscaled = [], []
    for h in steps:
        scaled.append(max(dform_closedness_oracle(sign, p, h) for p in points))
        errors = [
            exterior_derivative(sign, p, h, scaled=False) - unscaled_dform_exact(p)
            for p in points
        ]
        unscaled.append(_max_abs(np.concatenate(errors)))
    return ClosednessSweep(np.array(steps), np.array(scaled), np.array(unscaled))


def nabla_tensor_oracle(
    which: TensorName | str, i: int, j: int, h: float | None = None, p: Point = IDENTITY
) -> TangentVector:
    """(nabla T)(E_i, E_j) = nabla_{E_i}(T E_j) - T(nabla_{E_i} E_j) for T in {J+, J-, P}."""
    T = _tensor_matrix(which)
    X, Y = _BASIS[frame_slot(i)], _BASIS[frame_slot(j)]
    if h is None:
        derivative = connection_apply(X, T @ Y)
    else:
        TY = T @ Y
        derivative = covariant_derivative(
            VectorFieldFn(evaluate=lambda q: X), VectorFieldFn(evaluate=lambda q: TY), p, h
        ).comps
    return TangentVector(p, derivative - T @ connection_apply(X, Y))


# ============================================================================
# Suites
# ============================================================================


def _frame_indices(count: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(1, DIM + 1), repeat=count)


def _max_abs(values: list[float] | FloatArray) -> float:
    return float(np.max(np.abs(values))) if len(values) else 0.0


def _random_points(rng: np.random.Generator, count: int, scale: float = 1.0) -> list[Point]:
    return [Point.from_array(row) for row in rng.uniform(-scale, scale, size=(count, DIM))]


def group_suite(rng: np.random.Generator) -> list[OracleReport]:
    """Frame orthonormality, group axioms and the three isometries."""
    points = _random_points(rng, 100, scale=2.0)
    ortho = [
        _max_abs(frame_at(p) @ METRIC.matrix(p) @ frame_at(p).T - np.eye(DIM)) for p in points
    ]

    triples = [_random_points(rng, 3) for _ in range(100)]
    associativity = [
        _max_abs(
            group_mul(group_mul(p, q), r).as_array() - group_mul(p, group_mul(q, r)).as_array()
        )
        for p, q, r in triples
    ]
    inverse = [
        max(
            _max_abs(group_mul(p, group_inv(p)).as_array()),
            _max_abs(group_mul(group_inv(p), p).as_array()),
        )
        for p, _, _ in triples
    ]

    isometries = [
        LeftTranslation(Point(1.0, -2.0, 0.5, 0.3)),
        XYRotation(0.7),
        XYRotation(math.pi / 2),
        ZReflection(),
    ]
    preserved = []
    differential = []
    for p in points[:20]:
        v = TangentVector(p, rng.normal(size=DIM))
        w = TangentVector(p, rng.normal(size=DIM))
        for iso in isometries:
            preserved.append(isometry_check(iso, p, v, w))
            differential.append(
                _max_abs(iso.push_forward(v).comps - iso.coordinate_push_forward(v).comps)
            )

    return [
        OracleReport("frame_orthonormality", max(ortho), len(ortho), 1e-14),
        OracleReport("group_associativity", max(associativity), len(associativity), 1e-12),
        OracleReport("group_inverse", max(inverse), len(inverse), 1e-12),
        OracleReport("isometry_metric", max(preserved), len(preserved), 1e-12),
        OracleReport("isometry_differential", max(differential), len(differential), 1e-12),
    ]


def connection_suite(rng: np.random.Generator) -> list[OracleReport]:
    """Koszul, metric compatibility, torsion and the Leibniz rule."""
    koszul = [_max_abs(koszul_oracle(i, j) - nabla_frame(i, j)) for i, j in _frame_indices(2)]

    compatibility = []
    torsion = []
    for i, j in _frame_indices(2):
        torsion.append(
            _max_abs(
                CONNECTION[i - 1, j - 1] - CONNECTION[j - 1, i - 1] - BRACKETS[i - 1, j - 1]
            )
        )
        for k in range(DIM):
            compatibility.append(CONNECTION[i - 1, j - 1, k] + CONNECTION[i - 1, k, j - 1])

    p = IDENTITY
    e4_formula = [
        _max_abs(nabla_E4(TangentVector.frame(p, i)).comps - nabla_frame(i, 4))
        for i in range(1, DIM + 1)
    ]

    # Y = (x sin t) E1 + z E3 against its exact derivative callback
    def components(q: Point) -> FloatArray:
        return np.array([q.x * math.sin(q.t), 0.0, q.z, 0.0])

    def derivative(q: Point, direction: FloatArray) -> FloatArray:
        coords = TangentVector(q, direction).to_coordinates()
        gradient_x = np.array([math.sin(q.t), 0.0, 0.0, q.x * math.cos(q.t)])
        gradient_z = np.array([0.0, 0.0, 1.0, 0.0])
        return np.array([gradient_x @ coords, 0.0, gradient_z @ coords, 0.0])

    numeric = VectorFieldFn(evaluate=components)
    exact = VectorFieldFn(evaluate=components, derivative=derivative)
    leibniz = []
    for q in _random_points(rng, 20):
        X = VectorFieldFn.constant(rng.normal(size=DIM))
        leibniz.append(
            _max_abs(
                covariant_derivative(X, numeric, q).comps - covariant_derivative(X, exact, q).comps
            )
        )

    return [
        OracleReport("koszul_vs_table", max(koszul), len(koszul), 0.0),
        OracleReport("metric_compatibility", _max_abs(compatibility), len(compatibility), 0.0),
        OracleReport("torsion_free", max(torsion), len(torsion), 0.0),
        OracleReport("nabla_E4_formula", max(e4_formula), len(e4_formula), 0.0),
        OracleReport("leibniz_finite_difference", max(leibniz), len(leibniz), 1e-8),
    ]


def curvature_suite(rng: np.random.Generator) -> list[OracleReport]:
    """Table, invariant formula and commutator definition; symmetries; sectional values."""
    p = IDENTITY
    E = [TangentVector.frame(p, i) for i in range(1, DIM + 1)]

    invariant = []
    direct = []
    for i, j, k in _frame_indices(3):
        table = curvature_table(i, j, k)
        invariant.append(_max_abs(curvature_invariant(E[i - 1], E[j - 1], E[k - 1]).comps - table))
        direct.append(_max_abs(curvature_direct_oracle(i, j, k) - table))

    symmetries = []
    bianchi = []
    for i, j, k, m in _frame_indices(4):
        R_ijkm = curvature_table(i, j, k)[m - 1]
        symmetries.append(R_ijkm + curvature_table(j, i, k)[m - 1])
        symmetries.append(R_ijkm + curvature_table(i, j, m)[k - 1])
        symmetries.append(R_ijkm - curvature_table(k, m, i)[j - 1])
        bianchi.append(
            R_ijkm + curvature_table(j, k, i)[m - 1] + curvature_table(k, i, j)[m - 1]
        )

    expected = {(1, 2): -1.0, (1, 3): 2.0, (1, 4): -1.0, (2, 3): 2.0, (2, 4): -1.0, (3, 4): -4.0}
    sectional = [
        abs(sectional_curvature(p, E[i - 1], E[j - 1]) - value)
        for (i, j), value in expected.items()
    ]

    # random vectors: invariant formula against the table
    random_invariant = []
    q = Point.from_array(rng.uniform(-1.0, 1.0, size=DIM))
    for _ in range(20):
        X, Y, Z = (TangentVector(q, rng.normal(size=DIM)) for _ in range(3))
        table = np.einsum("a,b,c,abcd->d", X.comps, Y.comps, Z.comps, curvature_tensor())
        random_invariant.append(_max_abs(curvature_invariant(X, Y, Z).comps - table))

    return [
        OracleReport("table_vs_invariant", max(invariant), len(invariant), 0.0),
        OracleReport("table_vs_commutator", max(direct), len(direct), 0.0),
        OracleReport("curvature_symmetries", _max_abs(symmetries), len(symmetries), 0.0),
        OracleReport("first_bianchi", _max_abs(bianchi), len(bianchi), 0.0),
        OracleReport("sectional_values", max(sectional), len(sectional), 0.0),
        OracleReport("invariant_random_vectors", max(random_invariant), 20, 1e-12),
    ]


def complex_suite(rng: np.random.Generator) -> list[OracleReport]:
    """J+- algebra, integrability and the covariant-derivative closed forms."""
    p = IDENTITY
    E = [TangentVector.frame(p, i) for i in range(1, DIM + 1)]

    algebra = []
    for J in (J_PLUS, J_MINUS):
        algebra.append(_max_abs(J @ J + np.eye(DIM)))
        algebra.append(_max_abs(J.T @ J - np.eye(DIM)))
    algebra.append(_max_abs(J_PLUS @ J_MINUS - J_MINUS @ J_PLUS))

    integrability = [
        _max_abs(nijenhuis(sign, i, j)) for sign in (1, -1) for i, j in _frame_indices(2)
    ]

    remark = []
    for i, j in _frame_indices(2):
        X, Y = E[i - 1], E[j - 1]
        for sign, name in ((1, TensorName.JPLUS), (-1, TensorName.JMINUS)):
            remark.append(
                _max_abs(nabla_J(sign, X, Y).comps - nabla_tensor_oracle(name, i, j).comps)
            )
        remark.append(_max_abs(nabla_P(X, Y).comps - nabla_tensor_oracle("P", i, j).comps))

    # same closed forms on random vectors, by bilinearity against the oracle tables
    bilinear = []
    for _ in range(20):
        x, y = rng.normal(size=DIM), rng.normal(size=DIM)
        X, Y = TangentVector(p, x), TangentVector(p, y)
        expected = sum(
            x[i - 1] * y[j - 1] * nabla_tensor_oracle("P", i, j).comps
            for i, j in _frame_indices(2)
        )
        bilinear.append(_max_abs(nabla_P(X, Y).comps - expected))
        for sign in (1, -1):
            image = apply_Jplus(Y) if sign > 0 else apply_Jminus(Y)
            bilinear.append(abs(image.comps @ image.comps - y @ y))

    return [
        OracleReport("complex_structure_algebra", max(algebra), len(algebra), 0.0),
        OracleReport("nijenhuis_vanishes", max(integrability), len(integrability), 0.0),
        OracleReport("nabla_J_P_formulas", max(remark), len(remark), 0.0),
        OracleReport("nabla_P_bilinear", max(bilinear), len(bilinear), 1e-12),
    ]


def forms_suite(rng: np.random.Generator) -> list[OracleReport]:
    """Closedness of e^{2t} Omega+- on a grid and non-closedness of Omega+."""
    axis = np.linspace(-1.0, 1.0, 5)
    grid = [Point(*coords) for coords in itertools.product(axis, repeat=DIM)]
    reports = []
    for sign, label in ((1, "plus"), (-1, "minus")):
        residuals = [dform_closedness_oracle(sign, p) for p in grid]
        reports.append(OracleReport(f"closed_scaled_{label}", max(residuals), len(grid), 1e-7))

    # d Omega+ (d_x, d_y, d_t) = 2 e^{-2t}; compare against the exact value at t = 0
    level = [p for p in grid if p.t == 0.0]
    unscaled = [
        abs(exterior_derivative(1, p, scaled=False)[1] - 2.0 * math.exp(-2.0 * p.t))
        for p in level
    ]
    reports.append(OracleReport("unscaled_not_closed", max(unscaled), len(level), 1e-6))

    for sign, label in ((1, "plus"), (-1, "minus")):
        sweep = closedness_sweep(sign, grid)
        samples = len(grid) * len(sweep.steps)
        # scaled residual <= h^2 at every step; unscaled ratios within 1 of 4
        bound = float(np.max(sweep.scaled / sweep.steps**2))
        reports.append(OracleReport(f"closed_scaled_{label}_h2_bound", bound, samples, 1.0))
        spread = float(np.max(np.abs(sweep.ratios - 4.0)))
        reports.append(OracleReport(f"second_order_convergence_{label}", spread, samples, 1.0))
    return reports


SUITES: dict[VerifyScope, Callable[[np.random.Generator], list[OracleReport]]] = {
    VerifyScope.GROUP: group_suite,
    VerifyScope.CONNECTION: connection_suite,
    VerifyScope.CURVATURE: curvature_suite,
    VerifyScope.COMPLEX: complex_suite,
    VerifyScope.FORMS: forms_suite,
}


def run_suite(scope: VerifyScope | str, seed: int | None = None) -> list[OracleReport]:
    """Run one suite, or all of them for ``VerifyScope.ALL``."""
    scope = VerifyScope(scope)
    rng = np.random.default_rng(settings.seed if seed is None else seed)
    selected = list(SUITES) if scope is VerifyScope.ALL else [scope]
    reports: list[OracleReport] = []
    for name in selected:
        logger.info(f"Running {name.value} suite")
        batch = SUITES[name](rng)
        failed = [r.name for r in batch if not r.passed]
        if failed:
            logger.warning(f"{name.value} suite failed checks: {', '.join(failed)}")
        reports.extend(batch)
    return reports
