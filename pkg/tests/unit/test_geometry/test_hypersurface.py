"""Tests for hypersurface module."""

import math

import numpy as np
import pytest

from solgeo.config.settings import settings
from solgeo.data.schemas import GridSpec, HypersurfaceClass
from solgeo.geometry.families import PlaneCurve, family_cylinder, family_t_plane
from solgeo.geometry.hypersurface import (
    Immersion,
    ambient_derivatives,
    classify,
    coordinate_tangents,
    gauss_codazzi_check,
    gauss_formula_christoffel,
    induced_christoffel,
    induced_metric,
    induced_sectional_curvature,
    intrinsic_curvature,
    nabla_h,
    sample_residuals,
    second_fundamental_form,
    shape_operator,
    stencil_step,
    umbilical_codazzi_residual,
    unit_normal,
    weingarten_residual,
)
from solgeo.geometry.solgroup import Point, TangentVector
from solgeo.utils.exceptions import (
    BoundaryProximityError,
    DegeneratePlaneError,
    GeometryError,
    RankDeficiencyError,
)

U = np.array([0.1, 0.2, 0.3])
U_PROFILE = np.array([0.1, 0.2, 0.12])  # inside the umbilical profile interval [0, 0.25]


def map_only(F):
    """The same immersion without derivative callbacks."""
    return Immersion(map=F.map, lower=F.lower, upper=F.upper, name=f"fd({F.name})")


class TestImmersion:
    """Tests for Immersion construction and domain handling."""

    def test_empty_box(self):
        """Test that lo >= hi raises."""
        with pytest.raises(ValueError):
            Immersion(map=lambda u: np.zeros(4), lower=(0, 0, 0), upper=(1, 0, 1))

    def test_bad_orientation(self):
        """Test that orientation must be +-1."""
        with pytest.raises(ValueError):
            Immersion(map=lambda u: np.zeros(4), lower=(0, 0, 0), upper=(1, 1, 1), orientation=2)

    def test_sample_grid_order(self, z_plane):
        """Test grid size, margin and lexicographic order."""
        samples = z_plane.sample_grid(GridSpec(points=3, margin=0.1))

        assert samples.shape == (27, 3)
        np.testing.assert_allclose(samples[0], [-0.4, -0.4, -0.4])
        np.testing.assert_allclose(samples[1], [-0.4, -0.4, 0.0])
        np.testing.assert_allclose(samples[-1], [0.4, 0.4, 0.4])

    def test_single_point_grid(self, z_plane):
        """Test that one point per axis samples the box centre."""
        samples = z_plane.sample_grid(GridSpec(points=1))
        np.testing.assert_allclose(samples, [[0.0, 0.0, 0.0]])

    def test_require_interior(self, z_plane):
        """Test stencils reaching the boundary raise."""
        z_plane.require_interior(U, 1e-4)
        with pytest.raises(BoundaryProximityError):
            z_plane.require_interior([0.5, 0.0, 0.0], 1e-4)
        with pytest.raises(BoundaryProximityError):
            induced_christoffel(z_plane, [0.0, -0.49999, 0.0])

    def test_finite_difference_derivatives(self, circle_cylinder):
        """Test numeric Jacobian and Hessian against the exact ones."""
        numeric = map_only(circle_cylinder)
        np.testing.assert_allclose(
            numeric.first_derivatives(U), circle_cylinder.first_derivatives(U), atol=1e-9
        )
        np.testing.assert_allclose(
            numeric.second_derivatives(U), circle_cylinder.second_derivatives(U), atol=1e-6
        )

    def test_reparametrized(self, z_plane):
        """Test that G(v) = F(2v) scales the induced metric by 4."""
        G = z_plane.reparametrized(2 * np.eye(3), np.zeros(3), (-0.2,) * 3, (0.2,) * 3)
        v = np.array([0.05, -0.1, 0.15])
        np.testing.assert_allclose(induced_metric(G, v), 4 * induced_metric(z_plane, 2 * v))

    def test_reparametrized_checks(self, z_plane):
        """Test singular matrices and boxes mapping outside."""
        with pytest.raises(ValueError):
            z_plane.reparametrized(np.zeros((3, 3)), np.zeros(3), (-0.1,) * 3, (0.1,) * 3)
        with pytest.raises(ValueError):
            z_plane.reparametrized(2 * np.eye(3), np.zeros(3), (-0.5,) * 3, (0.5,) * 3)

    def test_rank_deficient(self):
        """Test that dependent tangents raise."""
        F = Immersion(
            map=lambda u: np.array([u[0], u[1], 0.0, 0.0]), lower=(0, 0, 0), upper=(1, 1, 1)
        )
        with pytest.raises(RankDeficiencyError):
            unit_normal(F, [0.5, 0.5, 0.5])


class TestFundamentalForms:
    """Tests for induced_metric, unit_normal and second_fundamental_form."""

    def test_z_plane(self, z_plane):
        """Test the z-plane: g = diag(e^{-2t}, e^{-2t}, 1), N = -E3, h = 0."""
        t = U[2]
        forms = second_fundamental_form(z_plane, U)

        np.testing.assert_allclose(
            forms.g_ind, np.diag([math.exp(-2 * t), math.exp(-2 * t), 1.0]), atol=1e-15
        )
        np.testing.assert_allclose(forms.normal.comps, [0.0, 0.0, -1.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(forms.h_mat, np.zeros((3, 3)), atol=1e-15)
        assert forms.mean_curvature == pytest.approx(0.0, abs=1e-15)
        assert forms.normal.base == Point(0.1, 0.2, 1.0, 0.3)

    def test_t_plane_shape_operator(self, t_plane):
        """Test N = E4 and A = diag(1, 1, -2)."""
        forms = second_fundamental_form(t_plane, U)

        np.testing.assert_allclose(forms.normal.comps, [0.0, 0.0, 0.0, 1.0], atol=1e-15)
        np.testing.assert_allclose(shape_operator(forms), np.diag([1.0, 1.0, -2.0]), atol=1e-14)
        assert forms.mean_curvature == pytest.approx(0.0, abs=1e-14)

    def test_t_plane_level_independent(self):
        """Test that the shape operator does not depend on the level c."""
        forms = second_fundamental_form(family_t_plane(0.7), U)
        np.testing.assert_allclose(shape_operator(forms), np.diag([1.0, 1.0, -2.0]), atol=1e-12)

    def test_orientation_flips_h(self, circle_cylinder):
        """Test that reversing orientation negates N, h and lambda."""
        forms = second_fundamental_form(circle_cylinder, U)
        flipped = second_fundamental_form(circle_cylinder.with_orientation(-1), U)

        np.testing.assert_allclose(flipped.normal.comps, -forms.normal.comps)
        np.testing.assert_allclose(flipped.h_mat, -forms.h_mat)
        assert flipped.mean_curvature == pytest.approx(-forms.mean_curvature)

    def test_normal_is_unit_and_orthogonal(self, circle_cylinder, umbilical):
        """Test |N| = 1 and g(N, d_i F) = 0."""
        for F, u in ((circle_cylinder, U), (umbilical, U_PROFILE)):
            N = unit_normal(F, u)
            assert N.norm() == pytest.approx(1.0)
            for tangent in coordinate_tangents(F, u):
                assert tangent.comps @ N.comps == pytest.approx(0.0, abs=1e-14)

    def test_circle_cylinder_normal(self, circle_cylinder):
        """Test N = -E1 over gamma(0) = (1, 0)."""
        N = unit_normal(circle_cylinder, [0.0, 0.1, 0.2])
        np.testing.assert_allclose(N.comps, [-1.0, 0.0, 0.0, 0.0], atol=1e-15)

    def test_h_is_symmetric(self, umbilical):
        """Test h_ij = h_ji."""
        h = second_fundamental_form(umbilical, U_PROFILE).h_mat
        np.testing.assert_allclose(h, h.T, atol=1e-14)

    def test_finite_difference_forms(self, circle_cylinder):
        """Test h from a map-only immersion against the exact derivatives."""
        exact = second_fundamental_form(circle_cylinder, U).h_mat
        numeric = second_fundamental_form(map_only(circle_cylinder), U).h_mat
        np.testing.assert_allclose(numeric, exact, atol=1e-6)

    def test_left_translation_preserves_forms(self, circle_cylinder):
        """Test that left translations leave N and h unchanged."""
        moved = circle_cylinder.left_translated(Point(1.0, -2.0, 0.5, 0.3))
        forms = second_fundamental_form(circle_cylinder, U)
        image = second_fundamental_form(moved, U)

        np.testing.assert_allclose(image.normal.comps, forms.normal.comps, atol=1e-12)
        np.testing.assert_allclose(image.h_mat, forms.h_mat, atol=1e-12)
        np.testing.assert_allclose(image.g_ind, forms.g_ind, atol=1e-12)


class TestChristoffel:
    """Tests for induced_christoffel and gauss_formula_christoffel functions."""

    def test_z_plane_values(self, z_plane):
        """Test Gamma^1_13 = -1 and Gamma^3_11 = e^{-2 u3}."""
        for gamma in (induced_christoffel(z_plane, U), gauss_formula_christoffel(z_plane, U)):
            assert gamma[0, 0, 2] == pytest.approx(-1.0, abs=1e-7)
            assert gamma[0, 2, 0] == pytest.approx(-1.0, abs=1e-7)
            assert gamma[2, 0, 0] == pytest.approx(math.exp(-2 * U[2]), abs=1e-7)

    def test_two_routes_agree(self, circle_cylinder, umbilical):
        """Test metric-derivative and Gauss-formula Christoffels."""
        for F, u in ((circle_cylinder, U), (umbilical, U_PROFILE)):
            np.testing.assert_allclose(
                induced_christoffel(F, u), gauss_formula_christoffel(F, u), atol=1e-6
            )

    def test_ambient_derivatives_t_plane(self, t_plane):
        """Test nabla_{d_i} d_i = E4, E4, -2 E4 on t = 0."""
        D = ambient_derivatives(t_plane, U)

        np.testing.assert_allclose(D[0, 0], [0.0, 0.0, 0.0, 1.0], atol=1e-15)
        np.testing.assert_allclose(D[1, 1], [0.0, 0.0, 0.0, 1.0], atol=1e-15)
        np.testing.assert_allclose(D[2, 2], [0.0, 0.0, 0.0, -2.0], atol=1e-15)
        np.testing.assert_allclose(D[0, 1], np.zeros(4), atol=1e-15)

    def test_intrinsic_curvature_z_plane(self, z_plane):
        """Test R(d_i, d_j)d_k = -(g_jk d_i - g_ik d_j) on the hyperbolic slice."""
        R = intrinsic_curvature(z_plane, U)
        g = induced_metric(z_plane, U)
        expected = -(
            np.einsum("jk,li->lkij", g, np.eye(3)) - np.einsum("ik,lj->lkij", g, np.eye(3))
        )
        np.testing.assert_allclose(R, expected, atol=1e-5)
        assert R[0, 2, 0, 2] == pytest.approx(-1.0, abs=1e-5)


class TestGaussCodazzi:
    """Tests for the structure equation residuals."""

    @pytest.mark.parametrize("fixture", ["z_plane", "t_plane", "vertical_plane", "circle_cylinder"])
    def test_equations_hold(self, fixture, request):
        """Test that Gauss, Codazzi and Weingarten residuals vanish."""
        F = request.getfixturevalue(fixture)
        residual = gauss_codazzi_check(F, U)

        assert residual.gauss < 1e-5
        assert residual.codazzi < 1e-6
        assert weingarten_residual(F, U) < 1e-6

    def test_second_order_convergence(self, circle_cylinder):
        """Test both residuals drop ~4x per step halving on the circle cylinder."""
        residuals = [gauss_codazzi_check(circle_cylinder, U, step) for step in (4e-3, 2e-3, 1e-3)]

        for coarse, fine in zip(residuals, residuals[1:], strict=False):
            assert 3.0 < coarse.gauss / fine.gauss < 5.0
            assert 3.0 < coarse.codazzi / fine.codazzi < 5.0

    def test_circle_cylinder_not_parallel(self, circle_cylinder):
        """Test that nabla h is clearly nonzero on the circle cylinder."""
        assert np.max(np.abs(nabla_h(circle_cylinder, U))) > 1e-2

    def test_umbilical_codazzi(self, umbilical):
        """Test the umbilical Codazzi identity with lambda = sin(beta)."""
        assert umbilical_codazzi_residual(umbilical, [0.0, 0.0, 0.1]) < 1e-6

    def test_umbilical_codazzi_fails_elsewhere(self, circle_cylinder):
        """Test that the identity does not hold for a non-umbilical hypersurface."""
        assert umbilical_codazzi_residual(circle_cylinder, U) > 1e-3


class TestInducedSectionalCurvature:
    """Tests for induced_sectional_curvature function."""

    def test_z_plane_hyperbolic(self, z_plane):
        """Test K = -1 on every coordinate plane of z = c."""
        for a, b in ([1, 0, 0], [0, 1, 0]), ([1, 0, 0], [0, 0, 1]), ([0, 1, 0], [0, 0, 1]):
            assert induced_sectional_curvature(z_plane, U, a, b) == pytest.approx(-1.0)

    def test_t_plane_flat(self, t_plane):
        """Test K = 0 on every coordinate plane of t = c."""
        for a, b in ([1, 0, 0], [0, 1, 0]), ([1, 0, 0], [0, 0, 1]), ([0, 1, 0], [0, 0, 1]):
            assert induced_sectional_curvature(t_plane, U, a, b) == pytest.approx(0.0, abs=1e-12)

    def test_vertical_plane(self, vertical_plane):
        """Test K(E3, E4) = -4 and K(E2, E3) = 2 on x = 0."""
        assert induced_sectional_curvature(
            vertical_plane, U, [0, 1, 0], [0, 0, 1]
        ) == pytest.approx(-4.0)
        assert induced_sectional_curvature(
            vertical_plane, U, [1, 0, 0], [0, 1, 0]
        ) == pytest.approx(2.0)
        assert induced_sectional_curvature(
            vertical_plane, U, [1, 0, 0], [0, 0, 1]
        ) == pytest.approx(-1.0)

    @pytest.mark.parametrize("fixture,expected", [("z_plane", -1.0), ("t_plane", 0.0)])
    def test_random_planes(self, fixture, expected, rng, request):
        """Test constant curvature on 20 random tangent planes at random points."""
        F = request.getfixturevalue(fixture)
        for _ in range(20):
            u = rng.uniform(-0.4, 0.4, size=3)
            a, b = rng.uniform(-1.0, 1.0, size=(2, 3))
            assert induced_sectional_curvature(F, u, a, b) == pytest.approx(expected, abs=1e-6)

    def test_tangent_vector_arguments(self, z_plane):
        """Test the plane given by tangent vectors at F(u)."""
        p = z_plane.point(U)
        E1, E4 = TangentVector.frame(p, 1), TangentVector.frame(p, 4)
        assert induced_sectional_curvature(z_plane, U, E1, E4) == pytest.approx(-1.0)

    def test_non_tangent_vector(self, z_plane):
        """Test that a normal vector is rejected."""
        p = z_plane.point(U)
        with pytest.raises(GeometryError):
            induced_sectional_curvature(
                z_plane, U, TangentVector.frame(p, 1), TangentVector.frame(p, 3)
            )

    def test_degenerate(self, z_plane):
        """Test that parallel parameter vectors raise."""
        with pytest.raises(DegeneratePlaneError):
            induced_sectional_curvature(z_plane, U, [1, 0, 0], [2, 0, 0])


class TestSampleResiduals:
    """Tests for sample_residuals function."""

    def test_t_plane(self, t_plane):
        """Test |h| = sqrt(6), parallel and the t-axis normal form."""
        result = sample_residuals(t_plane, U)

        assert result.totally_geodesic == pytest.approx(math.sqrt(6.0))
        assert result.totally_umbilical == pytest.approx(math.sqrt(6.0))
        assert result.parallel < 1e-6
        assert result.codazzi < 1e-6
        assert result.normal_form == "t_axis"

    def test_umbilical(self, umbilical, quarter_profile):
        """Test h = lambda g with lambda = sin(beta) and the zt normal form."""
        u = np.array([0.0, 0.0, 0.12])
        result = sample_residuals(umbilical, u)

        assert result.totally_umbilical < 1e-9
        assert result.mean_curvature == pytest.approx(math.sin(quarter_profile.beta(0.12)))
        assert result.codazzi > 1e-2
        assert result.normal_form == "zt_plane"

    def test_cylinder_over_line(self):
        """Test that a straight profile gives a totally geodesic hypersurface."""
        F = family_cylinder(PlaneCurve.line(1.0, 2.0))
        result = sample_residuals(F, U)
        assert result.totally_geodesic < 1e-12
        assert result.normal_form == "horizontal"

    def test_narrow_box(self, t_plane):
        """Test a box narrower than the default stencil still classifies."""
        narrow = t_plane.reparametrized(np.eye(3), U, (-5e-4,) * 3, (5e-4,) * 3)
        assert stencil_step(narrow) == pytest.approx(1e-5)
        assert stencil_step(t_plane) == settings.christoffel_step

        result = sample_residuals(narrow, [0.0, 0.0, 4e-4])
        assert result.totally_geodesic == pytest.approx(math.sqrt(6.0))
        assert result.parallel < 1e-4

        report = classify(narrow, GridSpec(points=3))
        assert report.verdicts[HypersurfaceClass.PARALLEL]
        assert not report.verdicts[HypersurfaceClass.TOTALLY_GEODESIC]
