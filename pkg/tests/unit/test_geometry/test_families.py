"""Tests for families module."""

import math

import numpy as np
import pytest

from solgeo.data.schemas import GridSpec, HypersurfaceClass
from solgeo.geometry.families import (
    PlaneCurve,
    beta_closed_form,
    cylinder_normal_curvature,
    family_cylinder,
    family_umbilical,
    family_vertical_plane,
    family_z_plane,
    family_zt_curve,
    mean_curvature_closed_form,
    mean_curvature_vector_closed_form,
    ode_residual,
    plane_curve_curvature,
    profile_normal_curvature,
    solve_beta,
    umbilical_profile,
    zt_curve_normal,
)
from solgeo.geometry.hypersurface import classify, second_fundamental_form
from solgeo.utils.exceptions import (
    CurveSyntaxError,
    IrregularCurveError,
    ProfileError,
    SingularityGuardError,
)


class TestPlaneCurve:
    """Tests for PlaneCurve and plane_curve_curvature."""

    def test_circle_derivatives(self):
        """Test the circle and its first two derivatives."""
        circle = PlaneCurve.circle()
        np.testing.assert_allclose(circle.at(0.3), [math.cos(0.3), math.sin(0.3)])
        np.testing.assert_allclose(circle.at(0.3, 1), [-math.sin(0.3), math.cos(0.3)])
        np.testing.assert_allclose(circle.at(0.3, 2), [-math.cos(0.3), -math.sin(0.3)])

    def test_circle_curvature(self):
        """Test kappa = -1/r for counter-clockwise circles."""
        for u in (-2.0, 0.0, 1.3):
            assert plane_curve_curvature(PlaneCurve.circle(), u) == pytest.approx(-1.0)
            assert plane_curve_curvature(PlaneCurve.circle(2.0), u) == pytest.approx(-0.5)

    def test_reversed_flips_curvature(self):
        """Test that reversing the parametrization flips the sign of kappa."""
        reversed_circle = PlaneCurve.circle().reversed()
        assert reversed_circle.interval == (-math.pi, math.pi)
        assert plane_curve_curvature(reversed_circle, 0.4) == pytest.approx(1.0)

    def test_line(self):
        """Test a line has zero curvature."""
        line = PlaneCurve.line(1.0, 2.0, origin=(0.5, 0.0))
        np.testing.assert_allclose(line.at(1.0), [1.5, 2.0])
        assert plane_curve_curvature(line, 0.2) == 0.0

    def test_irregular(self):
        """Test that a vanishing velocity raises."""
        with pytest.raises(IrregularCurveError):
            PlaneCurve.line(0.0, 0.0).require_regular(0.0)

    def test_from_expressions(self):
        """Test curves built from expression text."""
        curve = PlaneCurve.from_expressions("cos(u)", "sin(u)", (-1.0, 1.0))
        np.testing.assert_allclose(curve.at(0.3, 2), [-math.cos(0.3), -math.sin(0.3)])
        assert plane_curve_curvature(curve, 0.1) == pytest.approx(-1.0)

    def test_from_expressions_syntax_error(self):
        """Test that malformed text surfaces the parser error."""
        with pytest.raises(CurveSyntaxError):
            PlaneCurve.from_expressions("cos(u", "u", (0.0, 1.0))

    def test_empty_interval(self):
        """Test that lo >= hi raises."""
        with pytest.raises(ValueError):
            PlaneCurve.circle(interval=(1.0, 1.0))


class TestPlanes:
    """Tests for plane constructors."""

    def test_z_plane_map(self):
        """Test (u1, u2, u3) -> (u1, u2, c, u3)."""
        F = family_z_plane(2.0)
        np.testing.assert_array_equal(F.coordinates([0.1, 0.2, 0.3]), [0.1, 0.2, 2.0, 0.3])

    def test_vertical_plane_lies_in_plane(self):
        """Test a x + b y = c on sampled points."""
        a, b, c = 3.0, -1.0, 2.0
        F = family_vertical_plane(a, b, c)
        for u in F.sample_grid():
            x, y, _, _ = F.coordinates(u)
            assert a * x + b * y == pytest.approx(c)

    def test_vertical_plane_needs_direction(self):
        """Test that (a, b) = (0, 0) raises."""
        with pytest.raises(ValueError):
            family_vertical_plane(0.0, 0.0, 1.0)

    def test_extent_must_be_positive(self):
        """Test that a non-positive extent raises."""
        with pytest.raises(ValueError):
            family_z_plane(0.0, extent=0.0)


class TestCylinder:
    """Tests for family_cylinder and cylinder_normal_curvature."""

    def test_irregular_profile(self):
        """Test that a constant profile raises."""
        with pytest.raises(IrregularCurveError):
            family_cylinder(PlaneCurve.line(0.0, 0.0))

    @pytest.mark.parametrize(
        "curve",
        [
            PlaneCurve.circle(),
            PlaneCurve.circle(2.0),
            PlaneCurve.from_expressions("2*cos(u)", "sin(u)", (-1.0, 1.0)),
        ],
    )
    def test_normal_curvature_closed_form(self, curve):
        """Test h(W, W) = -e^{u3} kappa for the unit W along d/du1."""
        F = family_cylinder(curve)
        for u in ([0.2, 0.1, -0.3], [-0.7, 0.0, 0.4]):
            forms = second_fundamental_form(F, u)
            measured = forms.h_mat[0, 0] / forms.g_ind[0, 0]
            assert measured == pytest.approx(cylinder_normal_curvature(curve, u[0], u[2]))

    def test_reversed_profile(self, circle):
        """Test the reversed circle flips kappa and h but keeps |h| and the verdicts."""
        forward = family_cylinder(circle)
        backward = family_cylinder(circle.reversed())
        for u1, u3 in ((0.4, 0.2), (-1.1, -0.3)):
            h_fwd = second_fundamental_form(forward, [u1, 0.1, u3]).h_mat
            h_bwd = second_fundamental_form(backward, [-u1, 0.1, u3]).h_mat
            assert h_bwd[0, 0] == pytest.approx(-h_fwd[0, 0])
            assert cylinder_normal_curvature(circle.reversed(), -u1, u3) == pytest.approx(
                -cylinder_normal_curvature(circle, u1, u3)
            )

        grid = GridSpec(points=3)
        fwd, bwd = classify(forward, grid), classify(backward, grid)
        assert bwd.verdicts == fwd.verdicts
        for kind in HypersurfaceClass:
            assert bwd.residuals[kind] == pytest.approx(fwd.residuals[kind], rel=1e-6, abs=1e-9)
        lo, hi = fwd.mean_curvature_range
        assert bwd.mean_curvature_range == pytest.approx((-hi, -lo), abs=1e-12)

    def test_unit_circle_value(self):
        """Test h(W, W) = e^{u3} on the unit circle."""
        assert cylinder_normal_curvature(PlaneCurve.circle(), 0.5, 0.3) == pytest.approx(
            math.exp(0.3)
        )


class TestBeta:
    """Tests for solve_beta and beta_closed_form."""

    def test_matches_closed_form(self):
        """Test RK4 against tan(beta/2) = tan(beta0/2) e^{3u}."""
        solution = solve_beta(0.1, (0.0, 0.5))

        np.testing.assert_allclose(solution.beta, beta_closed_form(0.1, solution.u), atol=1e-8)
        np.testing.assert_allclose(solution.slope, 3.0 * np.sin(solution.beta))
        assert solution.u[0] == 0.0
        assert solution.u[-1] == 0.5

    def test_two_sided_interval(self):
        """Test integration on both sides of the anchor."""
        solution = solve_beta(-0.3, (-0.4, 0.2))

        assert solution.u[0] == pytest.approx(-0.4)
        assert solution.u[-1] == pytest.approx(0.2)
        assert np.all(np.diff(solution.u) > 0)
        np.testing.assert_allclose(
            solution.beta, beta_closed_form(-0.3, solution.u), atol=1e-8
        )

    def test_zero_is_equilibrium(self):
        """Test that beta0 = 0 stays at zero."""
        solution = solve_beta(0.0, (-0.5, 0.5))
        np.testing.assert_array_equal(solution.beta, np.zeros_like(solution.u))

    def test_fourth_order_convergence(self):
        """Test the error against the closed form drops ~16x per step halving."""
        errors = []
        for step in (0.05, 0.025, 0.0125):
            solution = solve_beta(0.1, (0.0, 0.5), step=step)
            errors.append(np.max(np.abs(solution.beta - beta_closed_form(0.1, solution.u))))

        for coarse, fine in zip(errors, errors[1:], strict=False):
            assert 12.0 < coarse / fine < 20.0

    def test_guard(self):
        """Test that approaching cos(beta) = 0 raises."""
        with pytest.raises(SingularityGuardError):
            solve_beta(math.pi / 4, (0.0, 0.4))

    def test_custom_guard(self):
        """Test a tighter guard band trips earlier."""
        solve_beta(math.pi / 4, (0.0, 0.25))
        with pytest.raises(SingularityGuardError):
            solve_beta(math.pi / 4, (0.0, 0.25), guard=0.2)


class TestUmbilicalProfile:
    """Tests for umbilical_profile and the closed-form checks."""

    def test_anchor(self, quarter_profile):
        """Test beta(0) = beta0 and gamma(0) = (0, 0)."""
        assert quarter_profile.beta(0.0) == pytest.approx(math.pi / 4)
        assert quarter_profile.gamma(0.0) == pytest.approx((0.0, 0.0), abs=1e-15)

    def test_beta_matches_closed_form(self, quarter_profile):
        """Test the interpolated beta between grid nodes."""
        for u in (0.0123, 0.1, 0.2467):
            assert quarter_profile.beta(u) == pytest.approx(
                float(beta_closed_form(math.pi / 4, u)), abs=1e-8
            )

    def test_derivatives_consistent(self, quarter_profile):
        """Test gamma' against central differences of gamma."""
        h = 1e-5
        for u in (0.05, 0.13, 0.2):
            plus = np.array(quarter_profile.gamma(u + h))
            minus = np.array(quarter_profile.gamma(u - h))
            np.testing.assert_allclose(
                (plus - minus) / (2 * h), quarter_profile.gamma(u, 1), atol=1e-7
            )

    def test_satisfies_profile_ode(self, quarter_profile):
        """Test the curve ODE residual vanishes along the profile."""
        curve = quarter_profile.as_curve()
        for u in np.linspace(0.0, 0.25, 7):
            assert ode_residual(curve, u) == pytest.approx(0.0, abs=1e-12)

    def test_mean_curvature_is_sin_beta(self, quarter_profile, umbilical):
        """Test lambda = sin(beta) from the closed form and from h."""
        curve = quarter_profile.as_curve()
        for u3 in (0.05, 0.15, 0.24):
            expected = math.sin(quarter_profile.beta(u3))
            assert mean_curvature_closed_form(curve, u3) == pytest.approx(expected)
            forms = second_fundamental_form(umbilical, [0.1, -0.2, u3])
            assert forms.mean_curvature == pytest.approx(expected)
            np.testing.assert_allclose(
                forms.h_mat, forms.mean_curvature * forms.g_ind, atol=1e-12
            )

    def test_normal_curvature_closed_form(self, quarter_profile, umbilical):
        """Test h(W, W) against its closed form for both normal orientations."""
        curve = quarter_profile.as_curve()
        for u3 in (0.05, 0.15, 0.24):
            forms = second_fundamental_form(umbilical, [0.1, -0.2, u3])
            measured = forms.h_mat[2, 2] / forms.g_ind[2, 2]
            beta = quarter_profile.beta(u3)

            assert measured == pytest.approx(profile_normal_curvature(curve, u3), abs=1e-6)
            assert measured == pytest.approx(math.sin(beta), abs=1e-6)
            assert profile_normal_curvature(curve, u3, orientation=-1) == pytest.approx(
                -math.sin(beta), abs=1e-6
            )
            np.testing.assert_allclose(
                mean_curvature_vector_closed_form(curve, u3),
                math.sin(beta) * np.array([0.0, 0.0, math.cos(beta), math.sin(beta)]),
                atol=1e-12,
            )

    def test_outside_interval(self, quarter_profile):
        """Test that evaluating outside the interval raises."""
        with pytest.raises(ProfileError):
            quarter_profile.beta(0.3)
        with pytest.raises(ValueError):
            quarter_profile.gamma(0.1, 3)

    def test_degenerate_profile(self):
        """Test beta0 = 0 gives the line gamma(u) = (0, -u)."""
        profile = umbilical_profile(0.0, (-0.25, 0.25))
        F = family_umbilical(profile)

        assert profile.gamma(0.2) == pytest.approx((0.0, -0.2))
        forms = second_fundamental_form(F, [0.0, 0.0, 0.1])
        np.testing.assert_allclose(forms.normal.comps, [0.0, 0.0, 1.0, 0.0], atol=1e-15)
        np.testing.assert_allclose(forms.h_mat, np.zeros((3, 3)), atol=1e-15)

    def test_guard(self):
        """Test the guard on the profile integration."""
        with pytest.raises(SingularityGuardError):
            umbilical_profile(math.pi / 4, (0.0, 0.4))


class TestClosedForms:
    """Tests for ode_residual and mean_curvature_closed_form on simple curves."""

    def test_ode_residual_of_line(self):
        """Test the residual of (u, 0) is 3."""
        assert ode_residual(PlaneCurve.line(1.0, 0.0), 0.3) == pytest.approx(3.0)

    def test_vertical_profile_is_minimal(self):
        """Test lambda = 0 when gamma1' = 0."""
        assert mean_curvature_closed_form(PlaneCurve.line(0.0, 1.0), 0.2) == 0.0

    def test_irregular(self):
        """Test that a stationary curve raises."""
        with pytest.raises(IrregularCurveError):
            mean_curvature_closed_form(PlaneCurve.line(0.0, 0.0), 0.0)


@pytest.fixture
def bent_curve():
    """A regular zt-curve that does not solve the umbilical equation."""
    return PlaneCurve.from_expressions("u + 0.3*u^2", "0.5*u - u^3", (-0.5, 0.5))


class TestZtCurve:
    """Tests for family_zt_curve and its closed forms off the umbilical profile."""

    U3 = (-0.3, 0.0, 0.35)

    def test_normal(self, bent_curve):
        """Test the unit normal against zt_curve_normal."""
        F = family_zt_curve(bent_curve)
        for u3 in self.U3:
            forms = second_fundamental_form(F, [0.2, -0.1, u3])
            np.testing.assert_allclose(
                forms.normal.comps, zt_curve_normal(bent_curve, u3), atol=1e-12
            )

    def test_normal_curvature(self, bent_curve):
        """Test h(W, W) for both orientations and vanishing mixed terms."""
        F = family_zt_curve(bent_curve)
        for sign in (1, -1):
            for u3 in self.U3:
                forms = second_fundamental_form(F.with_orientation(sign), [0.2, -0.1, u3])
                measured = forms.h_mat[2, 2] / forms.g_ind[2, 2]
                assert measured == pytest.approx(
                    profile_normal_curvature(bent_curve, u3, orientation=sign),
                    rel=1e-9,
                    abs=1e-12,
                )
                off_diagonal = forms.h_mat - np.diag(np.diag(forms.h_mat))
                np.testing.assert_allclose(off_diagonal, np.zeros((3, 3)), atol=1e-12)

    def test_mean_curvature(self, bent_curve):
        """Test lambda and the orientation-free vector lambda N against h."""
        F = family_zt_curve(bent_curve)
        for u3 in self.U3:
            expected = mean_curvature_closed_form(bent_curve, u3)
            vector = mean_curvature_vector_closed_form(bent_curve, u3)
            for sign in (1, -1):
                forms = second_fundamental_form(F.with_orientation(sign), [0.2, -0.1, u3])
                assert forms.mean_curvature == pytest.approx(sign * expected, rel=1e-9)
                np.testing.assert_allclose(
                    forms.mean_curvature * forms.normal.comps, vector, atol=1e-12
                )

    def test_umbilicity_defect(self, bent_curve):
        """Test h(W, W) - h(E1, E1) = -e^{2 gamma2} ode_residual / s^3."""
        F = family_zt_curve(bent_curve)
        for u3 in self.U3:
            forms = second_fundamental_form(F, [0.2, -0.1, u3])
            h_ww = forms.h_mat[2, 2] / forms.g_ind[2, 2]
            h_11 = forms.h_mat[0, 0] / forms.g_ind[0, 0]
            _, g2 = bent_curve.at(u3)
            d1x, d1y = bent_curve.at(u3, 1)
            s3 = (math.exp(4 * g2) * d1x**2 + d1y**2) ** 1.5
            residual = ode_residual(bent_curve, u3)

            assert abs(residual) > 0.1
            assert h_ww - h_11 == pytest.approx(
                -math.exp(2 * g2) * residual / s3, rel=1e-9, abs=1e-12
            )

    def test_irregular(self):
        """Test that a stationary curve raises."""
        with pytest.raises(IrregularCurveError):
            family_zt_curve(PlaneCurve.line(0.0, 0.0))
        with pytest.raises(IrregularCurveError):
            profile_normal_curvature(PlaneCurve.line(0.0, 0.0), 0.0)
