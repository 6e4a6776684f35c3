"""Tests for curves module."""

import math

import pytest

from solgeo.curvedsl.curves import CurveSpec
from solgeo.utils.exceptions import CurveSyntaxError, EvaluationError


class TestCurveSpec:
    """Tests for CurveSpec."""

    def test_circle_derivatives(self):
        """Test values and exact first and second derivatives."""
        spec = CurveSpec.from_text("cos(u)", "sin(u)", (-1.0, 1.0))

        assert spec.evaluate(0.5) == pytest.approx((math.cos(0.5), math.sin(0.5)))
        assert spec.evaluate(0.5, 1) == pytest.approx((-math.sin(0.5), math.cos(0.5)))
        assert spec.evaluate(0.5, 2) == pytest.approx((-math.cos(0.5), -math.sin(0.5)))

    def test_polynomial(self):
        """Test a polynomial component."""
        spec = CurveSpec.from_text("u^3", "2*u", (0.0, 2.0))

        assert spec.evaluate(1.5, 1) == pytest.approx((6.75, 2.0))
        assert spec.evaluate(1.5, 2) == pytest.approx((9.0, 0.0))

    def test_order_out_of_range(self):
        """Test that only orders 0, 1 and 2 are available."""
        spec = CurveSpec.from_text("u", "u", (0.0, 1.0))
        with pytest.raises(ValueError):
            spec.evaluate(0.5, 3)

    @pytest.mark.parametrize(
        "gamma1,interval",
        [("1/u", (-1.0, 1.0)), ("log(u)", (0.0, 1.0)), ("exp(u)", (0.0, 1000.0))],
    )
    def test_not_finite_on_interval(self, gamma1, interval):
        """Test that a component failing on a sample point is rejected."""
        with pytest.raises(EvaluationError):
            CurveSpec.from_text(gamma1, "u", interval)

    def test_syntax_error(self):
        """Test that parse errors propagate."""
        with pytest.raises(CurveSyntaxError):
            CurveSpec.from_text("sin(u", "u", (0.0, 1.0))

    def test_empty_interval(self):
        """Test that lo >= hi raises."""
        with pytest.raises(ValueError):
            CurveSpec.from_text("u", "u", (1.0, 0.0))

    def test_describe(self):
        """Test the printed curve."""
        spec = CurveSpec.from_text("cos(u)", "sin(u)", (-1.0, 1.0))
        assert spec.describe() == "(cos(u), sin(u))"
