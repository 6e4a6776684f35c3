"""Tests for calculus module."""

import math

import pytest

from solgeo.curvedsl.calculus import differentiate, evaluate, nth_derivative, to_text
from solgeo.curvedsl.nodes import Div, Func, Mul, Neg, Num, Var
from solgeo.curvedsl.parser import parse
from solgeo.utils.exceptions import EvaluationError

FD_STEP = 1e-6


def random_expression(rng, depth):
    """Random expression text that stays finite for u in [-1, 1]."""
    if depth == 0 or rng.random() < 0.25:
        return "u" if rng.random() < 0.6 else f"{rng.uniform(0.5, 2.0):.3f}"
    a = random_expression(rng, depth - 1)
    kind = rng.integers(0, 8)
    if kind < 3:
        b = random_expression(rng, depth - 1)
        return f"({a} {'+-*'[kind]} {b})"
    if kind == 3:
        return f"sin({a})"
    if kind == 4:
        return f"cos({a})"
    if kind == 5:
        return f"exp(sin({a}))"
    if kind == 6:
        return f"({a})^{rng.integers(2, 4)}"
    b = random_expression(rng, depth - 1)
    return f"({a}) / (2 + ({b})^2) + log(2 + ({a})^2)"


class TestEvaluate:
    """Tests for evaluate function."""

    def test_arithmetic(self):
        """Test a simple polynomial."""
        assert evaluate(parse("2*u + 1"), 3.0) == 7.0
        assert evaluate(parse("u^-2"), 2.0) == 0.25
        assert evaluate(parse("-u^2"), 3.0) == -9.0

    def test_functions(self):
        """Test the four functions."""
        assert evaluate(parse("sin(u) + cos(u)"), 0.4) == pytest.approx(
            math.sin(0.4) + math.cos(0.4)
        )
        assert evaluate(parse("exp(log(u))"), 2.5) == pytest.approx(2.5)

    @pytest.mark.parametrize(
        "text,u",
        [
            ("1/u", 0.0),
            ("log(u)", 0.0),
            ("log(u)", -1.0),
            ("u^-1", 0.0),
            ("exp(u)", 1000.0),
            ("u^400", 10.0),
        ],
    )
    def test_domain_errors(self, text, u):
        """Test division by zero, log domain and overflow."""
        with pytest.raises(EvaluationError):
            evaluate(parse(text), u)


class TestDifferentiate:
    """Tests for differentiate and nth_derivative functions."""

    def test_power_rule(self):
        """Test d(u^3) = 3 u^2 as a tree."""
        assert differentiate(parse("u^3")) == parse("3*u^2")

    def test_chain_rule(self):
        """Test d sin(2u) = 2 cos(2u)."""
        assert differentiate(parse("sin(2*u)")) == Mul(Num(2.0), Func("cos", parse("2*u")))

    def test_elementary(self):
        """Test derivatives of the elementary functions."""
        assert differentiate(parse("cos(u)")) == Neg(Func("sin", Var()))
        assert differentiate(parse("exp(u)")) == Func("exp", Var())
        assert differentiate(parse("log(u)")) == Div(Num(1.0), Var())
        assert differentiate(parse("5")) == Num(0.0)
        assert differentiate(parse("u")) == Num(1.0)

    def test_nth_derivative(self):
        """Test repeated differentiation folds to a constant."""
        assert nth_derivative(parse("u^3"), 3) == Num(6.0)
        assert nth_derivative(parse("u^3"), 0) == parse("u^3")
        with pytest.raises(ValueError):
            nth_derivative(parse("u"), -1)

    def test_quotient_rule(self):
        """Test d(1/u) = -1/u^2 numerically."""
        derivative = differentiate(parse("1/u"))
        assert evaluate(derivative, 2.0) == pytest.approx(-0.25)

    def test_random_expressions_against_finite_differences(self, rng):
        """Test symbolic derivatives of 50 random expressions by central differences."""
        for _ in range(50):
            expression = parse(random_expression(rng, 3))
            derivative = differentiate(expression)
            for u in rng.uniform(-1.0, 1.0, size=3):
                value = evaluate(expression, u)
                symbolic = evaluate(derivative, u)
                numeric = (
                    evaluate(expression, u + FD_STEP) - evaluate(expression, u - FD_STEP)
                ) / (2 * FD_STEP)
                scale = max(1.0, abs(value), abs(symbolic))
                assert abs(symbolic - numeric) <= 1e-6 * scale, to_text(expression)


class TestToText:
    """Tests for to_text function."""

    def test_parenthesized(self):
        """Test the printed form."""
        assert to_text(parse("1+u")) == "(1.0 + u)"
        assert to_text(parse("u^2")) == "(u^2)"
        assert to_text(parse("-2")) == "(-2.0)"
        assert to_text(parse("sin(-u)")) == "sin((-u))"

    def test_reparses_to_same_tree(self, rng):
        """Test parse(to_text(e)) == e for expressions and their derivatives."""
        for _ in range(50):
            expression = parse(random_expression(rng, 3))
            for tree in (expression, differentiate(expression)):
                assert parse(to_text(tree)) == tree
