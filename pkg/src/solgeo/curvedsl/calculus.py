"""Evaluation, symbolic differentiation and printing of expression trees."""

import math
from collections.abc import Callable
from functools import singledispatch

from ..utils.exceptions import EvaluationError
from .nodes import BINARY_SYMBOLS, Add, Div, Expr, Func, Mul, Neg, Num, Pow, Sub, Var

ZERO = Num(0.0)
ONE = Num(1.0)


def _is(e: Expr, value: float) -> bool:
    return isinstance(e, Num) and e.value == value


# ============================================================================
# Simplifying constructors
# ============================================================================


def neg(a: Expr) -> Expr:
    if isinstance(a, Num):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.operand
    if isinstance(a, Mul) and isinstance(a.left, Num):
        return mul(Num(-a.left.value), a.right)
    return Neg(a)


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value + b.value)
    if _is(a, 0.0):
        return b
    if _is(b, 0.0):
        return a
    if isinstance(b, Num):
        return Add(b, a)
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value - b.value)
    if _is(b, 0.0):
        return a
    if _is(a, 0.0):
        return neg(b)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(b, Num) and not isinstance(a, Num):
        a, b = b, a
    if isinstance(a, Num):
        if isinstance(b, Num):
            return Num(a.value * b.value)
        if a.value == 0.0:
            return ZERO
        if a.value == 1.0:
            return b
        if a.value == -1.0:
            return neg(b)
        if isinstance(b, Mul) and isinstance(b.left, Num):
            return mul(Num(a.value * b.left.value), b.right)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Num) and isinstance(b, Num) and b.value != 0.0:
        return Num(a.value / b.value)
    if _is(a, 0.0):
        return ZERO
    if _is(b, 1.0):
        return a
    return Div(a, b)


def power(base: Expr, exponent: int) -> Expr:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Num) and (base.value != 0.0 or exponent > 0):
        try:
            return Num(base.value**exponent)
        except OverflowError:
            pass
    return Pow(base, exponent)


def func(name: str, arg: Expr) -> Expr:
    if isinstance(arg, Num):
        try:
            return Num(_FUNCTIONS[name](arg.value))
        except (ValueError, OverflowError, EvaluationError):
            pass
    return Func(name, arg)


# ============================================================================
# Evaluation
# ============================================================================


def _log(x: float) -> float:
    if x <= 0.0:
        raise EvaluationError(f"log of non-positive value {x}")
    return math.log(x)


_FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "log": _log,
}


def evaluate(e: Expr, u: float) -> float:
    """Value of ``e`` at ``u`` in double precision.

    Raises:
        EvaluationError: division by zero, log of a non-positive value, overflow
    """
    try:
        value = _evaluate(e, float(u))
    except (OverflowError, ValueError) as err:
        raise EvaluationError(f"cannot evaluate at u={u}: {err}") from err
    if not math.isfinite(value):
        raise EvaluationError(f"non-finite value {value} at u={u}")
    return value


@singledispatch
def _evaluate(e: Expr, u: float) -> float:
    raise TypeError(f"not an expression node: {e!r}")


@_evaluate.register
def _(e: Num, u: float) -> float:
    return e.value


@_evaluate.register
def _(e: Var, u: float) -> float:
    return u


@_evaluate.register
def _(e: Neg, u: float) -> float:
    return -_evaluate(e.operand, u)


@_evaluate.register
def _(e: Add, u: float) -> float:
    return _evaluate(e.left, u) + _evaluate(e.right, u)


@_evaluate.register
def _(e: Sub, u: float) -> float:
    return _evaluate(e.left, u) - _evaluate(e.right, u)


@_evaluate.register
def _(e: Mul, u: float) -> float:
    return _evaluate(e.left, u) * _evaluate(e.right, u)


@_evaluate.register
def _(e: Div, u: float) -> float:
    denominator = _evaluate(e.right, u)
    if denominator == 0.0:
        raise EvaluationError(f"division by zero at u={u}")
    return _evaluate(e.left, u) / denominator


@_evaluate.register
def _(e: Pow, u: float) -> float:
    base = _evaluate(e.base, u)
    if base == 0.0 and e.exponent < 0:
        raise EvaluationError(f"division by zero at u={u}")
    return float(base**e.exponent)


@_evaluate.register
def _(e: Func, u: float) -> float:
    return _FUNCTIONS[e.name](_evaluate(e.arg, u))


# ============================================================================
# Differentiation
# ============================================================================


@singledispatch
def differentiate(e: Expr) -> Expr:
    """d/du of ``e`` with constant folding and 0/1 absorption."""
    raise TypeError(f"not an expression node: {e!r}")


@differentiate.register
def _(e: Num) -> Expr:
    return ZERO


@differentiate.register
def _(e: Var) -> Expr:
    return ONE


@differentiate.register
def _(e: Neg) -> Expr:
    return neg(differentiate(e.operand))


@differentiate.register
def _(e: Add) -> Expr:
    return add(differentiate(e.left), differentiate(e.right))


@differentiate.register
def _(e: Sub) -> Expr:
    return sub(differentiate(e.left), differentiate(e.right))


@differentiate.register
def _(e: Mul) -> Expr:
    return add(
        mul(differentiate(e.left), e.right),
        mul(e.left, differentiate(e.right)),
    )


@differentiate.register
def _(e: Div) -> Expr:
    numerator = sub(
        mul(differentiate(e.left), e.right),
        mul(e.left, differentiate(e.right)),
    )
    return div(numerator, power(e.right, 2))


@differentiate.register
def _(e: Pow) -> Expr:
    return mul(Num(float(e.exponent)), mul(power(e.base, e.exponent - 1), differentiate(e.base)))


@differentiate.register
def _(e: Func) -> Expr:
    inner = differentiate(e.arg)
    if e.name == "sin":
        return mul(inner, func("cos", e.arg))
    if e.name == "cos":
        return neg(mul(inner, func("sin", e.arg)))
    if e.name == "exp":
        return mul(inner, e)
    return div(inner, e.arg)


def nth_derivative(e: Expr, order: int) -> Expr:
    if order < 0:
        raise ValueError("order must be non-negative")
    for _ in range(order):
        e = differentiate(e)
    return e


# ============================================================================
# Printing
# ============================================================================


def _number(value: float) -> str:
    text = repr(float(value))
    return f"({text})" if value < 0 or text.startswith("-") else text


def to_text(e: Expr) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(e, Num):
        return _number(e.value)
    if isinstance(e, Var):
        return "u"
    if isinstance(e, Neg):
        return f"(-{to_text(e.operand)})"
    if isinstance(e, Pow):
        return f"({to_text(e.base)}^{e.exponent})"
    if isinstance(e, Func):
        return f"{e.name}({to_text(e.arg)})"
    symbol = BINARY_SYMBOLS[type(e)]
    return f"({to_text(e.left)} {symbol} {to_text(e.right)})"
