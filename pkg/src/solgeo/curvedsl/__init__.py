"""Curve expression language: parsing, evaluation and symbolic derivatives."""

from .calculus import differentiate, evaluate, nth_derivative, to_text
from .curves import CurveSpec
from .nodes import Add, Div, Expr, Func, Mul, Neg, Num, Pow, Sub, Var
from .parser import OPERAND_START, parse, tokenize

__all__ = [
    "Expr",
    "Num",
    "Var",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Pow",
    "Func",
    "parse",
    "tokenize",
    "OPERAND_START",
    "evaluate",
    "differentiate",
    "nth_derivative",
    "to_text",
    "CurveSpec",
]
