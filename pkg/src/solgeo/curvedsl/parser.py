"""Recursive descent parser for curve expressions.

Grammar (whitespace is ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' ['-'] INTEGER)?
    primary := NUMBER | 'u' | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := 'sin' | 'cos' | 'exp' | 'log'

Errors carry the character offset of the offending token (the input length at end of
input) and the set of tokens that would have been accepted there.
"""

import re
from typing import NamedTuple

from ..utils.exceptions import CurveSyntaxError
from .nodes import FUNCTIONS, Add, Div, Expr, Func, Mul, Neg, Num, Pow, Sub, Var

END = "end"
OPERAND_START = frozenset({"number", "u", "(", "-", *FUNCTIONS})

_TOKEN = re.compile(
    r"""
    (?P<space>\s+)
    |(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
    |(?P<name>[A-Za-z_][A-Za-z_0-9]*)
    |(?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str  # "number", "name", an operator symbol or END
    text: str
    offset: int


def tokenize(src: str) -> list[Token]:
    """Split ``src`` into tokens, ending with an END token at ``len(src)``."""
    tokens: list[Token] = []
    position = 0
    while position < len(src):
        match = _TOKEN.match(src, position)
        if match is None:
            raise CurveSyntaxError(position, OPERAND_START, src[position])
        kind = match.lastgroup
        text = match.group()
        if kind == "number":
            tokens.append(Token("number", text, position))
        elif kind == "name":
            tokens.append(Token("name", text, position))
        elif kind == "op":
            tokens.append(Token(text, text, position))
        position = match.end()
    tokens.append(Token(END, "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.index = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def fail(self, expected: set[str] | frozenset[str]) -> CurveSyntaxError:
        token = self.current
        return CurveSyntaxError(token.offset, expected, token.text)

    def following(self) -> set[str]:
        """Tokens that may follow a complete operand."""
        return {"+", "-", "*", "/", "^", ")" if self.depth else END}

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            raise self.fail({kind})
        return self.advance()

    def parse(self) -> Expr:
        tree = self.expr()
        if self.current.kind != END:
            raise self.fail(self.following())
        return tree

    def expr(self) -> Expr:
        left = self.term()
        while self.current.kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.current.kind in ("*", "/"):
            op = self.advance().kind
            right = self.unary()
            left = Mul(left, right) if op == "*" else Div(left, right)
        return left

    def unary(self) -> Expr:
        if self.current.kind == "-":
            self.advance()
            operand = self.unary()
            # literal negatives are leaves so printed trees read back unchanged
            if isinstance(operand, Num):
                return Num(-operand.value)
            return Neg(operand)
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.current.kind != "^":
            return base
        self.advance()
        sign = 1
        if self.current.kind == "-":
            self.advance()
            sign = -1
            allowed = {"integer"}
        else:
            allowed = {"-", "integer"}
        token = self.current
        if token.kind != "number" or not token.text.isdigit():
            raise self.fail(allowed)
        self.advance()
        return Pow(base, sign * int(token.text))

    def primary(self) -> Expr:
        token = self.current
        if token.kind == "number":
            self.advance()
            return Num(float(token.text))
        if token.kind == "name":
            if token.text == "u":
                self.advance()
                return Var()
            if token.text in FUNCTIONS:
                self.advance()
                self.expect("(")
                return Func(token.text, self.group())
            raise self.fail(OPERAND_START)
        if token.kind == "(":
            self.advance()
            return self.group()
        raise self.fail(OPERAND_START)

    def group(self) -> Expr:
        """Parse ``expr ')'`` after an opening parenthesis."""
        self.depth += 1
        inner = self.expr()
        if self.current.kind != ")":
            raise self.fail(self.following())
        self.depth -= 1
        self.advance()
        return inner


def parse(src: str) -> Expr:
    """Parse expression text into a tree.

    Raises:
        CurveSyntaxError: with the offset of the offending token and the expected set
    """
    return _Parser(src).parse()
