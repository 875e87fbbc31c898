"""Parser for polynomial and weight-profile expressions.

Grammar (whitespace-insensitive):

    expr    := term (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := "-" factor | "+" factor | power
    power   := atom ("^" factor)?          (right-associative)
    atom    := INTEGER | VARIABLE | "(" expr ")"

Variables are x1, x2, ... for multivariate input and t for univariate
profiles.  "^" requires a constant non-negative integer exponent.  "/"
requires a constant nonzero right operand, which covers rational literals
like 3/4; dividing by a polynomial is rejected.  Decimal literals are
rejected to keep everything exact.

Errors raise ExprSyntaxError carrying the byte offset of the offending
token, so callers can produce pointed diagnostics without the process ever
dying on malformed input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import DEFAULT_LIMITS, Limits, Poly, UniPoly


class ExprSyntaxError(ValueError):
    """Malformed expression; .position is the byte offset in the source."""

    def __init__(self, message: str, position: int):
        super().__init__(f"at offset {position}: {message}")
        self.position = position
        self.reason = message


@dataclass(frozen=True)
class ExprSource:
    """An expression string plus an optional expected ambient dimension."""

    text: str
    expected_dim: int | None = None


_OPERATORS = "+-*/^()"


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "var", an operator character, or "end"
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                raise ExprSyntaxError(
                    "decimal literals are not supported; use rationals like 3/4", i
                )
            tokens.append(_Token("int", text[start:i], start))
            continue
        if c.isalpha():
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("var", text[start:i], start))
            continue
        if c in _OPERATORS:
            tokens.append(_Token(c, c, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    """Recursive-descent parser producing Poly values directly."""

    def __init__(self, tokens: list[_Token], dim: int, univariate: bool):
        self.tokens = tokens
        self.pos = 0
        self.dim = dim
        self.univariate = univariate
        self.max_axis_seen = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok.text!r}", tok.position)
        return self.advance()

    def parse(self) -> Poly:
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"unexpected token {tok.text!r}", tok.position)
        return value

    def expr(self) -> Poly:
        value = self.term()
        while self.peek().kind in "+-":
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.factor()
        while self.peek().kind in "*/":
            op = self.advance()
            rhs = self.factor()
            if op.kind == "*":
                value = value * rhs
            else:
                c = _constant_value(rhs)
                if c is None:
                    raise ExprSyntaxError(
                        "division is only allowed by a nonzero constant", op.position
                    )
                if c == 0:
                    raise ExprSyntaxError("division by zero", op.position)
                value = value.scale(Fraction(1, 1) / c)
        return value

    def factor(self) -> Poly:
        tok = self.peek()
        if tok.kind == "-":
            self.advance()
            return -self.factor()
        if tok.kind == "+":
            self.advance()
            return self.factor()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().kind != "^":
            return base
        op = self.advance()
        exponent = self.factor()  # right-associative, unary minus allowed for diagnostics
        c = _constant_value(exponent)
        if c is None:
            raise ExprSyntaxError("exponent must be a constant integer", op.position)
        if c.denominator != 1:
            raise ExprSyntaxError(f"exponent must be an integer, got {c}", op.position)
        if c < 0:
            raise ExprSyntaxError(f"negative exponent {c}", op.position)
        return base ** int(c)

    def atom(self) -> Poly:
        tok = self.advance()
        if tok.kind == "int":
            return Poly.const(self.dim, Fraction(int(tok.text)))
        if tok.kind == "var":
            return self.variable(tok)
        if tok.kind == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ExprSyntaxError(f"expected a value, found {tok.text!r}", tok.position)

    def variable(self, tok: _Token) -> Poly:
        name = tok.text
        if self.univariate:
            if name != "t":
                raise ExprSyntaxError(
                    f"only the variable t is allowed here, found {name!r}", tok.position
                )
            return Poly.variable(1, 1)
        if name == "t":
            raise ExprSyntaxError(
                "variable t is reserved for univariate profiles", tok.position
            )
        if name[0] != "x" or not name[1:].isdigit():
            raise ExprSyntaxError(f"unknown variable {name!r}", tok.position)
        axis = int(name[1:])
        if axis < 1:
            raise ExprSyntaxError("variable indices start at x1", tok.position)
        if axis > self.dim:
            raise ExprSyntaxError(
                f"variable x{axis} exceeds dimension {self.dim}", tok.position
            )
        self.max_axis_seen = max(self.max_axis_seen, axis)
        return Poly.variable(self.dim, axis)


def _constant_value(p: Poly) -> Fraction | None:
    if p.is_zero:
        return Fraction(0)
    if len(p.terms) == 1:
        exps, coeff = next(iter(p.terms.items()))
        if not any(exps):
            return coeff
    return None


def _max_var_index(tokens: list[_Token]) -> int:
    best = 0
    for tok in tokens:
        if tok.kind == "var" and tok.text[0] == "x" and tok.text[1:].isdigit():
            best = max(best, int(tok.text[1:]))
    return best


def parse_poly(src: ExprSource | str, limits: Limits = DEFAULT_LIMITS) -> Poly:
    """Parse a multivariate polynomial expression.

    The ambient dimension is expected_dim when provided, otherwise the
    largest variable index appearing in the text (1 for pure constants).
    """
    if isinstance(src, str):
        src = ExprSource(src)
    if not src.text.strip():
        raise ExprSyntaxError("empty expression", 0)
    tokens = _tokenize(src.text)
    if src.expected_dim is not None:
        dim = src.expected_dim
        if dim < 1:
            raise ValueError(f"expected_dim must be >= 1, got {dim}")
    else:
        dim = max(1, _max_var_index(tokens))
        if dim > limits.max_dim:
            raise ExprSyntaxError(
                f"variable index {dim} exceeds the configured limit {limits.max_dim}", 0
            )
    poly = _Parser(tokens, dim, univariate=False).parse()
    if poly.total_degree > limits.max_degree:
        raise ExprSyntaxError(
            f"degree {poly.total_degree} exceeds the configured limit {limits.max_degree}",
            0,
        )
    return poly


def parse_unipoly(src: ExprSource | str, limits: Limits = DEFAULT_LIMITS) -> UniPoly:
    """Parse a univariate profile in the variable t."""
    if isinstance(src, str):
        src = ExprSource(src)
    if not src.text.strip():
        raise ExprSyntaxError("empty expression", 0)
    tokens = _tokenize(src.text)
    poly = _Parser(tokens, 1, univariate=True).parse()
    if poly.total_degree > limits.max_degree:
        raise ExprSyntaxError(
            f"degree {poly.total_degree} exceeds the configured limit {limits.max_degree}",
            0,
        )
    coeffs = [Fraction(0)] * (poly.total_degree + 1)
    for exps, coeff in poly.terms.items():
        coeffs[exps[0]] = coeff
    return UniPoly(coeffs)
