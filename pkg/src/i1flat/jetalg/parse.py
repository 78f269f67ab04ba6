"""Recursive-descent parser for the polynomial text grammar.

Grammar (no implicit multiplication):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | primary ('^' INT)?
    primary := NUMBER | VARIABLE | '(' expr ')'

Numbers are integers or rationals like ``-2/5``.  Variables are X, Y, Z, W
for 4-variable polynomials and x, y for 2-variable ones; the variable set is
fixed by the caller and mixing is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Poly, VAR_NAMES

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[A-Za-z]\w*)|(?P<op>[-+*^()]))"
)


class ParseError(ValueError):
    """Input does not conform to the polynomial grammar."""


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.current: tuple[str, str] | None = None
        self.advance()

    def advance(self) -> None:
        if self.pos >= len(self.text.rstrip()):
            self.current = None
            self.pos = len(self.text)
            return
        m = _TOKEN.match(self.text, self.pos)
        if not m or m.end() == self.pos:
            raise ParseError(f"unrecognized input at position {self.pos}: {self.text[self.pos:]!r}")
        self.pos = m.end()
        for kind in ("number", "name", "op"):
            val = m.group(kind)
            if val is not None:
                self.current = (kind, val)
                return

    def expect_op(self, op: str) -> None:
        if self.current != ("op", op):
            raise ParseError(f"expected {op!r} at position {self.pos}")
        self.advance()


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.toks = _Tokens(text)
        self.nvars = nvars
        names = VAR_NAMES.get(nvars)
        if names is None:
            raise ParseError(f"no variable convention for {nvars} variables")
        self.var_index = {n: i for i, n in enumerate(names)}

    def parse(self) -> Poly:
        p = self.expr()
        if self.toks.current is not None:
            raise ParseError(
                f"unexpected trailing input at position {self.toks.pos}: {self.toks.current[1]!r}"
            )
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.toks.current in (("op", "+"), ("op", "-")):
            op = self.toks.current[1]
            self.toks.advance()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.toks.current == ("op", "*"):
            self.toks.advance()
            p = p * self.factor()
        return p

    def factor(self) -> Poly:
        if self.toks.current == ("op", "-"):
            self.toks.advance()
            return -self.factor()
        p = self.primary()
        if self.toks.current == ("op", "^"):
            self.toks.advance()
            tok = self.toks.current
            if tok is None or tok[0] != "number" or "/" in tok[1]:
                raise ParseError("exponent must be a nonnegative integer")
            self.toks.advance()
            p = p ** int(tok[1])
        return p

    def primary(self) -> Poly:
        tok = self.toks.current
        if tok is None:
            raise ParseError("unexpected end of input")
        kind, val = tok
        if kind == "number":
            self.toks.advance()
            return Poly.const(self.nvars, Fraction(val))
        if kind == "name":
            idx = self.var_index.get(val)
            if idx is None:
                raise ParseError(
                    f"unknown variable {val!r} (expected one of {sorted(self.var_index)})"
                )
            self.toks.advance()
            return Poly.variable(self.nvars, idx)
        if (kind, val) == ("op", "("):
            self.toks.advance()
            p = self.expr()
            self.toks.expect_op(")")
            return p
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse an expression in the fixed variable set for ``nvars``."""
    if not text.strip():
        raise ParseError("empty input")
    return _Parser(text, nvars).parse()


def parse_surface(text: str, trunc: int) -> list:
    """Parse four comma-separated 2-variable expressions into jets."""
    from .poly import Jet

    parts = text.split(",")
    if len(parts) != 4:
        raise ParseError(f"surface needs 4 comma-separated components, got {len(parts)}")
    return [Jet.of(parse_poly(p, 2), trunc) for p in parts]
