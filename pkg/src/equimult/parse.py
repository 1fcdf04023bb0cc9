"""Parser for the polynomial string grammar.

Grammar (explicit ``*``; juxtaposition is an error)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*   |  factor '/' INTEGER
    factor := atom ('^' INTEGER)?
    atom   := INTEGER | NAME | '(' expr ')'

``3*x^2*y - 1/2*z`` parses as expected: a rational coefficient is written
as ``p/q`` and division is only allowed by an integer literal.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - regex always matches a char
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        elif op in "+-*/^()":
            tokens.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r} in {text!r}")
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial string")
        f = self.expr()
        if self.i != len(self.tokens):
            kind, val = self.peek()
            raise ParseError(f"unexpected token {val!r} in {self.text!r} (juxtaposition is not allowed)")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self) -> Polynomial:
        f = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                kind, den = self.take()
                if kind != "num" or den == 0:
                    raise ParseError(f"division only by a nonzero integer literal in {self.text!r}")
                f = f.scale(Fraction(1, den))
            else:
                return f

    def factor(self) -> Polynomial:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, exp = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base**exp
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return self.ring.const(val)
        if kind == "name":
            if val not in self.ring.variables:
                raise ParseError(f"unknown variable {val!r} in {self.text!r}")
            return self.ring.var(val)
        if kind == "op" and val == "(":
            f = self.expr()
            self.expect_op(")")
            return f
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    return _Parser(str(text), ring).parse()
