"""Tokenizer and recursive-descent parser for polynomial-style expressions.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := INT ['/' INT] | IDENT | 'd/d' IDENT | '(' expr ')'

Products are evaluated left to right, so the same parser serves both
non-commutative rings (enveloping algebra, Weyl algebra) as long as the
caller supplies the ring operations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from .errors import ParseError

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<deriv>d/d(?P<dvar>[A-Za-z][A-Za-z0-9_]*))"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} in {text.strip()!r}")
        if m.group("deriv"):
            tokens.append(("deriv", m.group("dvar")))
        elif m.group("int"):
            tokens.append(("int", m.group("int")))
        elif m.group("ident"):
            tokens.append(("ident", m.group("ident")))
        else:
            tokens.append(("op", m.group("op")))
        pos = m.end()
    return tokens


@dataclass
class Ring:
    """Callbacks that give meaning to parsed atoms and operators."""

    number: Callable[[Fraction], Any]
    ident: Callable[[str], Any]
    add: Callable[[Any, Any], Any]
    neg: Callable[[Any], Any]
    mul: Callable[[Any, Any], Any]
    deriv: Callable[[str], Any] | None = None

    def power(self, x, k: int):
        out = self.number(Fraction(1))
        for _ in range(k):
            out = self.mul(out, x)
        return out


class _Parser:
    def __init__(self, tokens, ring: Ring):
        self.toks = tokens
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def expr(self):
        kind, val = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        acc = self.term()
        if negate:
            acc = self.ring.neg(acc)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = self.ring.add(acc, t if val == "+" else self.ring.neg(t))
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = self.ring.mul(acc, self.factor())
            else:
                return acc

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ParseError(f"exponent must be a non-negative integer, got {val!r}")
            return self.ring.power(base, int(val))
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            num = int(val)
            k2, v2 = self.peek()
            if k2 == "op" and v2 == "/" and self.i + 1 < len(self.toks) and self.toks[self.i + 1][0] == "int":
                self.take()
                den = int(self.take()[1])
                if den == 0:
                    raise ParseError("zero denominator")
                return self.ring.number(Fraction(num, den))
            return self.ring.number(Fraction(num))
        if kind == "ident":
            return self.ring.ident(val)
        if kind == "deriv":
            if self.ring.deriv is None:
                raise ParseError(f"derivative d/d{val} not allowed here")
            return self.ring.deriv(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind is None:
            raise ParseError("unexpected end of expression")
        raise ParseError(f"unexpected token {val!r}")


def parse_tokens(tokens: list[tuple[str, str]], ring: Ring):
    """Parse a token list. On failure the error's ``token`` attribute holds
    the index of the offending token (``len(tokens)`` at end of input)."""
    if not tokens:
        raise ParseError("empty expression")
    p = _Parser(tokens, ring)
    try:
        out = p.expr()
    except ParseError as e:
        # errors are raised just after the offending token was consumed
        e.token = min(max(p.i - 1, 0), len(tokens))
        raise
    if p.i != len(tokens):
        err = ParseError(f"unexpected token {p.peek()[1]!r}")
        err.token = p.i
        raise err
    return out


def parse(text: str, ring: Ring):
    return parse_tokens(tokenize(text), ring)
