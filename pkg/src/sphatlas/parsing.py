"""Scalar literal grammar.

Literals combine integer rationals ``a/b``, the cyclotomic generator ``z``
(of the declared order m) and the parameter ``t`` with ``+ - * / ( ) ^``,
e.g. ``(1-z^2)/2`` or ``t/(t+1)``.  ``format_scalar`` emits strings this
parser accepts, so matrices round-trip through JSON.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .field import Scalar, get_tower

_TOKEN_RE = re.compile(r"\s*(\d+|[zt+\-*/()^])")


def _tokenize(text: str) -> list[str]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad character in scalar literal: {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str], m: int):
        self.tokens = tokens
        self.pos = 0
        self.m = m

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> Scalar:
        value = self.expr()
        if self.peek() is not None:
            raise ParseError(f"trailing tokens: {self.tokens[self.pos:]}")
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self) -> Scalar:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        if self.peek() == "+":
            self.take()
            return self.factor()
        value = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise ParseError("exponent must be an integer")
            value = value ** (sign * int(tok))
        return value

    def atom(self) -> Scalar:
        tok = self.take()
        if tok is None:
            raise ParseError("unexpected end of scalar literal")
        if tok.isdigit():
            return Scalar.rational(int(tok), self.m)
        if tok == "z":
            return Scalar.zeta(self.m)
        if tok == "t":
            return Scalar.parameter(self.m)
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {tok!r}")


def parse_scalar(text: str, m: int = 1) -> Scalar:
    return _Parser(_tokenize(text), m).parse()


def _format_fraction(q: Fraction) -> str:
    return str(q)


def _format_cyc(tower, cyc) -> str:
    terms = []
    for j, a in enumerate(cyc):
        if a == 0:
            continue
        if j == 0:
            terms.append(_format_fraction(a))
        else:
            zpow = "z" if j == 1 else f"z^{j}"
            if a == 1:
                terms.append(zpow)
            elif a == -1:
                terms.append(f"-{zpow}")
            else:
                terms.append(f"{_format_fraction(a)}*{zpow}")
    if not terms:
        return "0"
    out = terms[0]
    for term in terms[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def _format_poly(tower, poly) -> str:
    if not poly:
        return "0"
    terms = []
    for k, cyc in enumerate(poly):
        if all(c == 0 for c in cyc):
            continue
        tpow = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        cs = _format_cyc(tower, cyc)
        simple = re.fullmatch(r"-?\d+(/\d+)?|-?z(\^\d+)?", cs)
        if not tpow:
            terms.append(cs if simple else f"({cs})")
        elif cs == "1":
            terms.append(tpow)
        elif cs == "-1":
            terms.append(f"-{tpow}")
        elif simple and not cs.startswith("-"):
            terms.append(f"{cs}*{tpow}")
        else:
            terms.append(f"({cs})*{tpow}")
    out = terms[0]
    for term in terms[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def format_scalar(s: Scalar) -> str:
    if s.rat is not None:
        return _format_fraction(s.rat)
    tower = s.tower
    num = _format_poly(tower, s.num)
    if len(s.den) == 1 and s.den[0] == tower._one_cyc:
        return num
    den = _format_poly(tower, s.den)
    return f"({num})/({den})"
