"""Text format for exact polynomials.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | base ('^' natural)?
    base   := rational | 'i' | 'sqrt' | ident | '~' ident | '(' expr ')'

``rational`` is ``digits`` or ``digits/digits``; ``sqrt`` stands for the
square root of the session radicand and ``~z`` for the formal conjugate of the
declared variable ``z``.  :func:`format_poly` prints the canonical form, which
parses back to the identical polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import ONE, CScalar, format_scalar, sqrt, to_cscalar
from .poly import MPoly

__all__ = ["ParseError", "parse_poly", "parse_scalar", "format_poly", "Token", "tokenize"]

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_RATIONAL = re.compile(r"\d+(?:/\d+)?")
_RESERVED = {"i", "sqrt"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    toks: list[Token] = []
    line, col, k = 1, 1, 0
    while k < len(src):
        ch = src[k]
        if ch == "\n":
            line, col, k = line + 1, 1, k + 1
            continue
        if ch.isspace():
            col, k = col + 1, k + 1
            continue
        m = _RATIONAL.match(src, k)
        if m:
            toks.append(Token("num", m.group(), line, col))
        else:
            m = _NAME.match(src, k)
            if m:
                toks.append(Token("name", m.group(), line, col))
            elif ch in "+-*^~()":
                toks.append(Token("op", ch, line, col))
                col, k = col + 1, k + 1
                continue
            else:
                raise ParseError(f"unexpected character {ch!r}", line, col)
        col += len(m.group())
        k = m.end()
    toks.append(Token("end", "", line, col))
    return toks


class _Parser:
    def __init__(self, src: str, names: Sequence[str], d: int, conjugates: bool):
        self.toks = tokenize(src)
        self.pos = 0
        self.names = list(names)
        for nm in self.names:
            if nm in _RESERVED or not _NAME.fullmatch(nm):
                raise ValueError(f"invalid variable name {nm!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.index = {nm: j for j, nm in enumerate(self.names)}
        self.conjugates = conjugates
        self.nvars = 2 * len(self.names) if conjugates else len(self.names)
        self.d = d

    def peek(self) -> Token:
        return self.toks[self.pos]

    def take(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.column)

    def expect(self, text: str):
        t = self.peek()
        if t.kind != "op" or t.text != text:
            self.fail(f"expected {text!r}, found {t.text or 'end of input'!r}")
        self.take()

    def parse(self) -> MPoly:
        if self.peek().kind == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}")
        return p

    def expr(self) -> MPoly:
        acc = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MPoly:
        acc = self.factor()
        while self.peek().kind == "op" and self.peek().text == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> MPoly:
        t = self.peek()
        if t.kind == "op" and t.text == "-":
            self.take()
            return -self.factor()
        b = self.base()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            e = self.peek()
            if e.kind != "num" or "/" in e.text:
                self.fail("exponent must be a natural number", e)
            self.take()
            b = b ** int(e.text)
        return b

    def base(self) -> MPoly:
        t = self.take()
        nv = self.nvars
        if t.kind == "num":
            return MPoly.constant(nv, Fraction(t.text))
        if t.kind == "name":
            if t.text == "i":
                return MPoly.constant(nv, CScalar(0, 1))
            if t.text == "sqrt":
                if self.d == 0:
                    raise ParseError("'sqrt' used but no radicand is configured", t.line, t.column)
                return MPoly.constant(nv, sqrt(self.d))
            j = self.index.get(t.text)
            if j is None:
                raise ParseError(f"unknown identifier {t.text!r}", t.line, t.column)
            return MPoly.variable(nv, j)
        if t.kind == "op" and t.text == "~":
            if not self.conjugates:
                raise ParseError("conjugates are not allowed here", t.line, t.column)
            v = self.take()
            if v.kind != "name" or v.text not in self.index:
                raise ParseError("'~' must be followed by a declared variable", v.line, v.column)
            return MPoly.variable(nv, len(self.names) + self.index[v.text])
        if t.kind == "op" and t.text == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.column)


def parse_poly(src: str, names: Sequence[str], d: int = 0, conjugates: bool = True) -> MPoly:
    """Parse ``src`` over the declared variables.

    With ``conjugates`` the ring has ``2 * len(names)`` variables (the
    holomorphic ones followed by their conjugates); otherwise it has
    ``len(names)`` and ``~`` is rejected.
    """
    return _Parser(src, names, d, conjugates).parse()


def parse_scalar(src: str, d: int = 0) -> CScalar:
    p = parse_poly(str(src), [], d, conjugates=False)
    return p.constant_term()


def _monomial_text(e: tuple[int, ...], names: Sequence[str], conjugates: bool) -> list[str]:
    n = len(names)
    out = []
    for j, k in enumerate(e):
        if not k:
            continue
        nm = names[j] if (not conjugates or j < n) else "~" + names[j - n]
        out.append(nm if k == 1 else f"{nm}^{k}")
    return out


def format_poly(p: MPoly, names: Sequence[str], conjugates: bool = True) -> str:
    """Canonical text: terms in descending monomial order, exact coefficients."""
    expected = 2 * len(names) if conjugates else len(names)
    if p.nvars != expected:
        raise ValueError(f"polynomial has {p.nvars} variables, names describe {expected}")
    pieces = []
    for e, c in p.sorted_terms():
        mono = _monomial_text(e, names, conjugates)
        c = to_cscalar(c)
        coeff = format_scalar(c)
        simple = "+" not in coeff[1:] and "-" not in coeff[1:]
        if mono:
            if c == ONE:
                body = "*".join(mono)
            elif c == -ONE:
                body = "-" + "*".join(mono)
            else:
                body = (coeff if simple else f"({coeff})") + "*" + "*".join(mono)
        else:
            body = coeff if simple else f"({coeff})"
        pieces.append(body)
    if not pieces:
        return "0"
    out = pieces[0]
    for b in pieces[1:]:
        out += " - " + b[1:] if b.startswith("-") else " + " + b
    return out
