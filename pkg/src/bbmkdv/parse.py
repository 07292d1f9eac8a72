"""Text form of expressions.

Grammar: identifiers [a-zA-Z][a-zA-Z0-9]*, jet coordinates as
depvar_[tx]+ (e.g. u_txx), nonnegative integer literals (rationals are
written 3/7 and handled by the division operator), operators + - * / ^
with standard precedence, ^ only with an integer literal exponent, and
the calls ln(e), exp(e), pow(e, s).  Reserved parameter names: a b c
eps kappa lambda sigma; arbitrary constants c1..c99 (a separate
namespace from the parameter c); independent variables t x; dependent
variables u v ubar vbar.

to_text prints the canonical form; parse(to_text(e)) == e.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .expr import (DEP_NAMES, INDEP_NAMES, PARAM_NAMES, Atom, Expr, ExprError,
                   Symbol, ZERO, as_expr, const, dep, exp_, indep, jet, ln_,
                   param, pow_)


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__("%s (at offset %d)" % (message, offset))
        self.offset = offset


_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>\d+)"
    r"|(?P<name>[A-Za-z][A-Za-z0-9]*(?:_[A-Za-z0-9]+)?)"
    r"|(?P<op>[-+*/^(),])")

_CONST_RE = re.compile(r"^c([0-9]+)$")


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError("unexpected character %r" % text[pos], pos)
        if m.lastgroup != "ws":
            out.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


def _resolve(name: str, pos: int) -> Symbol:
    if "_" in name:
        base, suffix = name.split("_", 1)
        if base not in DEP_NAMES:
            raise ParseError("unknown dependent variable %r" % base, pos)
        if not suffix or any(ch not in "tx" for ch in suffix):
            raise ParseError("malformed jet suffix %r" % suffix, pos)
        return jet(base, suffix.count("t"), suffix.count("x"))
    if name in PARAM_NAMES:
        return param(name)
    m = _CONST_RE.match(name)
    if m:
        i = int(m.group(1))
        if not 1 <= i <= 99:
            raise ParseError("arbitrary constants range over c1..c99", pos)
        return const(i)
    if name in INDEP_NAMES:
        return indep(name)
    if name in DEP_NAMES:
        return dep(name)
    raise ParseError("unknown identifier %r" % name, pos)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind or value and tok[1] != value:
            raise ParseError("expected %s" % (value or kind), tok[2])
        self.i += 1
        return tok

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError("unexpected trailing input %r" % tok[1], tok[2])
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, opch, pos = self.take()
            rhs = self.unary()
            if opch == "*":
                e = e * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", pos)
                e = e / rhs
        return e

    def unary(self) -> Expr:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Expr:
        e = self.base()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            tok = self.peek()
            if tok[0] != "num":
                raise ParseError("^ requires an integer literal exponent",
                                 tok[2])
            self.take()
            n = sign * int(tok[1])
            if n < 0 and e.is_zero():
                raise ParseError("division by zero", tok[2])
            e = e ** n
        return e

    def base(self) -> Expr:
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return as_expr(int(value))
        if kind == "op" and value == "(":
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        if kind == "name":
            if value in ("ln", "exp", "pow"):
                self.take()
                self.take("op", "(")
                arg = self.expr()
                if value == "pow":
                    self.take("op", ",")
                    expo = self.expr()
                    self.take("op", ")")
                    try:
                        return pow_(arg, expo)
                    except (ExprError, ZeroDivisionError) as exc:
                        raise ParseError(str(exc), pos) from exc
                self.take("op", ")")
                try:
                    return ln_(arg) if value == "ln" else exp_(arg)
                except ExprError as exc:
                    raise ParseError(str(exc), pos) from exc
            self.take()
            return as_expr(_resolve(value, pos))
        raise ParseError("expected expression", pos)


def parse(text: str) -> Expr:
    """Parse the expression grammar; raises ParseError with an offset."""
    return _Parser(text).parse()


def parse_rational(text: str) -> Fraction:
    e = parse(text)
    return e.as_rational()


def _gen_text(g) -> str:
    if isinstance(g, Atom):
        if g.head == "pow":
            return "pow(%s, %s)" % (to_text(g.arg), to_text(g.expo))
        return "%s(%s)" % (g.head, to_text(g.arg))
    return g.name


def _poly_text(terms) -> str:
    if not terms:
        return "0"
    chunks = []
    for m, coeff in terms:
        neg = coeff < 0
        mag = -coeff if neg else coeff
        parts = []
        if mag != 1 or not m:
            parts.append(str(mag))
        for g, e in m:
            s = _gen_text(g)
            parts.append(s if e == 1 else s + "^%d" % e)
        body = "*".join(parts)
        if not chunks:
            chunks.append("-" + body if neg else body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


def to_text(e: Expr) -> str:
    """Canonical text form (round-trips through parse)."""
    e = as_expr(e)
    num = _poly_text(e.nt)
    if e.dt == ((() , Fraction(1)),):
        return num
    return "(%s)/(%s)" % (num, _poly_text(e.dt))
