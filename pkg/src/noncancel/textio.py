"""Polynomial text: a small expression evaluator and the canonical printer.

Canonical output lists terms in descending lexicographic order of exponent
vectors (declared variable order), coefficients reduced with positive
denominators, e.g. ``x^2*y - 3/2*x + 1``.  Coefficients from an extension
ring are expanded into generator monomials placed before the variables.

The reader accepts that output and, more generally, expressions built from
``+ - * / ^``, parentheses, rationals, variables, ring generators, named
bindings, and calls ``h(expr)`` of bound ring homomorphisms plus the builtin
``coeff(expr, var, k)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .poly import MPoly, PolyError, RingHom, VarCtx
from .rings import QQ, CoefRing, ExtElement


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.column = col


_TOKEN = re.compile(r"\s*(?:(\d+)|([^\W\d]\w*)|(\*\*|[-+*/^(),]))", re.UNICODE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolyParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Reader:
    def __init__(self, text: str, env: Mapping[str, object]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.env = env

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise PolyParseError(msg, self.text, tok[2])

    def expect(self, op: str):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}", tok)

    def expr(self, ctx: VarCtx) -> MPoly:
        acc = self.term(ctx)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term(ctx)
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self, ctx: VarCtx) -> MPoly:
        acc = self.unary(ctx)
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            rhs = self.unary(ctx)
            if tok[1] == "*":
                acc = acc * rhs
            else:
                try:
                    acc = acc * rhs.inverse_unit()
                except PolyError:
                    self.fail(f"division by the non-unit {rhs}", tok)
        return acc

    def unary(self, ctx: VarCtx) -> MPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            val = self.unary(ctx)
            return -val if tok[1] == "-" else val
        return self.power(ctx)

    def power(self, ctx: VarCtx) -> MPoly:
        base = self.atom(ctx)
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            tok = self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] in "+-":
                sign = -1 if self.take()[1] == "-" else 1
            num = self.take()
            if num[0] != "num":
                self.fail("exponent must be an integer", num)
            k = sign * int(num[1])
            try:
                return base ** k
            except PolyError:
                self.fail(f"negative power of the non-unit {base}", tok)
        return base

    def atom(self, ctx: VarCtx) -> MPoly:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return ctx.const(int(val))
        if kind == "op" and val == "(":
            inner = self.expr(ctx)
            self.expect(")")
            return inner
        if kind == "name":
            if self.peek()[0] == "op" and self.peek()[1] == "(":
                return self.call(ctx, val, tok)
            bound = self.env.get(val)
            if isinstance(bound, MPoly):
                if bound.ctx != ctx:
                    self.fail(f"binding {val!r} lives in a different context", tok)
                return bound
            if isinstance(bound, (int, Fraction, ExtElement)):
                return ctx.const(bound)
            if bound is not None and not isinstance(bound, RingHom):
                self.fail(f"binding {val!r} has unsupported type", tok)
            if val in ctx.names:
                return ctx.var(val)
            if val in ctx.ring.gens:
                return ctx.const(ctx.ring.gen(val))
            self.fail(f"unknown name {val!r}", tok)
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected token {val!r}", tok)

    def call(self, ctx: VarCtx, name: str, tok) -> MPoly:
        self.expect("(")
        if name == "coeff":
            arg = self.expr(ctx)
            self.expect(",")
            vtok = self.take()
            if vtok[0] != "name" or vtok[1] not in ctx.names:
                self.fail("coeff expects a context variable", vtok)
            self.expect(",")
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.take()
                sign = -1
            ktok = self.take()
            if ktok[0] != "num":
                self.fail("coeff expects an integer power", ktok)
            self.expect(")")
            return arg.coeff(vtok[1], sign * int(ktok[1]))
        hom = self.env.get(name)
        if not isinstance(hom, RingHom):
            self.fail(f"{name!r} is not a bound ring homomorphism", tok)
        if hom.target != ctx:
            self.fail(f"homomorphism {name!r} lands in {hom.target.names}, expected {ctx.names}", tok)
        arg = self.expr(hom.source)
        self.expect(")")
        return hom(arg)


def evaluate(text: str, ctx: VarCtx, env: Mapping[str, object] | None = None) -> MPoly:
    """Evaluate polynomial text in ``ctx`` with optional bindings."""
    reader = _Reader(text, env or {})
    try:
        val = reader.expr(ctx)
    except PolyParseError:
        raise
    except PolyError as exc:
        raise PolyParseError(str(exc), text, reader.peek()[2]) from exc
    if reader.peek()[0] != "end":
        reader.fail(f"unexpected trailing token {reader.peek()[1]!r}")
    return val


def parse_poly(text: str, ctx: VarCtx) -> MPoly:
    return evaluate(text, ctx)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _monomial(names, exps) -> list[str]:
    out = []
    for n, k in zip(names, exps):
        if k == 1:
            out.append(n)
        elif k:
            out.append(f"{n}^{k}")
    return out


def _coef_parts(c) -> list[tuple[Fraction, list[str]]]:
    if isinstance(c, ExtElement):
        items = sorted(c.terms.items(), key=lambda t: t[0], reverse=True)
        return [(q, _monomial(c.ring.gens, e)) for e, q in items]
    return [(Fraction(c), [])]


def format_poly(P: MPoly) -> str:
    pieces: list[tuple[Fraction, list[str]]] = []
    for e, c in P.sorted_terms():
        mono = _monomial(P.ctx.names, e)
        for q, gens in _coef_parts(c):
            pieces.append((q, gens + mono))
    return _join(pieces)


def _join(pieces) -> str:
    if not pieces:
        return "0"
    out = []
    for i, (q, factors) in enumerate(pieces):
        neg = q < 0
        a = -q if neg else q
        if factors:
            body = "*".join(factors) if a == 1 else _fmt_rational(a) + "*" + "*".join(factors)
        else:
            body = _fmt_rational(a)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def format_coef(c) -> str:
    return _join(_coef_parts(c)) if c else "0"


def format_ring_relation(ring: CoefRing, level: int) -> str:
    names = ring.gens[: level + 1]
    rel = ring.relations[level]
    items = sorted(rel.items(), key=lambda t: tuple(reversed(t[0])), reverse=True)
    return _join([(q, _monomial(names, e)) for e, q in items])


def parse_ring_relation(base: CoefRing, name: str, text: str) -> dict:
    ctx = VarCtx(tuple(base.gens) + (name,), frozenset(), QQ)
    P = evaluate(text, ctx)
    return dict(P.terms)
