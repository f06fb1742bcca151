"""Shared generators for the property suites."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from noncancel.poly import MPoly, RingHom, VarCtx

SMALL = [Fraction(k) for k in (-3, -2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(-2, 3)]


def random_poly(rng: random.Random, ctx: VarCtx, terms: int = 4, deg: int = 3) -> MPoly:
    out = {}
    for _ in range(rng.randint(0, terms)):
        e = tuple(rng.randint(-1 if v in ctx.laurent else 0, deg) for v in ctx.names)
        out[e] = out.get(e, 0) + rng.choice(SMALL)
    return MPoly(ctx, out)


def random_hom(rng: random.Random, source: VarCtx, target: VarCtx, terms: int = 3, deg: int = 2) -> RingHom:
    images = {}
    for v in source.names:
        if v in source.laurent:
            # Laurent variables must go to units
            w = rng.choice(sorted(target.laurent))
            images[v] = target.var(w) ** rng.choice([-1, 1]) * rng.choice(SMALL)
        else:
            images[v] = random_poly(rng, target, terms, deg)
    return RingHom(source, target, images)


def polys(ctx: VarCtx, max_terms: int = 5, max_deg: int = 3):
    """Hypothesis strategy for sparse polynomials in ``ctx``."""
    lows = [-2 if v in ctx.laurent else 0 for v in ctx.names]
    exps = st.tuples(*(st.integers(lo, max_deg) for lo in lows))
    coefs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool)
    return st.dictionaries(exps, coefs, max_size=max_terms).map(lambda d: MPoly(ctx, d))


def to_sympy(P: MPoly):
    """Independent oracle representation (rational coefficients only)."""
    import sympy

    syms = sympy.symbols(P.ctx.names)
    total = sympy.Integer(0)
    for e, c in P.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        total += term
    return total


def from_sympy(expr, ctx: VarCtx) -> MPoly:
    import sympy

    syms = sympy.symbols(ctx.names)
    num, den = sympy.fraction(sympy.together(sympy.expand(expr)))
    shift = sympy.Poly(den, *syms)
    assert len(shift.terms()) == 1, "only monomial denominators are supported"
    (dexp, dc), = shift.terms()
    out = {}
    for e, c in sympy.Poly(sympy.expand(num), *syms).terms():
        exps = tuple(a - b for a, b in zip(e, dexp))
        out[exps] = Fraction(int(c.p), int(c.q)) / Fraction(int(dc.p), int(dc.q))
    return MPoly(ctx, out)
