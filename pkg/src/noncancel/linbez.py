"""Univariate Bezout machinery, polynomial matrices and the bordered 3x3
unimodular completion.

``ext_gcd`` runs the extended Euclidean algorithm in one variable ``x`` over
either the rationals or the rational-function field Q(lam) when the inputs
carry a Laurent coefficient variable ``lam``.  Cofactors are returned as
polynomials of the input context, so over Q(lam) their denominators must be
powers of ``lam``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .poly import MPoly, VarCtx, det as _det
from .rings import solve_linear_augmented


class BezoutError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense univariate polynomials over a field (coefficient lists, low -> high)
# ---------------------------------------------------------------------------


def _trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(a, b):
    n = max(len(a), len(b))
    zero = (a or b or [0])[0] * 0
    return _trim([(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)])


def _neg(a):
    return [-c for c in a]


def _sub(a, b):
    return _add(a, _neg(b))


def _mul(a, b):
    if not a or not b:
        return []
    out = [a[0] * 0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _trim(out)


def _divmod(a, b):
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _trim(a)
    q = [b[0] * 0] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        a = _trim(_sub(a, [b[0] * 0] * k + [c * y for y in b]))
    return _trim(q), a


def upoly_ext_gcd(a, b, one):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic."""
    a, b = _trim(a), _trim(b)
    if not a and not b:
        raise BezoutError("gcd of two zero polynomials")
    r0, r1 = a, b
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = _divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1))
        t0, t1 = t1, _sub(t0, _mul(q, t1))
    lc = r0[-1]
    inv = one / lc
    return [c * inv for c in r0], [c * inv for c in s0], [c * inv for c in t0]


class RatFunc:
    """Element of Q(lam): reduced numerator/denominator, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),)):
        num = _trim([Fraction(c) for c in num])
        den = _trim([Fraction(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = (), (Fraction(1),)
            return
        g, _, _ = upoly_ext_gcd(num, den, Fraction(1))
        if len(g) > 1:
            num, _ = _divmod(num, g)
            den, _ = _divmod(den, g)
        lc = den[-1]
        self.num = tuple(c / lc for c in num)
        self.den = tuple(c / lc for c in den)

    def _co(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc([other])
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return RatFunc(_add(_mul(self.num, o.den), _mul(o.num, self.den)), _mul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_neg(self.num), self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return RatFunc(_mul(self.num, o.num), _mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise ZeroDivisionError("division by zero in Q(lam)")
        return RatFunc(_mul(self.num, o.den), _mul(self.den, o.num))

    def __rtruediv__(self, other):
        return self._co(other) / self

    def __eq__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({list(self.num)}/{list(self.den)})"


# ---------------------------------------------------------------------------
# MPoly <-> dense conversion
# ---------------------------------------------------------------------------


def _coef_var(P: MPoly, var: str) -> str | None:
    others = P.variables() - {var}
    if not others:
        return None
    if len(others) > 1:
        raise BezoutError(f"expected a univariate polynomial in {var} (extra variables {sorted(others)})")
    (lam,) = others
    return lam


def _to_dense(P: MPoly, var: str, lam: str | None) -> list:
    if P.min_degree(var) < 0:
        raise BezoutError(f"negative powers of {var}")
    out = []
    for k in range(P.degree(var) + 1):
        c = P.coeff(var, k)
        if lam is None:
            if not c.is_constant():
                raise BezoutError("coefficient is not a rational constant")
            v = c.constant_coef()
            if not isinstance(v, Fraction):
                raise BezoutError("ext_gcd works over the rationals or Q(lam) only")
            out.append(v)
        else:
            out.append(_laurent_to_ratfunc(c, lam))
    return _trim(out)


def _laurent_to_ratfunc(c: MPoly, lam: str) -> RatFunc:
    if not c:
        return RatFunc([])
    lo = min(0, c.min_degree(lam))
    hi = c.degree(lam)
    num = [Fraction(0)] * (hi - lo + 1)
    for k, cc in c.collect(lam).items():
        if not cc.is_constant():
            raise BezoutError("unexpected extra variables in coefficient")
        num[k - lo] = cc.constant_coef()
    den = [Fraction(0)] * (-lo) + [Fraction(1)]
    return RatFunc(num, den)


def _ratfunc_to_laurent(r: RatFunc, ctx: VarCtx, lam: str) -> MPoly:
    # denominator must be a monomial lam^m
    den = list(r.den)
    m = len(den) - 1
    if any(c != 0 for c in den[:-1]):
        raise BezoutError("cofactor denominator is not a power of the Laurent variable")
    lv = ctx.var(lam)
    out = ctx.zero()
    for k, c in enumerate(r.num):
        if c:
            out = out + ctx.const(c) * lv ** (k - m)
    return out


def _from_dense(coeffs, ctx: VarCtx, var: str, lam: str | None) -> MPoly:
    xv = ctx.var(var)
    out = ctx.zero()
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        cc = ctx.const(c) if lam is None else _ratfunc_to_laurent(c, ctx, lam)
        out = out + cc * xv ** k
    return out


def ext_gcd(a: MPoly, b: MPoly, var: str = "x") -> tuple[MPoly, MPoly, MPoly]:
    """Monic gcd ``g`` with ``s*a + t*b = g``; checked by expansion before returning."""
    a._same(b)
    ctx = a.ctx
    lams = {v for v in (_coef_var(a, var), _coef_var(b, var)) if v}
    if len(lams) > 1:
        raise BezoutError("inputs use different coefficient variables")
    lam = lams.pop() if lams else None
    if lam is not None and lam not in ctx.laurent:
        raise BezoutError(f"coefficient variable {lam} must be Laurent-flagged")
    one = Fraction(1) if lam is None else RatFunc([1])
    da, db = _to_dense(a, var, lam), _to_dense(b, var, lam)
    g, s, t = upoly_ext_gcd(da, db, one)
    G, S, T = (_from_dense(p, ctx, var, lam) for p in (g, s, t))
    if S * a + T * b != G:
        raise BezoutError("internal error: Bezout identity failed to verify")
    return G, S, T


@dataclass(frozen=True)
class BezoutCert:
    inputs: tuple[MPoly, ...]
    cofactors: tuple[MPoly, ...]
    value: MPoly

    def combination(self) -> MPoly:
        total = self.value.ctx.zero()
        for c, a in zip(self.cofactors, self.inputs):
            total = total + c * a
        return total

    def verify(self) -> bool:
        return len(self.inputs) == len(self.cofactors) and self.combination() == self.value


def bezout(a: MPoly, b: MPoly, var: str = "x") -> BezoutCert:
    """Certificate ``s*a + t*b = 1``; raises unless ``a`` and ``b`` are coprime."""
    g, s, t = ext_gcd(a, b, var)
    if g != a.ctx.one():
        raise BezoutError(f"inputs are not coprime (gcd {g})")
    cert = BezoutCert((a, b), (s, t), g)
    assert cert.verify()
    return cert


def is_coprime(a: MPoly, b: MPoly, var: str = "x") -> bool:
    g, _, _ = ext_gcd(a, b, var)
    return g == a.ctx.one()


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    rows: tuple[tuple[MPoly, ...], ...]
    ctx: VarCtx = field(compare=False)

    @classmethod
    def of(cls, rows: Sequence[Sequence[MPoly]], ctx: VarCtx | None = None) -> "PolyMatrix":
        if ctx is None:
            ctx = rows[0][0].ctx
        fixed = tuple(tuple(e if isinstance(e, MPoly) else ctx.const(e) for e in r) for r in rows)
        width = {len(r) for r in fixed}
        if len(width) > 1:
            raise BezoutError("matrix rows have different lengths")
        return cls(fixed, ctx)

    @classmethod
    def identity(cls, n: int, ctx: VarCtx) -> "PolyMatrix":
        return cls.of([[ctx.one() if i == j else ctx.zero() for j in range(n)] for i in range(n)], ctx)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise BezoutError("matrix shapes do not match")
        out = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = self.ctx.zero()
                for l in range(k):
                    acc = acc + self.rows[i][l] * other.rows[l][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix.of(out, self.ctx)

    def det(self) -> MPoly:
        return _det([list(r) for r in self.rows], self.ctx)

    def minor(self, i: int, j: int) -> list[list[MPoly]]:
        return [list(r[:j] + r[j + 1:]) for k, r in enumerate(self.rows) if k != i]


def det(M: PolyMatrix) -> MPoly:
    return M.det()


def inverse_unit_det(M: PolyMatrix) -> PolyMatrix:
    """Adjugate inverse; the determinant must be a nonzero constant."""
    n, m = M.shape
    if n != m:
        raise BezoutError("only square matrices are invertible")
    d = M.det()
    if not d or not d.is_constant():
        raise BezoutError(f"determinant {d} is not a nonzero constant; matrix is not in GL")
    dinv = M.ctx.ring.inv(d.constant_coef())
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            cof = _det(M.minor(j, i), M.ctx)
            if (i + j) % 2:
                cof = -cof
            row.append(cof.scale(dinv))
        adj.append(row)
    inv = PolyMatrix.of(adj, M.ctx)
    ident = PolyMatrix.identity(n, M.ctx)
    if M @ inv != ident or inv @ M != ident:
        raise BezoutError("internal error: adjugate inverse failed to verify")
    return inv


# ---------------------------------------------------------------------------
# bordered 3x3 completion
# ---------------------------------------------------------------------------


def coprime_adjust(g1: MPoly, g20: MPoly, n: int, var: str = "x") -> MPoly:
    """First ``g20 + c*x^n`` (c = 0, 1, 2, ...) coprime to ``g1``."""
    xn = g1.ctx.var(var) ** n
    bound = max(g1.degree(var), 0) + 1
    for c in range(bound + 1):
        cand = g20 + xn.scale(c)
        if is_coprime(g1, cand, var):
            return cand
    raise BezoutError("no coprime adjustment found within deg(g1)+1 steps")


def complete_unimodular(g1: MPoly, g2: MPoly, n: int, var: str = "x") -> PolyMatrix:
    """Rows ``(g1, 0, x^n), (0, g2, x^n), (h1, h2, h3)`` with determinant exactly 1."""
    ctx = g1.ctx
    one = ctx.one()
    if g1.coeff(var, 0) != one or g2.coeff(var, 0) != one:
        raise BezoutError("g1(0) = g2(0) = 1 is required")
    if not is_coprime(g1, g2, var):
        raise BezoutError("g1 and g2 share a factor; use coprime_adjust first")
    xn = ctx.var(var) ** n
    # u*g1*g2 + v*x^n = 1, then -v = s'*g1 + t'*g2 splits the x^n part
    uv = bezout(g1 * g2, xn, var)
    u, v = uv.cofactors
    st = bezout(g1, g2, var)
    s, t = st.cofactors
    h1, h2, h3 = -v * t, -v * s, u
    zero = ctx.zero()
    M = PolyMatrix.of([[g1, zero, xn], [zero, g2, xn], [h1, h2, h3]], ctx)
    if M.det() != one:
        raise BezoutError("internal error: completed matrix does not have determinant 1")
    return M


def solve_linear(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Unique solution of a rational linear system (raises if none or not unique)."""
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    sol = solve_linear_augmented(aug, ncols)
    if sol is None:
        raise BezoutError("linear system has no unique solution")
    return sol
