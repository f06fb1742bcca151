"""Truncated power series in a distinguished variable (``x`` by default).

Coefficients may involve the other variables of the context, including
Laurent ones such as ``lam``; anything required to be a unit must be a unit
monomial there.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import MPoly, PolyError, inverse_mod


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class TruncSeries:
    body: MPoly
    order: int
    var: str = "x"

    def __post_init__(self):
        if self.order < 0:
            raise SeriesError("truncation order must be non-negative")
        object.__setattr__(self, "body", self.body.truncate(self.var, self.order))
        if self.body.min_degree(self.var) < 0:
            raise SeriesError(f"series body has negative powers of {self.var}")

    @property
    def ctx(self):
        return self.body.ctx

    def coeff(self, k: int) -> MPoly:
        return self.body.coeff(self.var, k)

    def _check(self, other: "TruncSeries"):
        if other.var != self.var or other.ctx != self.ctx:
            raise SeriesError("series live in different rings")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(self.body + other.body, min(self.order, other.order), self.var)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries(self.body - other.body, min(self.order, other.order), self.var)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            self._check(other)
            n = min(self.order, other.order)
            return TruncSeries(self.body.mul_trunc(other.body, self.var, n), n, self.var)
        return TruncSeries(self.body * other, self.order, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncSeries":
        return TruncSeries(self.body.pow_trunc(k, self.var, self.order), self.order, self.var)

    def with_order(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError("cannot raise the precision of a truncated series")
        return TruncSeries(self.body, order, self.var)

    def congruent(self, other: "TruncSeries | MPoly", order: int | None = None) -> bool:
        o = other.body if isinstance(other, TruncSeries) else other
        n = self.order if order is None else order
        return self.body.truncate(self.var, n) == o.truncate(self.var, n)

    def __str__(self):
        return f"{self.body} + O({self.var}^{self.order})"


def inv_series(P: TruncSeries) -> TruncSeries:
    """Inverse modulo ``x^N``; the ``x``-constant term must be a unit."""
    try:
        body = inverse_mod(P.body, P.var, P.order)
    except PolyError as exc:
        raise SeriesError(str(exc)) from None
    return TruncSeries(body, P.order, P.var)


def exp_xmul(f: TruncSeries | MPoly, N: int, var: str = "x") -> TruncSeries:
    """``exp(x*f)`` modulo ``x^N`` via the recurrence ``k e_k = sum_j j g_j e_{k-j}``."""
    fb = f.body if isinstance(f, TruncSeries) else f
    if isinstance(f, TruncSeries):
        var = f.var
    ctx = fb.ctx
    if fb.min_degree(var) < 0:
        raise SeriesError(f"exponent has negative powers of {var}")
    g = fb.shift(var, 1).truncate(var, N)
    gc = {j: c for j, c in g.collect(var).items()}
    e = [ctx.one()]
    for k in range(1, N):
        acc = ctx.zero()
        for j in range(1, k + 1):
            if j in gc:
                acc = acc + gc[j] * e[k - j] * j
        e.append(acc.scale(Fraction(1, k)))
    xv = ctx.var(var)
    body = ctx.zero()
    for k, c in enumerate(e):
        if c:
            body = body + c * xv ** k
    return TruncSeries(body, N, var)


def log_unit(p: TruncSeries | MPoly, N: int | None = None, var: str = "x") -> TruncSeries:
    """The series ``f`` (modulo ``x^(N-1)``) with ``exp(x*f) = p`` modulo ``x^N``."""
    if isinstance(p, TruncSeries):
        var = p.var
        N = p.order if N is None else N
        body = p.body
    else:
        body = p
    if N is None:
        raise SeriesError("truncation order required")
    body = body.truncate(var, N)
    ctx = body.ctx
    if body.coeff(var, 0) != ctx.one():
        raise SeriesError("log_unit needs constant term exactly 1")
    if N <= 1:
        return TruncSeries(ctx.zero(), 0, var)
    # L' = p'/p, L(0) = 0, f = L / x
    pinv = inverse_mod(body, var, N - 1)
    dL = body.diff(var).mul_trunc(pinv, var, N - 1)
    L = dL.integrate(var)
    return TruncSeries(L.shift(var, -1), N - 1, var)


def kth_root(P: TruncSeries, k: int, c0) -> TruncSeries:
    """The k-th root of ``P`` with constant term ``c0`` (a branch choice), by Newton steps."""
    if k < 1:
        raise SeriesError("root index must be positive")
    ctx, var, N = P.ctx, P.var, P.order
    c0p = c0 if isinstance(c0, MPoly) else ctx.const(c0)
    if c0p.ctx != ctx:
        raise SeriesError("branch constant lives in another context")
    if c0p.degree(var) > 0:
        raise SeriesError("branch constant must not involve the series variable")
    if not c0p.is_unit():
        raise SeriesError(f"branch constant {c0p} is not a unit")
    if c0p ** k != P.coeff(0):
        raise SeriesError(f"({c0p})^{k} does not match the constant term {P.coeff(0)}")
    y = c0p
    prec = 1
    kinv = Fraction(1, k)
    while prec < N:
        prec = min(2 * prec, N)
        Pt = P.body.truncate(var, prec)
        ykm1 = y.pow_trunc(k - 1, var, prec)
        inv = inverse_mod(ykm1, var, prec)
        # y <- ((k-1) y + P / y^(k-1)) / k
        y = (y.scale(k - 1) + Pt.mul_trunc(inv, var, prec)).scale(kinv).truncate(var, prec)
    return TruncSeries(y, N, var)
