"""Sparse multivariate Laurent polynomials over exact coefficient rings.

A :class:`VarCtx` fixes an ordered variable alphabet, which variables may carry
negative exponents, and the coefficient ring.  :class:`MPoly` values are
immutable maps from exponent tuples to nonzero coefficients.  :class:`RingHom`
is a substitution between two contexts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from operator import add
from typing import Iterable, Mapping, Sequence

from .rings import QQ, CoefRing, ExtElement

Exps = tuple[int, ...]


class PolyError(ValueError):
    """Raised on context mismatches, non-units and failed exact divisions."""


@dataclass(frozen=True)
class VarCtx:
    names: tuple[str, ...]
    laurent: frozenset[str] = frozenset()
    ring: CoefRing = QQ

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "laurent", frozenset(self.laurent))
        if len(set(self.names)) != len(self.names):
            raise PolyError(f"duplicate variable names in {self.names}")
        if not self.laurent <= set(self.names):
            raise PolyError("Laurent flags must name declared variables")
        if set(self.names) & set(self.ring.gens):
            raise PolyError("variable names clash with coefficient generators")

    @classmethod
    def make(cls, names: str | Sequence[str], laurent: str | Iterable[str] = (), ring: CoefRing = QQ):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        if isinstance(laurent, str):
            laurent = laurent.replace(",", " ").split()
        return cls(tuple(names), frozenset(laurent), ring)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PolyError(f"variable {name!r} not in context {self.names}") from None

    @property
    def nvars(self) -> int:
        return len(self.names)

    def var(self, name: str) -> "MPoly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return MPoly(self, {tuple(e): self.ring.one})

    def vars(self, names: str | None = None) -> tuple["MPoly", ...]:
        ns = self.names if names is None else names.replace(",", " ").split()
        return tuple(self.var(n) for n in ns)

    def const(self, value) -> "MPoly":
        c = self.ring.coerce(value)
        return MPoly(self, {self.zero_exps: c} if c else {})

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.const(1)

    @property
    def zero_exps(self) -> Exps:
        return (0,) * self.nvars

    def __call__(self, text: str, **env) -> "MPoly":
        from .textio import evaluate

        return evaluate(text, self, env)

    def with_ring(self, ring: CoefRing) -> "VarCtx":
        return VarCtx(self.names, self.laurent, ring)

    def extended(self, extra: Sequence[str], laurent: Iterable[str] = ()) -> "VarCtx":
        return VarCtx(self.names + tuple(extra), self.laurent | frozenset(laurent), self.ring)

    def to_spec(self) -> dict:
        return {
            "vars": list(self.names),
            "laurent": [n for n in self.names if n in self.laurent],
            "ring": self.ring.to_spec(),
        }

    @classmethod
    def from_spec(cls, spec: Mapping) -> "VarCtx":
        return cls(tuple(spec["vars"]), frozenset(spec.get("laurent", ())),
                   CoefRing.from_spec(spec.get("ring", ())))


def _add_exps(a: Exps, b: Exps) -> Exps:
    return tuple(map(add, a, b))


def _integral(terms: Mapping[Exps, Fraction]) -> tuple[int, dict]:
    # common denominator and integer numerators
    den = 1
    for c in terms.values():
        den = lcm(den, c.denominator)
    return den, {e: c.numerator * (den // c.denominator) for e, c in terms.items()}


class MPoly:
    """Immutable sparse polynomial; negative exponents only on Laurent variables."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VarCtx, terms: Mapping[Exps, object] | None = None, check: bool = False):
        self.ctx = ctx
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        self._hash = None
        if check:
            for e in self.terms:
                if len(e) != ctx.nvars:
                    raise PolyError("exponent vector length does not match context")
                for name, k in zip(ctx.names, e):
                    if k < 0 and name not in ctx.laurent:
                        raise PolyError(f"negative exponent on non-Laurent variable {name!r}")

    # -- basic structure ------------------------------------------------------
    def _same(self, other: "MPoly"):
        if other.ctx != self.ctx:
            raise PolyError(f"context mismatch: {self.ctx.names} vs {other.ctx.names}")

    def _wrap(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction, ExtElement)) and not isinstance(other, bool):
            return self.ctx.const(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Fraction, ExtElement)) and not isinstance(other, bool):
            return self.terms == self.ctx.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        from .textio import format_poly

        return format_poly(self)

    def __len__(self):
        return len(self.terms)

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c if e in out else c
        return MPoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] - c if e in out else -c
        return MPoly(self.ctx, out)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return o
        return self.mul_trunc(o)

    __rmul__ = __mul__

    def mul_trunc(self, other: "MPoly", var: str | None = None, order: int | None = None) -> "MPoly":
        """Product, dropping terms whose ``var`` exponent is >= ``order``."""
        self._same(other)
        if var is None:
            idx = -1
        else:
            idx = self.ctx.index(var)
        out: dict = {}
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if not self.ctx.ring.gens and a and b:
            return self._mul_rational(a, b, idx, order)
        for e1, c1 in b.items():
            for e2, c2 in a.items():
                if idx >= 0 and e1[idx] + e2[idx] >= order:
                    continue
                e = _add_exps(e1, e2)
                if e in out:
                    out[e] = out[e] + c1 * c2
                else:
                    out[e] = c1 * c2
        return MPoly(self.ctx, out)

    def _mul_rational(self, a, b, idx: int, order) -> "MPoly":
        # integer kernel: Fraction arithmetic only once per output term
        da, ia = _integral(a)
        db, ib = _integral(b)
        acc: dict = {}
        get = acc.get
        if idx >= 0:
            items_a = sorted(ia.items(), key=lambda t: t[0][idx])
            for e1, c1 in ib.items():
                lim = order - e1[idx]
                for e2, c2 in items_a:
                    if e2[idx] >= lim:
                        break
                    e = tuple(map(add, e1, e2))
                    acc[e] = get(e, 0) + c1 * c2
        else:
            items_a = list(ia.items())
            for e1, c1 in ib.items():
                for e2, c2 in items_a:
                    e = tuple(map(add, e1, e2))
                    acc[e] = get(e, 0) + c1 * c2
        den = da * db
        return MPoly(self.ctx, {e: Fraction(v, den) for e, v in acc.items() if v})

    def scale(self, c) -> "MPoly":
        c = self.ctx.ring.coerce(c)
        return MPoly(self.ctx, {e: v * c for e, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            self._same(other)
            return self * other.inverse_unit()
        return self.scale(self.ctx.ring.inv(self.ctx.ring.coerce(other)))

    def __pow__(self, k: int) -> "MPoly":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse_unit() ** (-k)
        return self.pow_trunc(k)

    def pow_trunc(self, k: int, var: str | None = None, order: int | None = None) -> "MPoly":
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result.mul_trunc(base, var, order)
            k >>= 1
            if k:
                base = base.mul_trunc(base, var, order)
        return result

    # -- units -------------------------------------------------------------------
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self) -> bool:
        """Units of a Laurent polynomial ring: monomials in Laurent variables with unit coefficient."""
        if len(self.terms) != 1:
            return False
        (e, c), = self.terms.items()
        for name, k in zip(self.ctx.names, e):
            if k and name not in self.ctx.laurent:
                return False
        return self.ctx.ring.is_unit(c)

    def inverse_unit(self) -> "MPoly":
        if not self.is_unit():
            raise PolyError(f"{self} is not a unit in its polynomial ring")
        (e, c), = self.terms.items()
        return MPoly(self.ctx, {tuple(-k for k in e): self.ctx.ring.inv(c)})

    # -- inspection ------------------------------------------------------------------
    def is_constant(self) -> bool:
        return all(e == self.ctx.zero_exps for e in self.terms)

    def constant_coef(self):
        return self.terms.get(self.ctx.zero_exps, self.ctx.ring.zero)

    def degree(self, var: str) -> int:
        """Largest exponent of ``var``; -1 for the zero polynomial."""
        i = self.ctx.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def min_degree(self, var: str) -> int:
        i = self.ctx.index(var)
        return min((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coeff(self, var: str, k: int) -> "MPoly":
        """Coefficient of ``var^k`` as a polynomial in the other variables (same context)."""
        i = self.ctx.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return MPoly(self.ctx, out)

    def collect(self, var: str) -> dict[int, "MPoly"]:
        i = self.ctx.index(var)
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MPoly(self.ctx, t) for k, t in buckets.items()}

    def monomial_coef(self, exps: Mapping[str, int] | Exps):
        if isinstance(exps, Mapping):
            e = [0] * self.ctx.nvars
            for n, k in exps.items():
                e[self.ctx.index(n)] = k
            exps = tuple(e)
        return self.terms.get(tuple(exps), self.ctx.ring.zero)

    def variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for n, k in zip(self.ctx.names, e):
                if k:
                    used.add(n)
        return used

    # -- calculus and shape ------------------------------------------------------------
    def diff(self, var: str) -> "MPoly":
        i = self.ctx.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MPoly(self.ctx, out)

    def integrate(self, var: str) -> "MPoly":
        """Antiderivative in ``var`` with zero constant of integration."""
        i = self.ctx.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == -1:
                raise PolyError(f"cannot integrate {var}^-1")
            out[e[:i] + (e[i] + 1,) + e[i + 1:]] = c * Fraction(1, e[i] + 1)
        return MPoly(self.ctx, out)

    def truncate(self, var: str, order: int) -> "MPoly":
        i = self.ctx.index(var)
        return MPoly(self.ctx, {e: c for e, c in self.terms.items() if e[i] < order})

    def shift(self, var: str, k: int) -> "MPoly":
        """Multiply by ``var^k``; negative ``k`` must divide exactly unless ``var`` is Laurent."""
        i = self.ctx.index(var)
        out = {}
        for e, c in self.terms.items():
            ne = e[i] + k
            if ne < 0 and var not in self.ctx.laurent:
                raise PolyError(f"term {format_term(self.ctx, e, c)} is not divisible by {var}^{-k}")
            out[e[:i] + (ne,) + e[i + 1:]] = c
        return MPoly(self.ctx, out)

    def map_coefs(self, fn) -> "MPoly":
        return MPoly(self.ctx, {e: fn(c) for e, c in self.terms.items()})

    def recontext(self, ctx: VarCtx) -> "MPoly":
        """Re-express in ``ctx`` by variable name (missing variables must not occur)."""
        idx = []
        for n in self.ctx.names:
            idx.append(ctx.names.index(n) if n in ctx.names else None)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ctx.nvars
            for k, j in zip(e, idx):
                if k:
                    if j is None:
                        raise PolyError("polynomial uses a variable absent from the target context")
                    ne[j] = k
            out[tuple(ne)] = ctx.ring.coerce(c)
        return MPoly(ctx, out, check=True)

    def sorted_terms(self) -> list[tuple[Exps, object]]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)


def format_term(ctx: VarCtx, e: Exps, c) -> str:
    from .textio import format_poly

    return format_poly(MPoly(ctx, {e: c}))


# ---------------------------------------------------------------------------
# Ring homomorphisms
# ---------------------------------------------------------------------------


class RingHom:
    """Substitution ``source -> target`` given by one image per source variable."""

    __slots__ = ("source", "target", "images", "_inv_images")

    def __init__(self, source: VarCtx, target: VarCtx, images: Sequence[MPoly] | Mapping[str, MPoly]):
        if isinstance(images, Mapping):
            missing = set(source.names) - set(images)
            extra = set(images) - set(source.names)
            if extra:
                raise PolyError(f"images given for unknown variables {sorted(extra)}")
            images = [images[n] if n in images else None for n in source.names]
            images = [target.var(n) if im is None and n in target.names else im
                      for n, im in zip(source.names, images)]
            if any(im is None for im in images):
                raise PolyError(f"no image for {sorted(missing - set(target.names))}")
        images = tuple(images)
        if len(images) != source.nvars:
            raise PolyError("one image per source variable is required")
        if not source.ring.is_prefix_of(target.ring):
            raise PolyError("source coefficient ring does not embed into the target ring")
        fixed = []
        for name, im in zip(source.names, images):
            if not isinstance(im, MPoly):
                im = target.const(im)
            if im.ctx != target:
                raise PolyError(f"image of {name!r} lives in {im.ctx.names}, expected {target.names}")
            fixed.append(im)
        self.source = source
        self.target = target
        self.images = tuple(fixed)
        inv = {}
        for name, im in zip(source.names, self.images):
            if name in source.laurent:
                if not im.is_unit():
                    raise PolyError(f"Laurent variable {name!r} is mapped to the non-unit {im}")
                inv[name] = im.inverse_unit()
        self._inv_images = inv

    @classmethod
    def identity(cls, ctx: VarCtx) -> "RingHom":
        return cls(ctx, ctx, [ctx.var(n) for n in ctx.names])

    @classmethod
    def from_text(cls, source: VarCtx, target: VarCtx, images: Mapping[str, str]) -> "RingHom":
        return cls(source, target, {k: target(v) for k, v in images.items()})

    def image(self, name: str) -> MPoly:
        return self.images[self.source.index(name)]

    def __eq__(self, other):
        return (isinstance(other, RingHom) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        body = ", ".join(f"{n}->{im}" for n, im in zip(self.source.names, self.images))
        return f"RingHom({body})"

    def __call__(self, P: MPoly, var: str | None = None, order: int | None = None) -> MPoly:
        return apply_hom(self, P, var, order)

    def truncated(self, var: str, order: int) -> "RingHom":
        return RingHom(self.source, self.target, [im.truncate(var, order) for im in self.images])


def apply_hom(h: RingHom, P: MPoly, var: str | None = None, order: int | None = None) -> MPoly:
    """Substitute the images of ``h`` into ``P``; optionally work modulo ``var^order``."""
    if P.ctx != h.source:
        raise PolyError(f"polynomial context {P.ctx.names} is not the source {h.source.names}")
    tgt = h.target
    n = h.source.nvars
    if var is not None:
        tgt.index(var)
    cache: list[dict[int, MPoly]] = [dict() for _ in range(n)]

    def power(i: int, k: int) -> MPoly:
        c = cache[i]
        if k in c:
            return c[k]
        if k == 1:
            val = h.images[i] if var is None else h.images[i].truncate(var, order)
        elif k == -1:
            val = h._inv_images[h.source.names[i]]
            if var is not None:
                val = val.truncate(var, order)
        else:
            step = 1 if k > 0 else -1
            half = power(i, step * (abs(k) // 2))
            val = half.mul_trunc(half, var, order)
            if abs(k) % 2:
                val = val.mul_trunc(power(i, step), var, order)
        c[k] = val
        return val

    if not tgt.ring.gens and not P.ctx.ring.gens:
        return _apply_rational(h, P, var, order)
    return _apply_rec(P.terms, 0, n, power, tgt, var, order)


# -- integer kernel for hom application over QQ: a polynomial is (den, {exps: int}) ----------


def _ireduce(den: int, num: dict) -> tuple[int, dict]:
    g = den
    for v in num.values():
        g = gcd(g, v)
        if g == 1:
            return den, num
    if g > 1:
        num = {e: v // g for e, v in num.items()}
        den //= g
    return den, num


def _imul(a: tuple, b: tuple, idx: int, order) -> tuple[int, dict]:
    (da, na), (db, nb) = a, b
    if len(na) < len(nb):
        na, nb = nb, na
    acc: dict = {}
    get = acc.get
    if idx >= 0:
        items = sorted(na.items(), key=lambda t: t[0][idx])
        for e1, c1 in nb.items():
            lim = order - e1[idx]
            for e2, c2 in items:
                if e2[idx] >= lim:
                    break
                e = tuple(map(add, e1, e2))
                acc[e] = get(e, 0) + c1 * c2
    else:
        items = list(na.items())
        for e1, c1 in nb.items():
            for e2, c2 in items:
                e = tuple(map(add, e1, e2))
                acc[e] = get(e, 0) + c1 * c2
    return _ireduce(da * db, {e: v for e, v in acc.items() if v})


def _apply_rational(h: "RingHom", P: MPoly, var, order) -> MPoly:
    tgt = h.target
    n = h.source.nvars
    idx = tgt.index(var) if var is not None else -1
    zero = (0,) * tgt.nvars
    cache: list[dict[int, tuple]] = [dict() for _ in range(n)]

    def conv(Q: MPoly) -> tuple[int, dict]:
        if var is not None:
            Q = Q.truncate(var, order)
        return _integral(Q.terms) if Q.terms else (1, {})

    def power(i: int, k: int) -> tuple:
        c = cache[i]
        if k not in c:
            if k == 1:
                c[k] = conv(h.images[i])
            elif k == -1:
                c[k] = conv(h._inv_images[h.source.names[i]])
            else:
                step = 1 if k > 0 else -1
                half = power(i, step * (abs(k) // 2))
                val = _imul(half, half, idx, order)
                c[k] = _imul(val, power(i, step), idx, order) if abs(k) % 2 else val
        return c[k]

    def rec(terms: Mapping, i: int) -> tuple:
        if i == n:
            s = sum(terms.values(), Fraction(0))
            return (s.denominator, {zero: s.numerator}) if s else (1, {})
        groups: dict[int, dict] = {}
        for e, c in terms.items():
            groups.setdefault(e[i], {})[e] = c
        parts = []
        for k, sub in groups.items():
            inner = rec(sub, i + 1)
            if k and inner[1]:
                inner = _imul(inner, power(i, k), idx, order)
            if inner[1]:
                parts.append(inner)
        den = 1
        for d, _ in parts:
            den = lcm(den, d)
        acc: dict = {}
        get = acc.get
        for d, num in parts:
            f = den // d
            for e, v in num.items():
                acc[e] = get(e, 0) + v * f
        return _ireduce(den, {e: v for e, v in acc.items() if v})

    den, num = rec(P.terms, 0)
    return MPoly(tgt, {e: Fraction(v, den) for e, v in num.items()})


def _apply_rec(terms: Mapping[Exps, object], i: int, n: int, power, tgt: VarCtx, var, order) -> MPoly:
    # group on variable i, recurse on the rest: sum_k power(i, k) * rest_k
    if i == n:
        return tgt.const(sum(terms.values(), tgt.ring.zero))
    groups: dict[int, dict] = {}
    for e, c in terms.items():
        groups.setdefault(e[i], {})[e] = c
    acc: dict = {}
    for k, sub in groups.items():
        inner = _apply_rec(sub, i + 1, n, power, tgt, var, order)
        if k:
            inner = inner.mul_trunc(power(i, k), var, order)
        for e, c in inner.terms.items():
            acc[e] = acc[e] + c if e in acc else c
    return MPoly(tgt, acc)


def compose_hom(g: RingHom, h: RingHom, var: str | None = None, order: int | None = None) -> RingHom:
    """The hom ``P -> g(h(P))``; requires ``h.target == g.source``."""
    if h.target != g.source:
        raise PolyError(f"cannot compose: {h.target.names} is not {g.source.names}")
    return RingHom(h.source, g.target, [apply_hom(g, im, var, order) for im in h.images])


def jacobian_matrix(h: RingHom, vars: Sequence[str]) -> list[list[MPoly]]:
    if h.source.names != h.target.names:
        for v in vars:
            h.target.index(v)
    return [[h.image(v).diff(w) for w in vars] for v in vars]


def jacobian_det(h: RingHom, vars: Sequence[str] | str) -> MPoly:
    if isinstance(vars, str):
        vars = vars.replace(",", " ").split()
    return det(jacobian_matrix(h, vars), h.target)


def det(rows: Sequence[Sequence[MPoly]], ctx: VarCtx) -> MPoly:
    """Determinant by Laplace expansion along the first row (matrices here are tiny)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise PolyError("determinant of a non-square matrix")
    if n == 0:
        return ctx.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ctx.zero()
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * det(minor, ctx)
        total = total + term if j % 2 == 0 else total - term
    return total


# ---------------------------------------------------------------------------
# Division and truncation
# ---------------------------------------------------------------------------


def inverse_mod(P: MPoly, var: str, order: int) -> MPoly:
    """Inverse of ``P`` modulo ``var^order``; the ``var``-constant term must be a unit."""
    c0 = P.coeff(var, 0)
    if not c0.is_unit():
        raise PolyError(f"constant term {c0} in {var} is not a unit")
    inv = c0.inverse_unit()
    prec = 1
    two = P.ctx.const(2)
    while prec < order:
        prec = min(2 * prec, order)
        Pt = P.truncate(var, prec)
        inv = inv.mul_trunc(two - Pt.mul_trunc(inv, var, prec), var, prec)
    return inv.truncate(var, order)


def divide_by_monic(G: MPoly, F: MPoly, v: str, trunc: tuple[str, int] | None = None) -> tuple[MPoly, MPoly]:
    """Division with remainder by ``F`` viewed as a polynomial in ``v``.

    The leading coefficient of ``F`` in ``v`` must be a unit, or (with
    ``trunc=(x, n)``) a unit modulo ``x^n``.  Returns ``(q, rem)`` with
    ``G = q*F + rem`` (modulo ``x^n`` under truncation) and ``deg_v rem < deg_v F``.
    """
    G._same(F)
    d = F.degree(v)
    if d < 0:
        raise PolyError("division by zero polynomial")
    lc = F.coeff(v, d)
    if trunc is None:
        if not lc.is_unit():
            raise PolyError(f"leading coefficient {lc} of the divisor in {v} is not a unit")
        lcinv = lc.inverse_unit()
        tv, tn = None, None
    else:
        tv, tn = trunc
        try:
            lcinv = inverse_mod(lc, tv, tn)
        except PolyError:
            raise PolyError(f"leading coefficient {lc} of the divisor in {v} is not a unit mod {tv}^{tn}") from None
    vi = G.ctx.index(v)
    if G.ctx.names[vi] in G.ctx.laurent and G.min_degree(v) < 0:
        raise PolyError(f"dividend has negative powers of the division variable {v}")
    rem = G if tv is None else G.truncate(tv, tn)
    Ft = F if tv is None else F.truncate(tv, tn)
    q = G.ctx.zero()
    vpow = G.ctx.var(v)
    while rem and rem.degree(v) >= d:
        k = rem.degree(v)
        c = rem.coeff(v, k)
        m = c.mul_trunc(lcinv, tv, tn).mul_trunc(vpow ** (k - d), tv, tn)
        q = q + m
        rem = rem - m.mul_trunc(Ft, tv, tn)
        if rem.degree(v) >= k:
            raise PolyError("division failed to reduce the degree")
    recon = q.mul_trunc(F, tv, tn) + rem
    target = G if tv is None else G.truncate(tv, tn)
    if tv is not None:
        recon = recon.truncate(tv, tn)
    if recon != target:
        raise PolyError("internal error: division reconstruction mismatch")
    return q, rem


def truncate_x(P: MPoly, n: int, var: str = "x") -> MPoly:
    return P.truncate(var, n)


def exact_div_pow(P: MPoly, k: int, var: str = "x") -> MPoly:
    """Divide by ``var^k``; every term must carry ``var``-exponent >= k."""
    i = P.ctx.index(var)
    for e, c in P.terms.items():
        if e[i] < k:
            raise PolyError(f"term {format_term(P.ctx, e, c)} is not divisible by {var}^{k}")
    return MPoly(P.ctx, {e[:i] + (e[i] - k,) + e[i + 1:]: c for e, c in P.terms.items()})
