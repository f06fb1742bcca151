"""Isomorphism classes of the threefolds ``x^n*y + z^2 + t^3 + x*p(x) = 0``.

Two of them (same ``n``) are isomorphic exactly when
``p2(x) = eps*p1(lam*x) mod x^(n-1)`` for nonzero complex ``lam``, ``eps``.
Existence is decided in rational arithmetic; witnesses live in an extension
tower when a root is irrational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from .modification import MapCheck, VarietyEq, verify_variety_map
from .poly import MPoly, RingHom, VarCtx, exact_div_pow
from .rings import QQ, CoefRing, ExtElement, as_fraction, rational_root

NOT_ISO_CAVEAT = ("a NotIso verdict relies on the theorem's necessity direction, whose proof uses "
                  "Makar-Limanov/Derksen invariants computed outside this tool")


class ClassifyError(ValueError):
    pass


@dataclass(frozen=True)
class MultSystem:
    """Equations ``lam^d = s`` with distinct positive exponents and nonzero rational values."""

    eqs: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        eqs = tuple((int(d), as_fraction(s)) for d, s in self.eqs)
        ds = [d for d, _ in eqs]
        if len(set(ds)) != len(ds):
            raise ClassifyError("exponents must be distinct")
        if any(d <= 0 for d in ds) or any(s == 0 for _, s in eqs):
            raise ClassifyError("exponents must be positive and values nonzero")
        object.__setattr__(self, "eqs", eqs)


def _int_bezout(ds: Sequence[int]) -> tuple[int, list[int]]:
    """``g = gcd(ds) = sum(c_i d_i)``."""
    g, coefs = 0, []
    for d in ds:
        # extended Euclid on (g, d)
        a, b, x0, x1, y0, y1 = g, d, 1, 0, 0, 1
        while b:
            q = a // b
            a, b = b, a - q * b
            x0, x1 = x1, x0 - q * x1
            y0, y1 = y1, y0 - q * y1
        coefs = [c * x0 for c in coefs] + [y0]
        g = a
    return g, coefs


def solve_mult_system(system: MultSystem) -> tuple[int, Fraction] | None:
    """``(g, m)`` such that every ``g``-th root of ``m`` solves the system, or None.

    With no equations every nonzero ``lam`` works; ``(1, 1)`` is returned.
    """
    if not system.eqs:
        return 1, Fraction(1)
    ds = [d for d, _ in system.eqs]
    g, cs = _int_bezout(ds)
    assert g == reduce(gcd, ds) and sum(c * d for c, d in zip(cs, ds)) == g
    m = Fraction(1)
    for c, (_, s) in zip(cs, system.eqs):
        m *= s ** c
    if all(m ** (d // g) == s for d, s in system.eqs):
        return g, m
    return None


@dataclass(frozen=True)
class IsoVerdict:
    iso: bool
    n: int
    eps: Fraction | None = None
    g: int | None = None
    m: Fraction | None = None
    reason: str = ""
    caveat: str = ""

    @property
    def lam(self) -> Fraction | None:
        """A rational ``lam`` when one exists."""
        if not self.iso:
            return None
        return rational_root(self.m, self.g)


def _xcoefs(p: MPoly, count: int) -> list[Fraction]:
    extra = p.variables() - {"x"}
    if extra:
        raise ClassifyError(f"{p} must be a polynomial in x only")
    out = []
    for k in range(count):
        c = p.coeff("x", k).constant_coef()
        if not isinstance(c, Fraction):
            raise ClassifyError("coefficients must be rational")
        out.append(c)
    return out


def classify_iso(n: int, p1: MPoly, p2: MPoly) -> IsoVerdict:
    if n < 2:
        raise ClassifyError("n must be at least 2")
    a1, a2 = _xcoefs(p1, n - 1), _xcoefs(p2, n - 1)
    if a1[0] == 0 or a2[0] == 0:
        raise ClassifyError("p(0) must be nonzero")
    supp1 = [k for k, c in enumerate(a1) if c]
    supp2 = [k for k, c in enumerate(a2) if c]
    if supp1 != supp2:
        return IsoVerdict(False, n, reason=f"supports below x^{n - 1} differ: {supp1} vs {supp2}",
                          caveat=NOT_ISO_CAVEAT)
    eps = a2[0] / a1[0]
    system = MultSystem(tuple((k, (a2[k] / a1[k]) / eps) for k in supp1 if k >= 1))
    sol = solve_mult_system(system)
    if sol is None:
        eqs = ", ".join(f"lam^{d} = {s}" for d, s in system.eqs)
        return IsoVerdict(False, n, eps=eps, reason=f"incompatible system {eqs}", caveat=NOT_ISO_CAVEAT)
    g, m = sol
    return IsoVerdict(True, n, eps=eps, g=g, m=m, reason=f"lam^{g} = {m}, eps = {eps}")


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsoWitness:
    lam: object
    eps: Fraction
    mu: object
    ring: CoefRing
    auto: RingHom
    inverse: RingHom
    V1: VarietyEq
    V2: VarietyEq
    check: MapCheck


def _root_ring(base: CoefRing, name: str, k: int, value) -> tuple[CoefRing, object]:
    """Adjoin ``name`` with ``name^k = value`` (``value`` in ``base``)."""
    h = base.height
    rel = {(0,) * h + (k,): Fraction(1)}
    if isinstance(value, ExtElement):
        for e, c in value.terms.items():
            rel[e + (0,)] = -c
    else:
        rel[(0,) * h + (0,)] = -as_fraction(value)
    ring = base.extend(name, rel)
    return ring, ring.gen(name)


def scalar_data(verdict_or_g, m=None, eps=None, mu=None):
    """Coefficient ring with ``lam`` (a ``g``-th root of ``m``) and ``mu`` (``mu^6 = eps/lam``)."""
    if isinstance(verdict_or_g, IsoVerdict):
        v = verdict_or_g
        if not v.iso:
            raise ClassifyError(f"no witness for a NotIso verdict ({v.reason})")
        g, m, eps = v.g, v.m, v.eps
    else:
        g = verdict_or_g
    ring: CoefRing = QQ
    lam = rational_root(m, g)
    if lam is None:
        ring, lam = _root_ring(ring, "lam", g, m)
    if mu is None:
        target = ring.coerce(eps) * ring.inv(lam)
        q = target.rational_value() if isinstance(target, ExtElement) else target
        mu = rational_root(q, 6) if q is not None else None
        if mu is None:
            ring, mu = _root_ring(ring, "mu", 6, target)
            lam = ring.coerce(lam)
    else:
        mu = ring.coerce(mu)
        if mu ** 6 * lam != ring.coerce(eps):
            raise ClassifyError(f"mu = {mu} does not satisfy mu^6 * lam = eps")
    return ring, lam, mu


def _variety(ctx: VarCtx, n: int, p: MPoly) -> VarietyEq:
    x, y, z, t = ctx.vars()
    return VarietyEq(ctx, x ** n * y + z ** 2 + t ** 3 + x * p.recontext(ctx), "z")


def _formula(ctx: VarCtx, n: int, p_src: MPoly, p_tgt: MPoly, lam, mu) -> RingHom:
    # comorphism of the displayed map V_{p_src} -> V_{p_tgt}
    x, y, z, t = ctx.vars()
    R = ctx.ring
    lam, mu = R.coerce(lam), R.coerce(mu)
    li, mi = R.inv(lam), R.inv(mu)
    scale = RingHom(ctx, ctx, {"x": x.scale(lam)})
    P_src, P_tgt = p_src.recontext(ctx), p_tgt.recontext(ctx)
    corr = exact_div_pow(P_src.scale(mi ** 6) - scale(P_tgt).scale(lam), n - 1)
    yimg = y.scale(li ** n * mi ** 6) + corr.scale(li ** n)
    return RingHom(ctx, ctx, {"x": x.scale(lam), "y": yimg, "z": z.scale(mi ** 3), "t": t.scale(mi ** 2)})


def witness_automorphism(n: int, p1: MPoly, p2: MPoly, lam=None, eps=None, mu=None,
                         verdict: IsoVerdict | None = None) -> IsoWitness:
    """The automorphism of A^4 mapping ``V_{n,p2}`` onto ``V_{n,p1}``, verified with its inverse.

    ``lam`` is a rational or given through ``verdict`` (``lam^g = m``);
    ``mu`` defaults to a sixth root of ``eps/lam``.
    """
    if verdict is not None:
        ring, lam_v, mu_v = scalar_data(verdict, mu=mu)
        eps = verdict.eps
    else:
        if lam is None or eps is None:
            raise ClassifyError("lam and eps (or a verdict) are required")
        ring, lam_v, mu_v = scalar_data(1, as_fraction(lam), as_fraction(eps), mu)
    ctx = VarCtx.make("x y z t", ring=ring)
    V1, V2 = _variety(ctx, n, p1), _variety(ctx, n, p2)
    auto = _formula(ctx, n, p2, p1, lam_v, mu_v)
    inverse = _formula(ctx, n, p1, p2, ring.inv(ring.coerce(lam_v)), ring.inv(ring.coerce(mu_v)))
    check = verify_variety_map(auto, V2, V1, inverse)
    if not check.passed:
        raise ClassifyError(f"witness failed verification: {check}")
    return IsoWitness(lam_v, as_fraction(eps), mu_v, ring, auto, inverse, V1, V2, check)
