"""Centers ``(x^n, F)`` of affine modifications, membership and equality
certificates, lifting base automorphisms to the modified hypersurfaces, and
verification of maps between hypersurfaces ``{eq = 0}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .linbez import BezoutCert, BezoutError, ext_gcd
from .poly import (MPoly, PolyError, RingHom, VarCtx, compose_hom, divide_by_monic,
                   exact_div_pow, inverse_mod)


class ModificationError(ValueError):
    pass


def _unit_mod(c: MPoly, xvar: str, n: int) -> bool:
    try:
        inverse_mod(c, xvar, n)
    except PolyError:
        return False
    return True


def _unit_at_zero(c: MPoly, xvar: str) -> bool:
    return bool(c) and c.coeff(xvar, 0).is_unit()


@dataclass(frozen=True)
class IdealXN:
    """The ideal ``(x^n, F)``; ``F`` has a leading coefficient in ``monic_var`` that is a unit mod ``x^n``."""

    n: int
    F: MPoly
    monic_var: str = ""
    xvar: str = "x"

    def __post_init__(self):
        if self.n < 1:
            raise ModificationError("n must be positive")
        if not self.monic_var:
            for v in self.F.ctx.names:
                if v != self.xvar and self._unit_lead(v):
                    object.__setattr__(self, "monic_var", v)
                    break
            else:
                raise ModificationError(f"{self.F} has no variable with unit leading coefficient mod {self.xvar}^{self.n}")
        elif not self._unit_lead(self.monic_var):
            raise ModificationError(
                f"leading coefficient of {self.F} in {self.monic_var} is not a unit mod {self.xvar}^{self.n}")

    def _unit_lead(self, v: str) -> bool:
        d = self.F.degree(v)
        return d > 0 and _unit_mod(self.F.coeff(v, d), self.xvar, self.n)

    @property
    def ctx(self) -> VarCtx:
        return self.F.ctx

    def __str__(self):
        return f"({self.xvar}^{self.n}, {self.F})"


@dataclass(frozen=True)
class MemberCert:
    """``G = x^n*Q + u*F`` on success; otherwise ``remainder`` is the nonzero reduced form."""

    G: MPoly
    ideal: IdealXN
    Q: MPoly | None
    u: MPoly | None
    remainder: MPoly

    @property
    def is_member(self) -> bool:
        return not self.remainder

    def verify(self) -> bool:
        if not self.is_member:
            return False
        xn = self.G.ctx.var(self.ideal.xvar) ** self.ideal.n
        return xn * self.Q + self.u * self.ideal.F == self.G


def ideal_member(G: MPoly, I: IdealXN) -> MemberCert:
    if G.ctx != I.ctx:
        raise ModificationError("polynomial and ideal live in different contexts")
    q, rem = divide_by_monic(G, I.F, I.monic_var, trunc=(I.xvar, I.n))
    if rem:
        return MemberCert(G, I, None, None, rem)
    Q = exact_div_pow(G - q * I.F, I.n, I.xvar)
    cert = MemberCert(G, I, Q, q, rem)
    assert cert.verify()
    return cert


@dataclass(frozen=True)
class IdealEqualCert:
    forward: MemberCert   # F2 in I1
    backward: MemberCert  # F1 in I2

    @property
    def equal(self) -> bool:
        return self.forward.is_member and self.backward.is_member


def ideal_equal(I1: IdealXN, I2: IdealXN) -> IdealEqualCert:
    if I1.n != I2.n or I1.ctx != I2.ctx or I1.xvar != I2.xvar:
        raise ModificationError("ideals must share n, context and x-variable")
    return IdealEqualCert(ideal_member(I2.F, I1), ideal_member(I1.F, I2))


def subring_rescale_equal(n: int, F: MPoly, p: MPoly, xvar: str = "x") -> BezoutCert:
    """Certificate ``a*p + b*x^n = 1``.

    Then ``x^-n*F = a*(x^-n*p*F) + b*F``, so adjoining ``x^-n*F`` or
    ``x^-n*p*F`` gives the same algebra.
    """
    if not p.coeff(xvar, 0).is_unit():
        raise ModificationError(f"p(0) = {p.coeff(xvar, 0)} is not a unit")
    xn = p.ctx.var(xvar) ** n
    try:
        g, a, b = ext_gcd(p, xn, xvar)
    except BezoutError as exc:
        raise ModificationError(str(exc)) from None
    if g != p.ctx.one():
        raise ModificationError("p and x^n are not coprime")
    cert = BezoutCert((p, xn), (a, b), g)
    assert cert.verify()
    if F.ctx == p.ctx:
        assert a * (p * F) + b * (xn * F) == F
    return cert


# ---------------------------------------------------------------------------
# hypersurfaces and maps between them
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VarietyEq:
    """The hypersurface ``{eq = 0}`` of ``ambient``, reduced by division in ``monic_var``.

    Without a monic variable, a variable whose leading coefficient is a
    polynomial in ``xvar`` alone is used with pseudo-division; this decides
    membership in ``(eq)`` when ``eq`` is irreducible and not a polynomial in ``xvar``.
    """

    ambient: VarCtx
    eq: MPoly
    monic_var: str = ""
    name: str = ""
    xvar: str = "x"

    def __post_init__(self):
        if not self.eq:
            raise ModificationError("defining polynomial must be nonzero")
        if self.eq.ctx != self.ambient:
            raise ModificationError("defining polynomial lives in another context")
        if not self.monic_var:
            cands = [v for v in self.ambient.names if self.eq.degree(v) > 0 and self.eq.min_degree(v) >= 0]
            monic = [v for v in cands if self._lead(v).is_unit()]
            pseudo = [v for v in cands if v != self.xvar and self._pseudo_ok(v)]
            if not (monic or pseudo):
                raise ModificationError(f"{self.eq} has no usable division variable")
            object.__setattr__(self, "monic_var", (monic or pseudo)[0])
        elif self.eq.degree(self.monic_var) <= 0 or not (
                self._lead(self.monic_var).is_unit() or self._pseudo_ok(self.monic_var)):
            raise ModificationError(f"{self.eq} cannot be divided by in {self.monic_var}")

    def _lead(self, v: str) -> MPoly:
        return self.eq.coeff(v, self.eq.degree(v))

    def _pseudo_ok(self, v: str) -> bool:
        lc = self._lead(v)
        return self.xvar in self.ambient.names and not (lc.variables() - {self.xvar}) \
            and lc.min_degree(self.xvar) >= 0 and self.eq.variables() != {self.xvar}

    @property
    def monic(self) -> bool:
        return self._lead(self.monic_var).is_unit()

    def reduce(self, P: MPoly) -> tuple[MPoly, MPoly]:
        """``(u, rem)`` with ``P = u*eq`` when ``rem`` is zero."""
        if self.monic:
            return divide_by_monic(P, self.eq, self.monic_var)
        v, eq = self.monic_var, self.eq
        d, lc = eq.degree(v), self._lead(v)
        q, rem, k = P.ctx.zero(), P, 0
        while rem and rem.degree(v) >= d:
            e = rem.degree(v)
            m = rem.coeff(v, e) * P.ctx.var(v) ** (e - d)
            q, rem, k = lc * q + m, lc * rem - m * eq, k + 1
        if rem:
            return q, rem
        # lc^k * P = q * eq; strip lc^k (a polynomial in x)
        for _ in range(k):
            if lc.is_unit():
                q = q * lc.inverse_unit()
                continue
            lead = lc.coeff(self.xvar, lc.degree(self.xvar)).constant_coef()
            q, r = divide_by_monic(q, lc.scale(P.ctx.ring.inv(lead)), self.xvar)
            if r:
                raise ModificationError("internal error: pseudo-quotient not divisible by the leading coefficient")
            q = q.scale(P.ctx.ring.inv(lead))
        return q, rem

    def __str__(self):
        return f"{self.name or 'V'}: {self.eq} = 0"


@dataclass(frozen=True)
class MapCheck:
    """Outcome of checking that a comorphism maps one hypersurface into another."""

    passed: bool
    unit_factor: MPoly
    remainder: MPoly
    roundtrips: dict = field(default_factory=dict)
    notes: tuple = ()

    def __bool__(self):
        return self.passed


def pullback_factor(h: RingHom, V_src: VarietyEq, V_tgt: VarietyEq) -> tuple[MPoly, MPoly]:
    """Reduce ``h(eq_tgt)`` modulo ``eq_src``: returns (cofactor, remainder)."""
    if h.source != V_tgt.ambient or h.target != V_src.ambient:
        raise ModificationError("hom contexts do not match the varieties (expected ambient(tgt) -> ambient(src))")
    return V_src.reduce(h(V_tgt.eq))


def verify_variety_map(h: RingHom, V_src: VarietyEq, V_tgt: VarietyEq,
                       inverse: RingHom | None = None, xvar: str = "x") -> MapCheck:
    """``h`` is the comorphism of a map ``V_src -> V_tgt`` (so ``h: ambient(V_tgt) -> ambient(V_src)``).

    Passes when ``h(eq_tgt) = u*eq_src`` with ``u`` a unit at ``x = 0``; with an
    inverse, both round trips must reduce to the identity modulo the equations.
    """
    u, rem = pullback_factor(h, V_src, V_tgt)
    notes = []
    ok = not rem
    if ok:
        unit = u.is_unit() or (xvar in u.ctx.names and _unit_at_zero(u, xvar))
        if not unit:
            ok = False
            notes.append(f"cofactor {u} is not a unit at {xvar}=0")
    trips = {}
    if inverse is not None:
        back_u, back_rem = pullback_factor(inverse, V_tgt, V_src)
        trips["inverse_pullback"] = back_rem
        ok = ok and not back_rem
        src_trip = compose_hom(h, inverse)   # ambient(src) -> ambient(src)
        tgt_trip = compose_hom(inverse, h)   # ambient(tgt) -> ambient(tgt)
        for V, trip, tag in ((V_src, src_trip, "src"), (V_tgt, tgt_trip, "tgt")):
            for v in V.ambient.names:
                _, r = V.reduce(trip.image(v) - V.ambient.var(v))
                trips[f"{tag}:{v}"] = r
                ok = ok and not r
    return MapCheck(ok, u, rem, trips, tuple(notes))


@dataclass(frozen=True)
class Lift:
    hom: RingHom
    membership: MemberCert
    check: MapCheck


def _base_image_in(phi: RingHom, ambient: VarCtx, name: str) -> MPoly:
    return phi.image(name).recontext(ambient)


def lift_modification_auto(phi: RingHom, I_src: IdealXN, I_tgt: IdealXN, V_src: VarietyEq,
                           V_tgt: VarietyEq, yvar: str = "y", inverse_phi: RingHom | None = None) -> Lift:
    """Extend a base comorphism ``phi`` (with ``phi(I_tgt) in I_src``) across ``y``.

    Hypersurfaces are ``x^n*y + F = 0``.  From ``phi(F_tgt) = x^n*Q + u*F_src``
    and ``phi(x) = c*x`` the lift sends ``y -> (u*y - Q)/c^n``, pulling the
    target equation back to ``u`` times the source equation.
    """
    xv, n = I_src.xvar, I_src.n
    if I_tgt.n != n:
        raise ModificationError("centers have different n")
    if phi.source != I_tgt.ctx or phi.target != I_src.ctx:
        raise ModificationError("phi must map the target base ring into the source base ring")
    for V, I in ((V_src, I_src), (V_tgt, I_tgt)):
        expected = V.ambient.var(xv) ** n * V.ambient.var(yvar) + I.F.recontext(V.ambient)
        if V.eq != expected:
            raise ModificationError(f"{V.eq} is not x^{n}*{yvar} + F for the given center")
    px = phi.image(xv)
    c = px.coeff(xv, 1)
    if px != c * phi.target.var(xv) or not c.is_constant() or not c.is_unit():
        raise ModificationError(f"phi(x) = {px} is not a unit multiple of x")
    m = ideal_member(phi(I_tgt.F), I_src)
    if not m.is_member:
        raise ModificationError(f"phi does not map the centers: remainder {m.remainder}")
    if not _unit_at_zero(m.u, xv):
        raise ModificationError(f"membership cofactor {m.u} is not a unit mod {xv}")
    amb = V_src.ambient
    images = {}
    for name in V_tgt.ambient.names:
        if name == yvar:
            u, Q = m.u.recontext(amb), m.Q.recontext(amb)
            images[name] = (u * amb.var(yvar) - Q) / amb.const(c.constant_coef()) ** n
        else:
            images[name] = _base_image_in(phi, amb, name)
    h = RingHom(V_tgt.ambient, amb, images)
    inverse = None
    if inverse_phi is not None:
        inverse = lift_modification_auto(inverse_phi, I_tgt, I_src, V_tgt, V_src, yvar).hom
    check = verify_variety_map(h, V_src, V_tgt, inverse, xv)
    if not check.passed:
        raise ModificationError(f"lifted map failed verification: {check}")
    return Lift(h, m, check)


def hypersurface(ctx: VarCtx, n: int, F: MPoly, yvar: str = "y", name: str = "") -> VarietyEq:
    """``x^n*y + F`` in ``ctx`` (``F`` may live in a base context without ``y``)."""
    eq = ctx.var("x") ** n * ctx.var(yvar) + F.recontext(ctx)
    return VarietyEq(ctx, eq, name=name)


def vars_of(ctx: VarCtx, names: Sequence[str]) -> tuple[MPoly, ...]:
    return tuple(ctx.var(n) for n in names)
