"""Cylinders ``V_{n,p} x A^1``: the isomorphism with ``V_{n,1} x A^1``, the
intermediate threefold ``W_{n,p}: x^n*y + p*(z^2 + t^3 + x) = 0``, the
formal jet check of the biholomorphism, the five-variable equivalence of the
two defining polynomials, and the infinitesimal isomorphism of the centers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .classify import IsoVerdict, classify_iso
from .linbez import PolyMatrix, complete_unimodular, coprime_adjust, inverse_unit_det
from .modification import (IdealXN, MapCheck, MemberCert, VarietyEq, ideal_equal, ideal_member,
                           lift_modification_auto, subring_rescale_equal, verify_variety_map)
from .poly import MPoly, RingHom, VarCtx, compose_hom, exact_div_pow, inverse_mod
from .rings import QQ, rational_root
from .series import TruncSeries, exp_xmul, kth_root, log_unit

X = VarCtx.make("x")
BASE3 = VarCtx.make("x z t")
BASE4 = VarCtx.make("x z t w")
AMB4 = VarCtx.make("x y z t")
AMB5 = VarCtx.make("x y z t w")


class CylinderError(ValueError):
    pass


def _px(p: MPoly) -> MPoly:
    if p.variables() - {"x"}:
        raise CylinderError(f"{p} must be a polynomial in x")
    return p.recontext(X)


def _cusp_plus(ctx: VarCtx, p: MPoly) -> MPoly:
    """``z^2 + t^3 + x*p``."""
    x, z, t = ctx.var("x"), ctx.var("z"), ctx.var("t")
    return z ** 2 + t ** 3 + x * p.recontext(ctx)


def v_np(n: int, p: MPoly, ctx: VarCtx = AMB4) -> VarietyEq:
    x, y = ctx.var("x"), ctx.var("y")
    return VarietyEq(ctx, x ** n * y + _cusp_plus(ctx, p), "z", f"V_{n},{p}")


def w_np(n: int, p: MPoly, ctx: VarCtx = AMB4) -> VarietyEq:
    x, y = ctx.var("x"), ctx.var("y")
    return VarietyEq(ctx, x ** n * y + p.recontext(ctx) * _cusp_plus(ctx, ctx.one()), "z", f"W_{n},{p}")


def _extend_identity(h: RingHom, ctx: VarCtx) -> RingHom:
    """Extend a hom on a sub-alphabet of ``ctx`` by the identity on the remaining variables."""
    return RingHom(ctx, ctx, {n: h.image(n).recontext(ctx) for n in h.source.names})


# ---------------------------------------------------------------------------
# V_{n,1} = W_{n,p}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomPair:
    forward: RingHom   # ring(target) -> ring(source) of the geometric map
    backward: RingHom
    source: VarietyEq
    target: VarietyEq
    check: MapCheck


def build_w_iso(n: int, p: MPoly, ctx: VarCtx = AMB4) -> HomPair:
    """Isomorphism ``V_{n,1} -> W_{n,p}`` from ``a*p + b*x^n = 1``.

    ``forward: y -> p*y`` pulls ``eq_W`` back to ``p*eq_V``;
    ``backward: y -> a*y - b*(r + x)`` pulls ``eq_V`` back to ``a*eq_W``.
    """
    p = _px(p)
    cert = subring_rescale_equal(n, _cusp_plus(BASE3, BASE3.one()), p.recontext(BASE3))
    a, b = (c.recontext(ctx) for c in cert.cofactors)
    P = p.recontext(ctx)
    V, W = v_np(n, X.one(), ctx), w_np(n, p, ctx)
    y = ctx.var("y")
    forward = RingHom(ctx, ctx, {"y": P * y})
    backward = RingHom(ctx, ctx, {"y": a * y - b * _cusp_plus(ctx, ctx.one())})
    check = verify_variety_map(forward, V, W, backward)
    if not check.passed:
        raise CylinderError(f"W-isomorphism failed: {check}")
    return HomPair(forward, backward, V, W, check)


# ---------------------------------------------------------------------------
# unit normalization p(0) = 1
# ---------------------------------------------------------------------------


def normalize_unit(n: int, p: MPoly, ctx: VarCtx = AMB4) -> tuple[MPoly, HomPair | None]:
    """``p~(x) = lam*p(lam*x)`` with ``lam = 1/p(0)`` and the isomorphism ``V_{n,p~} -> V_{n,p}``."""
    p = _px(p)
    c0 = p.constant_coef()
    if not c0:
        raise CylinderError("p(0) must be nonzero")
    if c0 == 1:
        return p, None
    lam = 1 / c0
    pt = RingHom(X, X, {"x": X.var("x").scale(lam)})(p).scale(lam)
    x, y = ctx.var("x"), ctx.var("y")
    fwd = RingHom(ctx, ctx, {"x": x.scale(lam), "y": y.scale(lam ** -n)})
    bwd = RingHom(ctx, ctx, {"x": x.scale(1 / lam), "y": y.scale(lam ** n)})
    Vp, Vt = v_np(n, p, ctx), v_np(n, pt, ctx)
    check = verify_variety_map(fwd, Vt, Vp, bwd)
    if not check.passed:
        raise CylinderError(f"unit normalization failed: {check}")
    return pt, HomPair(fwd, bwd, Vt, Vp, check)


# ---------------------------------------------------------------------------
# cylinder isomorphism
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CylinderIsoBundle:
    """``V_{n,1} x A^1 -> V_{n,p} x A^1``: ``forward`` maps ring(V_p x A^1) to ring(V_1 x A^1)."""

    n: int
    p: MPoly
    p_normalized: MPoly
    f: MPoly
    g1: MPoly
    g2: MPoly
    h: tuple[MPoly, MPoly, MPoly]
    matrix: PolyMatrix
    base: RingHom
    base_inverse: RingHom
    membership: MemberCert
    ideals: object
    forward: RingHom
    backward: RingHom
    source: VarietyEq
    target: VarietyEq
    check: MapCheck
    normalization: HomPair | None = None
    report: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.check.passed and all(self.report.values())


def _matrix_hom(M: PolyMatrix, ctx: VarCtx = BASE4) -> RingHom:
    """``(z, t, w) -> M (z, t, w)^T`` over C[x]."""
    cols = [ctx.var(v) for v in ("z", "t", "w")]
    images = {}
    for name, row in zip(("z", "t", "w"), M.rows):
        images[name] = sum((e.recontext(ctx) * c for e, c in zip(row, cols)), ctx.zero())
    return RingHom(ctx, ctx, images)


def series_roots(n: int, p: MPoly) -> tuple[MPoly, MPoly, MPoly]:
    """``f`` with ``exp(x*f) = p`` and truncations of ``exp(x*f/2)``, ``exp(x*f/3)`` modulo ``x^n``."""
    f = log_unit(p, n).body
    g1 = exp_xmul(f.scale(Fraction(1, 2)), n).body
    g20 = exp_xmul(f.scale(Fraction(1, 3)), n).body
    return f, g1, g20


def build_cylinder_iso(n: int, p: MPoly) -> CylinderIsoBundle:
    p = _px(p)
    if n < 2:
        raise CylinderError("n must be at least 2")
    pn, norm = normalize_unit(n, p, AMB5)
    f, g1, g20 = series_roots(n, pn)
    g2 = coprime_adjust(g1, g20, n)
    report = {
        "g1^2 = p mod x^n": g1.pow_trunc(2, "x", n) == pn.truncate("x", n),
        "g2^3 = p mod x^n": g2.pow_trunc(3, "x", n) == pn.truncate("x", n),
        "exp(x*f) = p mod x^n": exp_xmul(f, n).body == pn.truncate("x", n),
    }
    M = complete_unimodular(g1, g2, n)
    report["det = 1"] = M.det() == X.one()
    Minv = inverse_unit_det(M)
    base, base_inv = _matrix_hom(M), _matrix_hom(Minv)
    F_p, F_1 = _cusp_plus(BASE4, pn), _cusp_plus(BASE4, X.one())
    I_p, I_1 = IdealXN(n, F_p, "z"), IdealXN(n, F_1, "z")
    m = ideal_member(base(F_p), I_1)
    report["base maps (x^n, r+x*p) into (x^n, r+x)"] = m.is_member
    report["cofactor = p mod x^n"] = m.is_member and m.u.truncate("x", n) == pn.recontext(BASE4).truncate("x", n)
    eq_ideals = ideal_equal(I_1, IdealXN(n, pn.recontext(BASE4) * F_1, "z"))
    report["(x^n, r+x) = (x^n, p*(r+x))"] = eq_ideals.equal
    V1, Vp = v_np(n, X.one(), AMB5), v_np(n, pn, AMB5)
    lift = lift_modification_auto(base, I_1, I_p, V1, Vp, inverse_phi=base_inv)
    fwd = lift.hom
    bwd = lift_modification_auto(base_inv, I_p, I_1, Vp, V1).hom
    target = Vp
    if norm is not None:
        # V_1 -> V_{p~} -> V_p
        fwd = compose_hom(fwd, norm.forward)
        bwd = compose_hom(norm.backward, bwd)
        target = v_np(n, p, AMB5)
    check = verify_variety_map(fwd, V1, target, bwd)
    report["round trips"] = check.passed
    return CylinderIsoBundle(n, p, pn, f, g1, g2, M.rows[2], M, base, base_inv, m, eq_ideals,
                             fwd, bwd, V1, target, check, norm, report)


@dataclass(frozen=True)
class CylinderComposite:
    """``V_{n,p1} x A^1 -> V_{n,p2} x A^1`` through the hub ``V_{n,1} x A^1``."""

    hom: RingHom       # ring(V_p2 x A^1) -> ring(V_p1 x A^1)
    inverse: RingHom
    source: VarietyEq
    target: VarietyEq
    check: MapCheck


def compose_cylinders(b1: CylinderIsoBundle, b2: CylinderIsoBundle) -> CylinderComposite:
    if b1.n != b2.n:
        raise CylinderError("bundles have different n")
    hom = compose_hom(b1.backward, b2.forward)
    inverse = compose_hom(b2.backward, b1.forward)
    check = verify_variety_map(hom, b1.target, b2.target, inverse)
    return CylinderComposite(hom, inverse, b1.target, b2.target, check)


# ---------------------------------------------------------------------------
# formal jets of the biholomorphism W_{n,p} -> V_{n,p}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JetCheck:
    n: int
    N: int
    passed: bool
    residual: MPoly
    psi: RingHom


def psi_comorphism(n: int, p: MPoly, N: int, corrupt: bool = False, ctx: VarCtx = AMB4) -> RingHom:
    """Jets mod ``x^N`` of ``y -> y - (E - p)/x^n * r``, ``z -> E^(1/2) z``, ``t -> E^(1/3) t``, ``E = exp(x*f)``."""
    f = log_unit(p, n).body
    E = exp_xmul(f, N).body
    E2 = exp_xmul(f.scale(Fraction(1, 2)), N).body
    E3 = exp_xmul(f.scale(Fraction(1, 3)), N).body
    corr = exact_div_pow(E - p.truncate("x", N), n).recontext(ctx)
    y, z, t = ctx.var("y"), ctx.var("z"), ctx.var("t")
    r = z ** 2 + t ** 3
    yimg = y if corrupt else y - corr * r
    return RingHom(ctx, ctx, {"y": yimg, "z": E2.recontext(ctx) * z, "t": E3.recontext(ctx) * t})


def analytic_jet_check(n: int, p: MPoly, N: int, corrupt: bool = False) -> JetCheck:
    p = _px(p)
    if p.constant_coef() != 1:
        raise CylinderError("p(0) = 1 is required (normalize first)")
    if N < n:
        raise CylinderError("jet order N must be at least n")
    psi = psi_comorphism(n, p, N, corrupt)
    V, W = v_np(n, p), w_np(n, p)
    residual = psi(V.eq, "x", N) - W.eq.truncate("x", N)
    return JetCheck(n, N, not residual, residual, psi)


# ---------------------------------------------------------------------------
# the five-variable equivalence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StableEquivReport:
    n: int
    p: MPoly
    automorphism: RingHom | None
    inverse: RingHom | None
    image_ok: bool
    inverse_ok: bool
    verdict: IsoVerdict
    counterexample: bool
    note: str
    cylinder: CylinderIsoBundle | None = None
    w_iso: HomPair | None = None
    composite: MapCheck | None = None

    @property
    def passed(self) -> bool:
        return self.image_ok and self.inverse_ok and (self.composite is None or self.composite.passed)


def stable_equivalence_auto(n: int, p: MPoly) -> tuple[RingHom, RingHom, MPoly, MPoly]:
    """Automorphism ``A`` of C[x,y,z,t,w] with ``A(x^n*y + r + x*p) = x^n*y + p*(r + x)``."""
    p = _px(p)
    if p.constant_coef() != 1:
        raise CylinderError("p(0) = 1 is required")
    f, g1, g20 = series_roots(n, p)
    g2 = coprime_adjust(g1, g20, n)
    M = complete_unimodular(g1, g2, n)
    base, base_inv = _matrix_hom(M), _matrix_hom(inverse_unit_det(M))
    F_p, F_1 = _cusp_plus(BASE4, p), _cusp_plus(BASE4, X.one())
    # base(F_p) = p*F_1 + x^n*Q exactly
    Q = exact_div_pow(base(F_p) - p.recontext(BASE4) * F_1, n)
    y = AMB5.var("y")
    A = RingHom(AMB5, AMB5, {**{v: base.image(v).recontext(AMB5) for v in ("z", "t", "w")},
                             "y": y - Q.recontext(AMB5)})
    B = RingHom(AMB5, AMB5, {**{v: base_inv.image(v).recontext(AMB5) for v in ("z", "t", "w")},
                             "y": y + base_inv(Q).recontext(AMB5)})
    P_V = v_np(n, p, AMB5).eq
    P_W = w_np(n, p, AMB5).eq
    return A, B, P_V, P_W


def stable_equiv_report(n: int, p: MPoly) -> StableEquivReport:
    p = _px(p)
    verdict = classify_iso(n, p, X.one())
    if p == X.one():
        ident = RingHom.identity(AMB5)
        return StableEquivReport(n, p, ident, ident, True, True, verdict, False,
                                 "p = 1: both polynomials coincide; identity equivalence")
    A, B, P_V, P_W = stable_equivalence_auto(n, p)
    image_ok = A(P_V) == P_W
    ident = RingHom.identity(AMB5)
    inverse_ok = compose_hom(A, B) == ident and compose_hom(B, A) == ident
    counter = image_ok and inverse_ok and not verdict.iso
    cyl = build_cylinder_iso(n, p)
    w = build_w_iso(n, p, AMB5)
    # V_p x A^1 -> V_1 x A^1 -> W_p x A^1
    hom = compose_hom(cyl.backward, w.forward)
    inv = compose_hom(w.backward, cyl.forward)
    composite = verify_variety_map(hom, cyl.target, w_np(n, p, AMB5), inv)
    if verdict.iso:
        note = ("not a counterexample: the threefolds are isomorphic "
                f"({verdict.reason}); p is constant modulo x^{n - 1} up to scaling")
    else:
        note = "equivalent in five variables, not isomorphic as threefolds"
    return StableEquivReport(n, p, A, B, image_ok, inverse_ok, verdict, counter, note, cyl, w, composite)


# ---------------------------------------------------------------------------
# centers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CenterIso:
    n: int
    p: MPoly
    q: MPoly
    xi: RingHom
    cofactor: MPoly
    passed: bool
    note: str


def _branch(ring, value: Fraction, k: int, name: str):
    c = rational_root(value, k)
    if c is not None:
        return ring, c
    from .classify import _root_ring

    return _root_ring(ring, name, k, value)


def embedded_center_iso(n: int, p: MPoly) -> CenterIso:
    """``xi: z -> g1*z, t -> g2*t`` on C[x]/(x^n)[z,t] with ``g1^2 = g2^3 = p^-1``.

    ``xi(z^2 + t^3 + x) = q*(z^2 + t^3 + x*p) mod x^n`` with ``q = p^-1``.
    """
    p = _px(p)
    c0 = p.constant_coef()
    if not c0:
        raise CylinderError("p(0) must be nonzero")
    q = inverse_mod(p, "x", n)
    q0 = q.constant_coef()
    ring = QQ
    ring, b1 = _branch(ring, q0, 2, "c2")
    ring, b2 = _branch(ring, q0, 3, "c3")
    Xr = X.with_ring(ring)
    qr = q.recontext(Xr)
    g1 = kth_root(TruncSeries(qr, n), 2, Xr.const(ring.coerce(b1))).body
    g2 = kth_root(TruncSeries(qr, n), 3, Xr.const(ring.coerce(b2))).body
    B = BASE3.with_ring(ring)
    z, t = B.var("z"), B.var("t")
    xi = RingHom(B, B, {"z": g1.recontext(B) * z, "t": g2.recontext(B) * t})
    lhs = xi(_cusp_plus(B, Xr.one()), "x", n)
    rhs = qr.recontext(B).mul_trunc(_cusp_plus(B, p.recontext(Xr)), "x", n)
    passed = lhs == rhs and q.coeff("x", 0).is_unit()
    note = ("xi uses roots of p^-1 mod x^n; with roots of p itself the pullback lands in "
            "(x^n, r + x*p^-1), i.e. the stated map relates Z_{n,p^-1} and Z_{n,1}")
    return CenterIso(n, p, q, xi, qr.recontext(B), passed, note)
