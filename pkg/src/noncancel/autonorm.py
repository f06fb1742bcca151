"""Normalization of truncated C[x]-automorphisms of C[x]/(x^n)[z,t].

The loop peels off exponentials of Jacobian derivations
``delta = x^n0 * Jac(., gamma*(r + x*p1))`` until the automorphism is the
identity modulo ``x^(n-1)``, matching one coefficient of ``p1`` and ``p2``
per step.  Every step is checked; a failed check ends the run with a
diagnostic instead of an exception.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .modification import IdealXN, MemberCert, ideal_member
from .poly import MPoly, RingHom, VarCtx, compose_hom, divide_by_monic, jacobian_det

BASE = VarCtx.make("x z t")


class NormalizationError(ValueError):
    pass


def jac(F: MPoly, G: MPoly, u: str = "z", v: str = "t") -> MPoly:
    return F.diff(u) * G.diff(v) - F.diff(v) * G.diff(u)


def cusp(ctx: VarCtx = BASE) -> MPoly:
    z, t = ctx.var("z"), ctx.var("t")
    return z ** 2 + t ** 3


@dataclass(frozen=True)
class JacobianLND:
    """``delta(F) = x^n0 * (F_z G_t - F_t G_z)``."""

    n0: int
    G: MPoly

    def __call__(self, F: MPoly, order: int | None = None) -> MPoly:
        out = jac(F, self.G).shift("x", self.n0)
        return out if order is None else out.truncate("x", order)

    def __neg__(self) -> "JacobianLND":
        return JacobianLND(self.n0, -self.G)


@dataclass(frozen=True)
class TruncAuto:
    """A C[x]-endomorphism of C[x]/(x^n)[z,t], given by the images of z and t."""

    z: MPoly
    t: MPoly
    n: int

    def __post_init__(self):
        object.__setattr__(self, "z", self.z.truncate("x", self.n))
        object.__setattr__(self, "t", self.t.truncate("x", self.n))

    @classmethod
    def identity(cls, n: int, ctx: VarCtx = BASE) -> "TruncAuto":
        return cls(ctx.var("z"), ctx.var("t"), n)

    @property
    def ctx(self) -> VarCtx:
        return self.z.ctx

    def hom(self) -> RingHom:
        return RingHom(self.ctx, self.ctx, {"z": self.z, "t": self.t})

    def __call__(self, P: MPoly) -> MPoly:
        return self.hom()(P, "x", self.n)

    def then(self, inner: "TruncAuto") -> "TruncAuto":
        """The composite ``P -> self(inner(P))``."""
        h = compose_hom(self.hom(), inner.hom(), "x", self.n)
        return TruncAuto(h.image("z"), h.image("t"), self.n)

    def jacobian(self) -> MPoly:
        return jacobian_det(self.hom(), ("z", "t")).truncate("x", self.n)

    def __eq__(self, other):
        return isinstance(other, TruncAuto) and (self.z, self.t, self.n) == (other.z, other.t, other.n)

    def __hash__(self):
        return hash((self.z, self.t, self.n))


def _x_order(P: MPoly) -> int | None:
    return P.min_degree("x") if P else None


def jet_order(phi: TruncAuto) -> int:
    """Largest ``n0`` with ``phi = id mod x^n0`` (capped at the truncation order)."""
    z, t = phi.ctx.var("z"), phi.ctx.var("t")
    orders = [o for o in (_x_order(phi.z - z), _x_order(phi.t - t)) if o is not None]
    n0 = min(orders, default=phi.n)
    if n0 < 1:
        raise NormalizationError("automorphism is not the identity modulo x")
    return min(n0, phi.n)


def extract_potential(phi: TruncAuto, n0: int) -> MPoly:
    """``h`` with ``phi(z) = z + x^n0 h_t`` and ``phi(t) = t - x^n0 h_z`` mod ``x^(n0+1)``, ``h(0,0) = 0``."""
    ctx = phi.ctx
    a = (phi.z - ctx.var("z")).coeff("x", n0)
    b = (phi.t - ctx.var("t")).coeff("x", n0)
    div = a.diff("z") + b.diff("t")
    if div:
        raise NormalizationError(f"the x^{n0}-jet has nonzero divergence {div}")
    h = a.integrate("t") - b.coeff("t", 0).integrate("z")
    h = h - h.coeff("z", 0).coeff("t", 0)
    assert h.diff("t") == a and h.diff("z") == -b
    return h


def decompose_gamma(h: MPoly) -> tuple[MPoly, MPoly]:
    """``(gamma, c)`` with ``h = gamma*(z^2 + t^3) + c``, ``c`` constant."""
    gamma, rem = divide_by_monic(h, cusp(h.ctx), "z")
    if not rem.is_constant():
        raise NormalizationError(f"h is not gamma*r + const: remainder {rem}")
    return gamma, rem


def exp_lnd(delta: JacobianLND, n: int, ctx: VarCtx = BASE) -> TruncAuto:
    """``exp(delta)`` on z and t modulo ``x^n`` (the series stops once ``k*n0 >= n``)."""
    if delta.n0 < 1:
        raise NormalizationError("the derivation must raise the x-order")
    images = []
    for v in ("z", "t"):
        term = ctx.var(v)
        total = term
        k = 1
        while True:
            term = delta(term, n).scale(Fraction(1, k))
            if not term:
                break
            total = total + term
            k += 1
        images.append(total)
    return TruncAuto(images[0], images[1], n)


# ---------------------------------------------------------------------------
# the normalization loop
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepRecord:
    n0: int
    h: MPoly
    gamma: MPoly | None
    c: MPoly | None
    alpha0: MPoly
    a1: Fraction
    a2: Fraction
    jac_constant_free: bool

    @property
    def matched(self) -> bool:
        return self.a1 == self.a2


@dataclass
class NormalizationTrace:
    n: int
    p1: MPoly
    p2: MPoly
    steps: list[StepRecord] = field(default_factory=list)
    verdict: str = "running"
    detail: str = ""
    precondition: MemberCert | None = None
    final: TruncAuto | None = None

    @property
    def equal(self) -> bool:
        return self.verdict == "equal"


def _coefs(p: MPoly, n: int) -> list[Fraction]:
    return [p.coeff("x", k).constant_coef() for k in range(n)]


def _as_base(p: MPoly) -> MPoly:
    return p if p.ctx == BASE else p.recontext(BASE)


def equcrit_normalize(n: int, p1: MPoly, p2: MPoly, phi: TruncAuto) -> NormalizationTrace:
    p1, p2 = _as_base(p1), _as_base(p2)
    trace = NormalizationTrace(n, p1, p2)
    for name, p in (("p1", p1), ("p2", p2)):
        if p.variables() - {"x"}:
            raise NormalizationError(f"{name} must be a polynomial in x")
        if p.degree("x") > n - 2:
            raise NormalizationError(f"deg {name} must be at most n-2 = {n - 2}")
    if phi.n != n:
        raise NormalizationError("automorphism truncation order differs from n")
    x = BASE.var("x")
    r = cusp()
    F1, F2 = r + x * p1, r + x * p2
    I2 = IdealXN(n, F2, "z")
    a1s, a2s = _coefs(p1, n - 1), _coefs(p2, n - 1)

    def stop(verdict: str, detail: str) -> NormalizationTrace:
        trace.verdict, trace.detail = verdict, detail
        return trace

    try:
        jet_order(phi)
    except NormalizationError as exc:
        return stop("precondition-failed", str(exc))
    pre = ideal_member(phi(F1), I2)
    trace.precondition = pre
    if not pre.is_member:
        return stop("precondition-failed", f"phi(r + x*p1) is not in (x^{n}, r + x*p2): remainder {pre.remainder}")

    last = 0
    while True:
        n0 = jet_order(phi)
        if n0 >= n:
            break
        if n0 <= last:
            return stop("step-failed", f"jet order did not increase past {last}")
        last = n0
        image = phi(F1)
        m = ideal_member(image, I2)
        if not m.is_member:
            return stop("step-failed", f"ideal map lost at n0={n0}: remainder {m.remainder}")
        U = m.u.truncate("x", n)
        if U.truncate("x", n0) != BASE.one():
            return stop("step-failed", f"cofactor {U} is not 1 mod x^{n0}")
        alpha0 = U.coeff("x", n0)
        try:
            h = extract_potential(phi, n0)
        except NormalizationError as exc:
            return stop("step-failed", str(exc))
        jrh = jac(r, h)
        expected = (F1 + jrh.shift("x", n0)).truncate("x", n0 + 1)
        if image.truncate("x", n0 + 1) != expected:
            return stop("step-failed", f"phi(r + x*p1) differs from r + x*p1 + x^{n0}*Jac(r,h) mod x^{n0 + 1}")
        const_free = not jrh.constant_coef()
        a1, a2 = a1s[n0 - 1], a2s[n0 - 1]
        # a1 + Jac(r,h) = alpha(0,z,t)*r + a2
        if BASE.const(a1) + jrh != alpha0 * r + BASE.const(a2):
            trace.steps.append(StepRecord(n0, h, None, None, alpha0, a1, a2, const_free))
            return stop("step-failed", f"coefficient identity fails at x^{n0}")
        if not const_free:
            trace.steps.append(StepRecord(n0, h, None, None, alpha0, a1, a2, const_free))
            return stop("step-failed", "Jac(r,h) has a constant term")
        if n0 >= n - 1:
            trace.steps.append(StepRecord(n0, h, None, None, alpha0, a1, a2, const_free))
            break
        try:
            gamma, c = decompose_gamma(h)
        except NormalizationError as exc:
            return stop("step-failed", str(exc))
        trace.steps.append(StepRecord(n0, h, gamma, c, alpha0, a1, a2, const_free))
        delta = JacobianLND(n0, gamma * F1)
        theta_inv = exp_lnd(-delta, n)
        phi = phi.then(theta_inv)

    trace.final = phi
    if a1s != a2s:
        return stop("mismatch", f"p1 and p2 differ: {p1} vs {p2}")
    return stop("equal", f"p1 = p2 = {p1} certified in {len(trace.steps)} step(s)")


# ---------------------------------------------------------------------------
# sample automorphisms
# ---------------------------------------------------------------------------


def random_gamma(rng: random.Random, degree: int = 2, terms: int = 3, ctx: VarCtx = BASE) -> MPoly:
    """Sparse random polynomial in (z, t) of total degree at most ``degree``."""
    z, t = ctx.var("z"), ctx.var("t")
    monos = [(i, j) for i in range(degree + 1) for j in range(degree + 1 - i)]
    g = ctx.zero()
    for i, j in rng.sample(monos, rng.randint(1, min(terms, len(monos)))):
        g = g + rng.choice([-2, -1, 1, 2]) * z ** i * t ** j
    return g


def random_poly_x(rng: random.Random, max_deg: int, ctx: VarCtx = BASE) -> MPoly:
    """Random polynomial in x with nonzero constant term and small integer coefficients."""
    x = ctx.var("x")
    c0 = rng.choice([c for c in range(-3, 4) if c])
    p = ctx.const(c0)
    for k in range(1, max_deg + 1):
        p = p + rng.randint(-3, 3) * x ** k
    return p


def random_equcrit_auto(rng: random.Random, n: int, p1: MPoly, factors: int = 3) -> TruncAuto:
    """A product of exponentials of Jacobian derivations with potentials gamma*(r + x*p1)."""
    F1 = cusp() + BASE.var("x") * _as_base(p1)
    phi = TruncAuto.identity(n)
    for _ in range(factors):
        n0 = rng.randint(1, max(1, n - 1))
        delta = JacobianLND(n0, random_gamma(rng) * F1)
        phi = phi.then(exp_lnd(delta, n))
    return phi
