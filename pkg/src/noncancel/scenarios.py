"""Scenario execution: each kind runs a construction, then records a
certificate document that ``certs.recheck`` can verify on its own.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Any, Callable

from . import __version__
from .autonorm import BASE, cusp, equcrit_normalize, random_equcrit_auto, random_poly_x
from .certs import CertBuilder, recheck
from .classify import NOT_ISO_CAVEAT, classify_iso, witness_automorphism, _int_bezout
from .cylinder import (AMB5, BASE4, X, analytic_jet_check, build_cylinder_iso, compose_cylinders,
                       embedded_center_iso, stable_equiv_report, v_np, w_np, _cusp_plus)
from .geom2 import (A4, CHECK_GROUPS, CL, CX, FP, OV, UL, build_data, cech_data, charts, equivariance_homs, gl2_ideal_map,
                    closed_form_candidates, section2_suite, variety_gallery, x1_y_iso, _swap)
from .linbez import bezout
from .poly import MPoly, RingHom, divide_by_monic
from .textio import PolyParseError, evaluate

KINDS = ("classify", "cylinder-iso", "analytic-jet", "equ-crit", "stable-equiv", "center-iso", "section2")


class ScenarioError(ValueError):
    pass


def parse_x_poly(text: str, env: dict | None = None, what: str = "polynomial") -> MPoly:
    """A polynomial in ``x``; ``env`` binds rational parameters such as ``a``."""
    bound = {k: Fraction(v) for k, v in (env or {}).items()}
    try:
        return evaluate(str(text), X, bound)
    except PolyParseError as exc:
        raise ScenarioError(f"{what} {text!r}: {exc}") from None


def _frac_text(q) -> str:
    q = Fraction(q)
    return f"({q.numerator}/{q.denominator})" if q.denominator != 1 else f"({q.numerator})"


def _int_param(params: dict, key: str, default=None) -> int:
    val = params.get(key, default)
    if val is None:
        raise ScenarioError(f"missing parameter {key!r}")
    try:
        return int(val)
    except (TypeError, ValueError):
        raise ScenarioError(f"parameter {key!r} must be an integer, got {val!r}") from None


def _frac_param(params: dict, key: str, default: str) -> Fraction:
    val = params.get(key, default)
    try:
        return Fraction(str(val))
    except (ValueError, ZeroDivisionError):
        raise ScenarioError(f"parameter {key!r} must be a rational number, got {val!r}") from None


# ---------------------------------------------------------------------------
# kinds
# ---------------------------------------------------------------------------


def _classify(params: dict, cb: CertBuilder, ctx: dict) -> tuple[bool, str, list[str]]:
    n = _int_param(params, "n")
    p1 = parse_x_poly(params.get("p1", "1"), params.get("env"), "p1")
    p2 = parse_x_poly(params.get("p2", "1"), params.get("env"), "p2")
    v = classify_iso(n, p1, p2)
    P1, P2 = cb.bind("P1", p1), cb.bind("P2", p2)
    caveats = []
    if v.iso:
        eps = v.eps
        cb.claim("p2(0) = eps * p1(0)", "zero", f"coeff({P2}, x, 0) - {_frac_text(eps)}*coeff({P1}, x, 0)", X)
        w = witness_automorphism(n, p1, p2, verdict=v)
        cb.variety_map("w", w.auto, w.V2, w.V1, w.inverse)
        summary = f"Iso: {v.reason}; witness verified over ring {w.ring.to_spec() or 'QQ'}"
    else:
        caveats.append(NOT_ISO_CAVEAT)
        a1 = [p1.coeff("x", k).constant_coef() for k in range(n - 1)]
        a2 = [p2.coeff("x", k).constant_coef() for k in range(n - 1)]
        diff = [k for k in range(n - 1) if bool(a1[k]) != bool(a2[k])]
        if diff:
            k = diff[0]
            nz, z = (P1, P2) if a1[k] else (P2, P1)
            cb.claim(f"x^{k}: coefficient present in one polynomial", "nonzero", f"coeff({nz}, x, {k})", X)
            cb.claim(f"x^{k}: coefficient absent from the other", "zero", f"coeff({z}, x, {k})", X)
        else:
            eqs = [(k, (a2[k] / a1[k]) / v.eps) for k in range(1, n - 1) if a1[k]]
            g, cs = _int_bezout([d for d, _ in eqs])
            m = Fraction(1)
            for c, (_, s) in zip(cs, eqs):
                m *= s ** c
            cb.claim("gcd combination of the exponents", "zero",
                     " + ".join(f"({c})*({d})" for c, (d, _) in zip(cs, eqs)) + f" - {g}", X)
            eps = _frac_text(v.eps)
            for d, s in eqs:
                cb.claim(f"lam^{d} = {s} read off from x^{d}", "zero",
                         f"coeff({P2}, x, {d}) - {_frac_text(s)}*{eps}*coeff({P1}, x, {d})", X)
            factors = "*".join(f"{_frac_text(s)}^{c}" for c, (_, s) in zip(cs, eqs)) or "1"
            cb.claim(f"lam^{g} is forced to {m}", "zero", f"{_frac_text(m)} - {factors}", X)
            bad = [(d, s) for d, s in eqs if m ** (d // g) != s]
            d, s = bad[0]
            cb.claim(f"lam^{d} = {s} is incompatible with lam^{g} = {m}", "nonzero",
                     f"{_frac_text(m)}^{d // g} - {_frac_text(s)}", X)
        summary = f"NotIso: {v.reason}"
    expect = params.get("expect")
    ok = expect is None or expect == ("iso" if v.iso else "not-iso")
    if not ok:
        summary += f" (expected {expect})"
    return ok, summary, caveats


def _cylinder_certs(cb: CertBuilder, b, tag: str) -> None:
    n = b.n
    G1, G2 = cb.bind(f"G1{tag}", b.g1), cb.bind(f"G2{tag}", b.g2)
    H1, H2, H3 = (cb.bind(f"H{i}{tag}", h) for i, h in zip((1, 2, 3), b.h))
    P = cb.bind(f"P{tag}", b.p_normalized)
    cb.claim(f"{tag}: det = 1", "zero", f"{G1}*{G2}*{H3} - x^{n}*({G1}*{H2} + {G2}*{H1}) - 1", X)
    cb.claim(f"{tag}: g1^2 = p mod x^{n}", "zero_mod", f"{G1}^2 - {P}", X, "x", n)
    cb.claim(f"{tag}: g2^3 = p mod x^{n}", "zero_mod", f"{G2}^3 - {P}", X, "x", n)
    m = b.membership
    Fp = cb.bind(f"Fp{tag}", _cusp_plus(BASE4, b.p_normalized))
    F1 = cb.bind(f"F1{tag}", _cusp_plus(BASE4, X.one()))
    B = cb.hom(f"base{tag}", b.base)
    Q, U = cb.bind(f"Q{tag}", m.Q), cb.bind(f"U{tag}", m.u)
    Pb = cb.bind(f"Pb{tag}", b.p_normalized.recontext(BASE4))
    cb.claim(f"{tag}: base(r + x*p) = x^{n}*Q + U*(r + x)", "zero", f"{B}({Fp}) - x^{n}*{Q} - {U}*{F1}", BASE4)
    cb.claim(f"{tag}: U = p mod x^{n}", "zero_mod", f"{U} - {Pb}", BASE4, "x", n)
    cb.variety_map(f"cyl{tag}", b.forward, b.source, b.target, b.backward)


def _cylinder_iso(params: dict, cb: CertBuilder, ctx: dict):
    n = _int_param(params, "n")
    env = params.get("env") or ({"a": params["a"]} if "a" in params else None)
    p = parse_x_poly(params.get("p", "1"), env, "p")
    b = build_cylinder_iso(n, p)
    _cylinder_certs(cb, b, "A")
    ok = b.passed
    summary = f"V({n}, {p}) x A^1 = V({n}, 1) x A^1: {'verified' if ok else 'failed'}"
    if "p2" in params:
        p2 = parse_x_poly(params["p2"], env, "p2")
        b2 = build_cylinder_iso(n, p2)
        _cylinder_certs(cb, b2, "B")
        comp = compose_cylinders(b, b2)
        cb.variety_map("hub", comp.hom, comp.source, comp.target, comp.inverse)
        ok = ok and b2.passed and comp.check.passed
        summary += f"; hub composite V({n}, {p}) x A^1 = V({n}, {p2}) x A^1: {'verified' if comp.check.passed else 'failed'}"
    return ok, summary, []


def _analytic_jet(params: dict, cb: CertBuilder, ctx: dict):
    n = _int_param(params, "n")
    p = parse_x_poly(params.get("p", "1"), params.get("env"), "p")
    N = _int_param(params, "N", ctx.get("jet_order", 16))
    corrupt = bool(params.get("corrupt", False))
    j = analytic_jet_check(n, p, N, corrupt)
    psi = cb.hom("psi", j.psi)
    EV, EW = cb.bind("EV", v_np(n, p).eq), cb.bind("EW", w_np(n, p).eq)
    if j.passed:
        cb.claim(f"psi(eq_V) = eq_W mod x^{N}", "zero_mod", f"{psi}({EV}) - {EW}", A4, "x", N)
    else:
        R = cb.bind("R", j.residual)
        cb.claim(f"psi(eq_V) - eq_W = R mod x^{N}", "zero_mod", f"{psi}({EV}) - {EW} - {R}", A4, "x", N)
        cb.claim("residual R is nonzero", "nonzero", R, A4)
    ok = j.passed != corrupt
    what = "corrupted map (y-correction dropped)" if corrupt else "jet map"
    return ok, f"{what}, N={N}: residual {'0' if j.passed else 'nonzero'}", []


def _equ_crit(params: dict, cb: CertBuilder, ctx: dict):
    ns = params.get("n", [3, 4, 5])
    ns = [int(k) for k in (ns if isinstance(ns, list) else [ns])]
    samples = _int_param(params, "samples", 1)
    mode = params.get("mode", "equal")
    if mode not in ("equal", "separate"):
        raise ScenarioError(f"mode must be 'equal' or 'separate', got {mode!r}")
    seed = int(params.get("seed", ctx.get("seed", 0)))
    good = 0
    r = cusp()
    for i in range(samples):
        rng = random.Random(seed * 1_000_003 + i)
        n = ns[i % len(ns)]
        p1 = random_poly_x(rng, n - 2)
        p2 = p1
        if mode == "separate":
            k = rng.randint(0, n - 2)
            p2 = p1 + rng.choice([-2, -1, 1, 2]) * BASE.var("x") ** k
        phi = random_equcrit_auto(rng, n, p1)
        trace = equcrit_normalize(n, p1, p2, phi)
        tag = f"s{i}"
        Phi = cb.hom(f"Phi{tag}", phi.hom())
        x = BASE.var("x")
        F1, F2 = cb.bind(f"F1{tag}", r + x * p1), cb.bind(f"F2{tag}", r + x * p2)
        image = phi(r + x * p1)
        if mode == "equal":
            pre = trace.precondition
            if pre is None or not pre.is_member:
                continue
            U = cb.bind(f"U{tag}", pre.u.truncate("x", n))
            cb.claim(f"{tag}: Phi(r + x*p1) = U*(r + x*p2) mod x^{n}", "zero_mod",
                     f"{Phi}({F1}) - {U}*{F2}", BASE, "x", n)
            cb.claim(f"{tag}: U(0) is nonzero", "nonzero", f"coeff({U}, x, 0)", BASE)
            if trace.equal and trace.final is not None:
                Fin = cb.hom(f"Fin{tag}", trace.final.hom())
                for v in ("z", "t"):
                    cb.claim(f"{tag}: normalized map fixes {v} mod x^{n - 1}", "zero_mod",
                             f"{Fin}({v}) - {v}", BASE, "x", n - 1)
                cb.claim(f"{tag}: p1 = p2", "zero", f"{F1} - {F2}", BASE)
                good += 1
        else:
            q, rem = divide_by_monic(image, r + x * p2, "z", trunc=("x", n))
            Q, R = cb.bind(f"Q{tag}", q), cb.bind(f"R{tag}", rem)
            cb.claim(f"{tag}: Phi(r + x*p1) = Q*(r + x*p2) + R mod x^{n}", "zero_mod",
                     f"{Phi}({F1}) - {Q}*{F2} - {R}", BASE, "x", n)
            cb.claim(f"{tag}: R has z-degree below 2", "deg_lt", R, BASE, "z", 2)
            cb.claim(f"{tag}: R is nonzero", "nonzero", R, BASE)
            if trace.verdict == "precondition-failed" and rem:
                good += 1
    ok = good == samples
    return ok, f"{mode}: {good}/{samples} samples as expected (seed {seed})", []


def _stable_equiv(params: dict, cb: CertBuilder, ctx: dict):
    n = _int_param(params, "n")
    p = parse_x_poly(params.get("p", "1+x"), params.get("env"), "p")
    rep = stable_equiv_report(n, p)
    A, B = cb.hom("A", rep.automorphism), cb.hom("B", rep.inverse)
    PV, PW = cb.bind("PV", v_np(n, p, AMB5).eq), cb.bind("PW", w_np(n, p, AMB5).eq)
    cb.claim("A(x^n*y + r + x*p) = x^n*y + p*(r + x)", "zero", f"{A}({PV}) - {PW}", AMB5)
    for v in AMB5.names:
        cb.claim(f"A(B({v})) = {v}", "zero", f"{A}({B}({v})) - {v}", AMB5)
        cb.claim(f"B(A({v})) = {v}", "zero", f"{B}({A}({v})) - {v}", AMB5)
    caveats = [] if rep.verdict.iso else [NOT_ISO_CAVEAT]
    return rep.passed, f"{rep.note}; classify: {rep.verdict.reason}", caveats


def _center_iso(params: dict, cb: CertBuilder, ctx: dict):
    n = _int_param(params, "n")
    p = parse_x_poly(params.get("p", "1"), params.get("env"), "p")
    c = embedded_center_iso(n, p)
    B = c.xi.source
    xi = cb.hom("xi", c.xi)
    E1, Ep = cb.bind("E1", _cusp_plus(B, X.one())), cb.bind("Ep", _cusp_plus(B, p))
    Qc, Pc = cb.bind("Qc", c.cofactor), cb.bind("Pc", p.recontext(B))
    cb.claim(f"xi(r + x) = q*(r + x*p) mod x^{n}", "zero_mod", f"{xi}({E1}) - {Qc}*{Ep}", B, "x", n)
    cb.claim(f"q*p = 1 mod x^{n}", "zero_mod", f"{Qc}*{Pc} - 1", B, "x", n)
    return c.passed, f"Z({n}, {p}) = Z({n}, 1) via roots of p^-1; cofactor q = {c.q}", [c.note]


def _section2(params: dict, cb: CertBuilder, ctx: dict):
    alpha = _frac_param(params, "alpha", "-5/3")
    beta = _frac_param(params, "beta", "-1/3")
    only = params.get("check")
    if only is not None and only not in CHECK_GROUPS:
        raise ScenarioError(f"unknown check group {only!r}; choose from {', '.join(CHECK_GROUPS)}")
    rep = section2_suite(alpha, beta, only)
    expect = params.get("expect", "pass")
    _section2_certs(cb, alpha, beta, only)
    ok = rep.passed == (expect == "pass")
    fails = rep.failures()
    summary = f"alpha={alpha}, beta={beta}: " + ("all checks pass" if not fails else "failed: " + "; ".join(fails))
    return ok, summary, []


def _section2_certs(cb: CertBuilder, alpha: Fraction, beta: Fraction, only: str | None) -> None:
    """Certificates for the identities that hold; failed checks are reported, not certified."""
    d = build_data(alpha, beta)
    a = _frac_text(alpha)
    want = (lambda g: only is None or only == g)
    if want("data") or want("scalar"):
        S, XI, T, Z = (cb.bind(n, p) for n, p in (("S", d.sigma), ("XI", d.xi), ("T", d.tau), ("Z", d.zeta)))
        cb.claim("sigma^2 - lam^6 + x + x^2 = x^4*xi", "zero", f"{S}^2 - lam^6 + x + x^2 - x^4*{XI}", UL)
        cb.claim("(1+a*x^2)*tau^2 - lam^6 + x + x^2 = x^4*zeta", "zero",
                 f"(1 + {a}*x^2)*{T}^2 - lam^6 + x + x^2 - x^4*{Z}", UL)
        cb.claim("tau = (1 - a/2*x^2)*sigma", "zero", f"{T} - (1 - {a}/2*x^2)*{S}", UL)
        cb.claim("deg_x sigma <= 3", "deg_lt", S, UL, "x", 4)
        cb.claim("sigma(0, lam) = lam^3", "zero", f"coeff({S}, x, 0) - lam^3", UL)
        flip = cb.hom("FLIP", RingHom(UL, UL, {"lam": -UL.var("lam")}))
        for name, sign in ((S, "+"), (XI, "-"), (T, "+"), (Z, "-")):
            cb.claim(f"{name} has lam-parity {'odd' if sign == '+' else 'even'}", "zero", f"{flip}({name}) {sign} {name}", UL)
        cb.claim("sigma = (1+a/2*x^2)*tau + a^2/4*x^4*sigma", "zero",
                 f"{S} - (1 + {a}/2*x^2)*{T} - {a}^2/4*x^4*{S}", UL)
    if want("coordinate-change"):
        gal = variety_gallery(alpha)
        h, hinv = _swap(A4)
        cb.variety_map("X0X", h, gal["X0"], gal["X"], hinv)
        g = gl2_ideal_map(alpha, beta)
        M = g.matrix
        ents = [cb.bind(f"M{i}{j}", M[i, j]) for i in range(2) for j in range(2)]
        cb.claim("det of the GL2 matrix = 1", "zero", f"{ents[0]}*{ents[3]} - {ents[1]}*{ents[2]} - 1", M.ctx)
        if g.forward.is_member:
            base = cb.hom("GL2", g.base)
            FY, FX1 = cb.bind("FY", g.F_y), cb.bind("FX1", g.F_x1)
            QG, UG = cb.bind("QG", g.forward.Q), cb.bind("UG", g.forward.u)
            cb.claim("GL2(F_y) = x^4*Q + U*F_x1", "zero", f"{base}({FY}) - x^4*{QG} - {UG}*{FX1}", M.ctx)
            cb.claim("U = 1 - x^2 mod x^4", "zero_mod", f"{UG} - 1 + x^2", M.ctx, "x", 4)
            try:
                hom, inv = x1_y_iso(alpha, beta)
                cb.variety_map("X1Y", hom, gal["X1"], gal["Y"], inv)
            except ValueError:
                pass
    if want("trivialization"):
        for i, ch in enumerate(charts(d)):
            tag = f"ch{i}"
            c = cb.hom(tag, ch.hom)
            E = cb.bind(f"E{tag}", ch.variety.eq)
            cb.claim(f"{ch.name}: chart lands in {ch.variety.name}", "zero", f"{c}({E})", ch.hom.target)
            shift, flow, hom_s = equivariance_homs(ch)
            sh, fl, cs = cb.hom(f"sh{tag}", shift), cb.hom(f"fl{tag}", flow), cb.hom(f"cs{tag}", hom_s)
            for v in ch.hom.source.names:
                cb.claim(f"{ch.name}: equivariance on {v}", "zero", f"{sh}({c}({v})) - {cs}({fl}({v}))", shift.target)
        lit = charts(d, literal_wt=True)[-1]
        c = cb.hom("chlit", lit.hom)
        E = cb.bind("Echlit", lit.variety.eq)
        cb.claim("W_t without the (1+a*x^2) factor misses Y", "nonzero", f"{c}({E})", lit.hom.target)
    if want("fiber-product"):
        S, XI = cb.bind("SF", d.sigma.recontext(FP)), cb.bind("XIF", d.xi.recontext(FP))
        fl = cb.hom("FLIPF", RingHom(FP, FP, {"lam": -FP.var("lam")}))
        cb.claim("A0: h(v) - h(v1) - (v + v1)*(g(v) - g(v1)) = 2*sigma*(v - v1)", "zero",
                 f"((x^4*v + 2*{S})*v + {XI}) - ((x^4*v1 + 2*{S})*v1 + {XI}) - (v + v1)*(x^4*v - x^4*v1)"
                 f" - 2*{S}*(v - v1)", FP)
        cb.claim("A1: h(lam, v) - h(-lam, v1) - (v + v1)*(g(lam, v) - g(-lam, v1)) = 0", "zero",
                 f"((x^4*v + 2*{S})*v + {XI}) - ((x^4*v1 + 2*{fl}({S}))*v1 + {fl}({XI}))"
                 f" - (v + v1)*((x^4*v + {S}) - (x^4*v1 + {fl}({S})))", FP)
        cert = bezout(UL.var("x") ** 4, d.sigma.scale(2))
        PB, QB = cb.bind("PB", cert.cofactors[0]), cb.bind("QB", cert.cofactors[1])
        SU = cb.bind("SU", d.sigma)
        cb.claim("Bezout: P*x^4 + Q*2*sigma = 1", "zero", f"{PB}*x^4 + {QB}*2*{SU} - 1", UL)
        W = cb.bind("WX", ((FP.var("x") ** 3 * (FP.var("v") - FP.var("v1"))).scale(Fraction(-1, 2))
                           - (d.sigma.recontext(FP) - FP.var("lam") ** 3).shift("x", -1)))
        cb.claim("A1: x*w - lam^3 = -(x^4*(v - v1) + 2*sigma)/2", "zero",
                 f"x*{W} - lam^3 + (x^4*(v - v1) + 2*{S})/2", FP)
    if want("coboundary"):
        for side in ("X", "Y"):
            bx, bl = closed_form_candidates(d, side)
            cd = cech_data(d, side, bx, bl)
            BX, BL = cb.bind(f"bx{side}", bx), cb.bind(f"bl{side}", bl)
            C, Sh = cb.bind(f"coc{side}", cd.cocycle.recontext(OV)), cb.bind(f"shf{side}", cd.shift.recontext(OV))
            xo, lam, v = OV.vars()
            s_ov = cd.shift.recontext(OV)
            tx = cb.hom(f"tx{side}", RingHom(CX, OV, {"x": xo, "t": lam ** 2, "v": v}))
            t1 = cb.hom(f"t1{side}", RingHom(CL, OV, {"x": xo, "lam": lam, "v": v - xo ** -4 * s_ov}))
            t0 = cb.hom(f"t0{side}", RingHom(CL, OV, {"x": xo, "lam": lam, "v": v}))
            t2 = cb.hom(f"t2{side}", RingHom(CL, OV, {"x": xo, "lam": -lam, "v": v + (xo ** -4 * s_ov).scale(2)}))
            cb.claim(f"{side}-side: first coboundary equation", "zero",
                     f"{t1}({BL}) - {tx}({BX}) - x^-4*{C}", OV)
            cb.claim(f"{side}-side: second coboundary equation", "zero",
                     f"{t0}({BL}) - {t2}({BL}) - 2*x^-4*{C}", OV)
            cb.claim(f"{side}-side: gluing shift is x^-4 times the shift polynomial", "zero",
                     f"{t1}(v) - v + x^-4*{Sh}", OV)


RUNNERS: dict[str, Callable] = {
    "classify": _classify,
    "cylinder-iso": _cylinder_iso,
    "analytic-jet": _analytic_jet,
    "equ-crit": _equ_crit,
    "stable-equiv": _stable_equiv,
    "center-iso": _center_iso,
    "section2": _section2,
}


def validate_scenario(scn: Any, index: int = 0) -> dict:
    if not isinstance(scn, dict):
        raise ScenarioError(f"scenario #{index} is not an object")
    sid = scn.get("id")
    if not isinstance(sid, str) or not sid:
        raise ScenarioError(f"scenario #{index} has no id")
    if scn.get("kind") not in KINDS:
        raise ScenarioError(f"scenario {sid!r}: unknown kind {scn.get('kind')!r}")
    params = scn.get("params", {})
    if not isinstance(params, dict):
        raise ScenarioError(f"scenario {sid!r}: params must be an object")
    return {"id": sid, "kind": scn["kind"], "params": params}


def run_scenario(scn: dict, seed: int = 0, jet_order: int = 16, timings: bool = False) -> dict:
    scn = validate_scenario(scn)
    cb = CertBuilder()
    start = time.perf_counter()
    try:
        ok, summary, caveats = RUNNERS[scn["kind"]](scn["params"], cb, {"seed": seed, "jet_order": jet_order})
        verdict = "pass" if ok else "fail"
    except ScenarioError:
        raise
    except (ValueError, ArithmeticError) as exc:
        verdict, summary, caveats = "fail", f"{type(exc).__name__}: {exc}", []
    doc = cb.document()
    report = {
        "id": scn["id"],
        "kind": scn["kind"],
        "params": scn["params"],
        "seed": seed,
        "verdict": verdict,
        "summary": summary,
        "caveats": caveats,
        "engine": f"noncancel {__version__}",
        "certificates": doc,
    }
    if verdict == "pass" and not doc["claims"]:
        report["verdict"] = "fail"
        report["summary"] += " (no certificate recorded)"
    if verdict == "pass":
        bad = [label for label, good, _ in recheck(doc) if not good]
        if bad:
            report["verdict"] = "fail"
            report["summary"] += f" (certificate recheck failed: {bad[0]})"
    if timings:
        report["seconds"] = round(time.perf_counter() - start, 3)
    return report
