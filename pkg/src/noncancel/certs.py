"""Re-checkable certificates.

A certificate is plain data: variable contexts, named polynomial bindings,
named ring homomorphisms (images as text) and a list of claims.  Each claim
is an expression in the polynomial grammar plus a claim kind:

``zero``      the expression expands to 0
``nonzero``   the expression is not 0
``zero_mod``  every term has ``var``-degree >= ``order``
``deg_lt``    the ``var``-degree is below ``order``

Rechecking parses and expands; nothing from the constructions is reused.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .modification import VarietyEq
from .poly import MPoly, RingHom, VarCtx, compose_hom
from .textio import evaluate

CLAIM_KINDS = ("zero", "nonzero", "zero_mod", "deg_lt")


class CertError(ValueError):
    pass


@dataclass
class CertBuilder:
    """Collects contexts, bindings, homs and claims into one certificate document."""

    contexts: dict[str, dict] = field(default_factory=dict)
    bindings: dict[str, dict] = field(default_factory=dict)
    homs: dict[str, dict] = field(default_factory=dict)
    claims: list[dict] = field(default_factory=list)
    _ctx_names: dict = field(default_factory=dict)

    def ctx(self, ctx: VarCtx) -> str:
        key = repr(ctx.to_spec())
        if key not in self._ctx_names:
            name = f"C{len(self._ctx_names)}"
            self._ctx_names[key] = name
            self.contexts[name] = ctx.to_spec()
        return self._ctx_names[key]

    def _fresh(self, base: str, taken: dict) -> str:
        if base not in taken:
            return base
        k = 2
        while f"{base}{k}" in taken:
            k += 1
        return f"{base}{k}"

    def bind(self, name: str, P: MPoly) -> str:
        if name in P.ctx.names or name in P.ctx.ring.gens:
            raise CertError(f"binding name {name!r} clashes with a variable")
        name = self._fresh(name, {**self.bindings, **self.homs})
        self.bindings[name] = {"ctx": self.ctx(P.ctx), "value": str(P)}
        return name

    def hom(self, name: str, h: RingHom) -> str:
        name = self._fresh(name, {**self.bindings, **self.homs})
        self.homs[name] = {"source": self.ctx(h.source), "target": self.ctx(h.target),
                           "images": {v: str(h.image(v)) for v in h.source.names}}
        return name

    def claim(self, label: str, kind: str, expr: str, ctx: VarCtx, var: str | None = None,
              order: int | None = None) -> None:
        if kind not in CLAIM_KINDS:
            raise CertError(f"unknown claim kind {kind!r}")
        c: dict[str, Any] = {"label": label, "kind": kind, "ctx": self.ctx(ctx), "expr": expr}
        if kind in ("zero_mod", "deg_lt"):
            c["var"], c["order"] = var, order
        self.claims.append(c)

    def document(self) -> dict:
        return {"contexts": self.contexts, "bindings": self.bindings, "homs": self.homs, "claims": self.claims}

    # -- common certificate shapes ---------------------------------------------------

    def variety_map(self, tag: str, h: RingHom, V_src: VarietyEq, V_tgt: VarietyEq,
                    inverse: RingHom | None = None, xvar: str = "x") -> None:
        """``h(E_tgt) = u*E_src`` with ``u(0)`` nonzero, plus both round trips modulo the equations."""
        E_src, E_tgt = self.bind(f"E{tag}s", V_src.eq), self.bind(f"E{tag}t", V_tgt.eq)
        hn = self.hom(f"h{tag}", h)
        u, rem = V_src.reduce(h(V_tgt.eq))
        if rem:
            raise CertError(f"{tag}: pullback does not reduce to zero")
        un = self.bind(f"u{tag}", u)
        src = V_src.ambient
        self.claim(f"{tag}: pullback of the target equation is u times the source equation",
                   "zero", f"{hn}({E_tgt}) - {un}*{E_src}", src)
        if xvar in src.names:
            self.claim(f"{tag}: u is nonzero at {xvar} = 0", "nonzero", f"coeff({un}, {xvar}, 0)", src)
        if inverse is None:
            return
        gn = self.hom(f"g{tag}", inverse)
        for V, outer, inner in ((V_src, hn, gn), (V_tgt, gn, hn)):
            trip = compose_hom(h, inverse) if V is V_src else compose_hom(inverse, h)
            E = E_src if V is V_src else E_tgt
            for v in V.ambient.names:
                q, r = V.reduce(trip.image(v) - V.ambient.var(v))
                if r:
                    raise CertError(f"{tag}: round trip fails on {v}")
                qn = self.bind(f"q{tag}{v}", q)
                self.claim(f"{tag}: round trip on {v} is the identity modulo the equation", "zero",
                           f"{outer}({inner}({v})) - {v} - {qn}*{E}", V.ambient)


def _contexts(doc: dict) -> dict[str, VarCtx]:
    return {name: VarCtx.from_spec(spec) for name, spec in doc.get("contexts", {}).items()}


def recheck(doc: dict) -> list[tuple[str, bool, str]]:
    """Re-verify every claim of a certificate document; returns ``(label, ok, message)``."""
    ctxs = _contexts(doc)
    env: dict[str, object] = {}

    def ctx_of(name):
        if name not in ctxs:
            raise CertError(f"unknown context {name!r}")
        return ctxs[name]

    out = []
    for name, b in doc.get("bindings", {}).items():
        try:
            env[name] = evaluate(b["value"], ctx_of(b["ctx"]))
        except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
            out.append((f"binding {name}", False, f"{type(exc).__name__}: {exc}"))
    for name, h in doc.get("homs", {}).items():
        try:
            src, tgt = ctx_of(h["source"]), ctx_of(h["target"])
            images = {v: evaluate(t, tgt) for v, t in h["images"].items()}
            env[name] = RingHom(src, tgt, images)
        except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
            out.append((f"hom {name}", False, f"{type(exc).__name__}: {exc}"))
    for c in doc.get("claims", []):
        label = c.get("label", "?")
        try:
            ctx = ctx_of(c["ctx"])
            val = evaluate(c["expr"], ctx, env)
            kind = c["kind"]
            if kind == "zero":
                ok, msg = not val, "" if not val else f"expands to {val}"
            elif kind == "nonzero":
                ok, msg = bool(val), "" if val else "expands to 0"
            elif kind == "zero_mod":
                low = val.truncate(c["var"], int(c["order"])) if val else val
                ok, msg = not low, "" if not low else f"nonzero below {c['var']}^{c['order']}: {low}"
            elif kind == "deg_lt":
                d = val.degree(c["var"]) if val else -1
                ok, msg = d < int(c["order"]), f"degree {d} in {c['var']}"
            else:
                ok, msg = False, f"unknown claim kind {kind!r}"
        except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
            ok, msg = False, f"{type(exc).__name__}: {exc}"
        out.append((label, ok, msg))
    return out

