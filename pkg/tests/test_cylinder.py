from fractions import Fraction

import pytest

from noncancel.cylinder import (AMB4, AMB5, BASE3, X, CylinderError, analytic_jet_check, build_cylinder_iso,
                                build_w_iso, compose_cylinders, embedded_center_iso, normalize_unit, psi_comorphism,
                                stable_equiv_report, stable_equivalence_auto, v_np, w_np)
from noncancel.modification import verify_variety_map
from noncancel.poly import RingHom, compose_hom
from noncancel.series import exp_xmul, log_unit


def test_w_iso_trivial():
    pair = build_w_iso(3, X.one())
    assert pair.forward == RingHom.identity(AMB4) and pair.check.passed


def test_w_iso_bezout_pair():
    pair = build_w_iso(2, X("1 + x"))
    assert pair.forward.image("y") == AMB4("(1 + x)*y")
    # (1 - x)(1 + x) + x^2 = 1
    assert pair.backward.image("y") == AMB4("(1 - x)*y - (z^2 + t^3 + x)")
    assert pair.check.passed


def test_w_iso_constant():
    pair = build_w_iso(3, X.const(2))
    assert pair.forward.image("y") == AMB4("2*y")
    assert pair.backward.image("y") == AMB4("1/2*y")


def test_w_equation_needs_pseudo_division():
    W = w_np(3, X("1 + x"))
    assert not W.monic
    assert W.reduce(AMB4("(y - z)") * W.eq) == (AMB4("y - z"), AMB4.zero())


def test_bundle_components_n3():
    b = build_cylinder_iso(3, X("1 + x"))
    assert b.g1 == X("1 + 1/2*x - 1/8*x^2")
    assert b.g2 == X("1 + 1/3*x - 1/9*x^2")
    assert b.matrix.det() == b.matrix.ctx.one()
    assert b.passed and b.check.passed


def test_bundle_series_data():
    b = build_cylinder_iso(3, X("1 + x"))
    # g1^2 = g2^3 = exp(x f) = p mod x^n
    assert (b.g1 ** 2).truncate("x", 3) == X("1 + x")
    assert (b.g2 ** 3).truncate("x", 3) == X("1 + x")
    assert exp_xmul(log_unit(X("1 + x"), 3), 3).body == X("1 + x")


def test_bundle_trivial():
    b = build_cylinder_iso(3, X.one())
    assert b.passed
    assert b.g1 == X.one() and b.g2 == X.one()


def test_bundle_with_unit_normalization():
    b = build_cylinder_iso(3, X("2 + x"))
    assert b.p_normalized == X("1 + 1/4*x")
    assert b.normalization is not None and b.passed


def test_normalize_unit_is_an_isomorphism():
    p_tilde, pair = normalize_unit(3, X("3 - x + x^2"))
    assert p_tilde.constant_coef() == 1
    assert pair.check.passed


def test_composite_of_two_bundles():
    b0, b1 = build_cylinder_iso(3, X("1 + x")), build_cylinder_iso(3, X("1 + x + x^2"))
    comp = compose_cylinders(b0, b1)
    assert comp.check.passed
    again = verify_variety_map(comp.hom, comp.source, comp.target, comp.inverse)
    assert again.passed


def test_jet_examples():
    j = analytic_jet_check(4, X("1 + x + x^2"), 12)
    assert j.passed and not j.residual
    assert analytic_jet_check(3, X.one(), 9).passed


@pytest.mark.parametrize("N", [5, 8, 12])
def test_corrupted_jet_residual(N):
    n, p = 4, X("1 + x + x^2")
    j = analytic_jet_check(n, p, N, corrupt=True)
    assert not j.passed
    E = exp_xmul(log_unit(p, n), N).body
    expected = ((E - p).recontext(AMB4) * AMB4("z^2 + t^3")).truncate("x", N)
    assert j.residual == expected


def test_corruption_invisible_at_order_n():
    # E - p = O(x^n), so dropping the correction changes nothing mod x^n
    assert analytic_jet_check(4, X("1 + x + x^2"), 4, corrupt=True).passed


def test_jet_preconditions():
    with pytest.raises(CylinderError):
        analytic_jet_check(4, X("2 + x"), 8)
    with pytest.raises(CylinderError):
        analytic_jet_check(4, X("1 + x"), 3)


def test_psi_truncation_consistent():
    p = X("1 + x")
    lo, hi = psi_comorphism(3, p, 6), psi_comorphism(3, p, 9)
    for v in ("z", "t"):
        assert hi.image(v).truncate("x", 6) == lo.image(v)
    # the y-correction is divided by x^n, so it is only known mod x^(N - n)
    assert hi.image("y").truncate("x", 3) == lo.image("y").truncate("x", 3)


def test_stable_equivalence_counterexample():
    rep = stable_equiv_report(4, X("1 + x"))
    assert rep.passed and rep.counterexample and not rep.verdict.iso
    A, B, PV, PW = stable_equivalence_auto(4, X("1 + x"))
    assert A(PV) == PW
    assert compose_hom(A, B) == RingHom.identity(AMB5) == compose_hom(B, A)


def test_stable_equivalence_not_counterexample_for_n2():
    rep = stable_equiv_report(2, X("1 + x"))
    assert rep.passed and not rep.counterexample and rep.verdict.iso


def test_stable_equivalence_trivial():
    rep = stable_equiv_report(3, X.one())
    assert rep.passed and rep.automorphism == RingHom.identity(AMB5)


def test_v_and_w_equations():
    assert v_np(3, X("1 + x")).eq == AMB4("x^3*y + z^2 + t^3 + x + x^2")
    assert w_np(3, X("1 + x")).eq == AMB4("x^3*y + (1 + x)*(z^2 + t^3 + x)")


def test_center_iso_trivial():
    c = embedded_center_iso(3, X.one())
    assert c.passed and c.xi == RingHom.identity(c.xi.source)


def test_center_iso_rational():
    c = embedded_center_iso(3, X("1 + x"))
    assert c.q == X("1 - x + x^2")
    assert c.passed
    B = c.xi.source
    lhs = c.xi(B("z^2 + t^3 + x"), "x", 3)
    assert lhs == c.cofactor.mul_trunc(B("z^2 + t^3 + x*(1 + x)"), "x", 3)


def test_center_iso_needs_cube_root():
    c = embedded_center_iso(2, X.const(4))
    assert c.q == X.const(Fraction(1, 4))
    ring = c.xi.source.ring
    assert "c3" in ring.gens and "c2" not in ring.gens
    g1 = c.xi.image("z").coeff("z", 1)
    assert g1 == c.xi.source.const(Fraction(1, 2))
    assert c.passed


def test_center_iso_base_context():
    assert embedded_center_iso(2, X("2 + x")).xi.source.names == BASE3.names
