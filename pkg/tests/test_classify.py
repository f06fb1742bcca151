from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noncancel.classify import (NOT_ISO_CAVEAT, ClassifyError, MultSystem, classify_iso, solve_mult_system,
                                witness_automorphism)
from noncancel.poly import RingHom, VarCtx

X = VarCtx.make("x")


def test_mult_system_examples():
    assert solve_mult_system(MultSystem(((2, 4), (3, 8)))) == (1, 2)
    assert solve_mult_system(MultSystem(((2, 4), (3, -8)))) == (1, -2)
    assert solve_mult_system(MultSystem(((2, 4), (4, 15)))) is None
    assert solve_mult_system(MultSystem(())) == (1, 1)


def test_mult_system_keeps_gcd_exponent():
    g, m = solve_mult_system(MultSystem(((4, 9), (6, 27))))
    assert (g, m) == (2, 3)


def test_mult_system_validation():
    with pytest.raises(ClassifyError):
        MultSystem(((2, 4), (2, 5)))
    with pytest.raises(ClassifyError):
        MultSystem(((2, 0),))


def test_corollary_pair_not_iso():
    v = classify_iso(4, X("1 + x"), X("1 + x + x^2"))
    assert not v.iso and v.caveat == NOT_ISO_CAVEAT


def test_scaled_pair_iso():
    v = classify_iso(4, X("1 + x"), X("3 + 6*x"))
    assert v.iso and v.lam == 2 and v.eps == 3


def test_only_constant_matters_for_n2():
    v = classify_iso(2, X.one(), X.const(7))
    assert v.iso and v.lam == 1 and v.eps == 7


def test_irrational_lambda_is_still_iso():
    v = classify_iso(4, X("1 + x + x^2"), X("1 + x + 2*x^2"))
    assert not v.iso  # lam = 1 from x, lam^2 = 2 contradicts
    v = classify_iso(4, X("1 + x^2"), X("1 + 2*x^2"))
    assert v.iso and (v.g, v.m) == (2, 2) and v.lam is None


def test_classify_input_validation():
    with pytest.raises(ClassifyError):
        classify_iso(4, X("x"), X("1"))
    with pytest.raises(ClassifyError):
        classify_iso(1, X("1"), X("1"))


def test_witness_sixth_root_of_64():
    w = witness_automorphism(2, X.one(), X.const(64), lam=1, eps=64, mu=2)
    A = w.auto.source
    assert w.auto == RingHom.from_text(A, A, {"y": "1/64*y", "z": "1/8*z", "t": "1/4*t"})
    assert w.auto(w.V1.eq) == w.V2.eq.scale(Fraction(1, 64))
    assert w.check.passed


def test_witness_identity():
    p = X("1 + x - x^2")
    w = witness_automorphism(4, p, p, lam=1, eps=1, mu=1)
    assert w.auto == RingHom.identity(w.auto.source)


def test_witness_over_extension():
    v = classify_iso(2, X.one(), X.const(7))
    w = witness_automorphism(2, X.one(), X.const(7), verdict=v)
    assert w.ring.gens == ("mu",)
    assert w.mu ** 6 == w.ring.coerce(7)
    assert w.check.passed


def test_witness_irrational_lambda():
    v = classify_iso(4, X("1 + x^2"), X("1 + 2*x^2"))
    w = witness_automorphism(4, X("1 + x^2"), X("1 + 2*x^2"), verdict=v)
    assert "lam" in w.ring.gens and w.check.passed


def test_witness_rejects_bad_mu():
    with pytest.raises(ClassifyError):
        witness_automorphism(2, X.one(), X.const(64), lam=1, eps=64, mu=3)


nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(bool)


@given(st.integers(2, 5), nonzero, nonzero, st.lists(st.integers(-3, 3), min_size=4, max_size=4))
@settings(max_examples=25, deadline=None)
def test_rescaled_polynomials_are_iso(n, lam, eps, coefs):
    p1 = X.one() + sum((X("x") ** (k + 1) * c for k, c in enumerate(coefs[: n - 2])), X.zero())
    p2 = RingHom(X, X, {"x": X("x").scale(lam)})(p1).scale(eps)
    v = classify_iso(n, p1, p2)
    assert v.iso and v.eps == eps
    w = witness_automorphism(n, p1, p2, verdict=v)
    assert w.check.passed
