import random
from fractions import Fraction

import pytest

from noncancel.modification import (IdealXN, ModificationError, VarietyEq, hypersurface, ideal_equal, ideal_member,
                                    lift_modification_auto, subring_rescale_equal, verify_variety_map)
from noncancel.poly import RingHom, VarCtx

B = VarCtx.make("x z t")
A = VarCtx.make("x y z t")
R = "z^2 + t^3"


def I(n, text):
    return IdealXN(n, B(text))


def test_member_unit_multiple():
    F = B(f"{R} + x")
    m = ideal_member(B("1 + x - 2*x^3") * F, IdealXN(4, F))
    assert m.is_member and m.verify()


def test_member_power_of_x():
    m = ideal_member(B("x^3"), I(3, f"{R} + x"))
    assert m.is_member and m.Q == B.one() and not m.u


def test_non_member_remainder():
    m = ideal_member(B("z"), I(2, f"{R} + x"))
    assert not m.is_member and m.remainder == B("z")
    assert not m.verify()


def test_ideal_equal_examples():
    assert ideal_equal(I(4, f"{R} + x"), I(4, f"(1 + x)*({R} + x)")).equal
    same = I(3, f"{R} + x")
    assert ideal_equal(same, same).equal
    cert = ideal_equal(I(3, f"{R} + x"), I(3, f"{R} + x + x^2"))
    assert not cert.equal
    assert cert.forward.remainder == B("x^2")


def test_ideal_requires_unit_leading_coefficient():
    with pytest.raises(ModificationError):
        IdealXN(2, B("x*z^2 + x*t"))


@pytest.mark.parametrize("p, n, a, b", [("1", 2, "1", "0"), ("1 + x", 2, "1 - x", "1"), ("2", 3, "1/2", "0")])
def test_subring_rescale_equal(p, n, a, b):
    cert = subring_rescale_equal(n, B(f"{R} + x"), B(p))
    assert cert.cofactors == (B(a), B(b))
    assert cert.verify()


def test_subring_rescale_needs_unit():
    with pytest.raises(ModificationError):
        subring_rescale_equal(2, B(f"{R} + x"), B("x + x^2"))


@pytest.mark.parametrize("seed", range(30))
def test_ideal_equal_unit_rescaling_random(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    x = B.var("x")
    q = sum((x ** k * rng.randint(-3, 3) for k in range(n)), B.const(rng.choice([-2, -1, 1, 2])))
    F = B(R) + x * q
    p = B.const(Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.choice([1, 2, 3])))
    p = p + sum((x ** k * rng.randint(-4, 4) for k in range(1, rng.randint(1, 6))), B.zero())
    cert = ideal_equal(IdealXN(n, F), IdealXN(n, p * F))
    assert cert.equal
    assert cert.forward.verify() and cert.backward.verify()
    bz = subring_rescale_equal(n, F, p)
    a, b = bz.cofactors
    assert a * p + b * x ** n == B.one()
    assert a * (p * F) + b * (x ** n * F) == F


def test_pseudo_division_reduction():
    # x^3*y + (1 + x)*(r + x): no variable with a unit leading coefficient
    V = VarietyEq(A, A(f"x^3*y + (1 + x)*({R} + x)"))
    assert not V.monic
    P = A("(2*y - z + x^2)") * V.eq
    u, rem = V.reduce(P)
    assert not rem and u == A("2*y - z + x^2")
    _, rem = V.reduce(A("y"))
    assert rem


def test_lift_identity():
    F = B(f"{R} + x")
    Ic = IdealXN(2, F)
    V = hypersurface(A, 2, F)
    lift = lift_modification_auto(RingHom.identity(B), Ic, Ic, V, V)
    assert lift.hom.image("y") == A("y")


def test_lift_scaling_witness():
    src, tgt = B(f"{R} + 64*x"), B(f"{R} + x")
    phi = RingHom.from_text(B, B, {"z": "1/8*z", "t": "1/4*t"})
    Vs, Vt = hypersurface(A, 2, src), hypersurface(A, 2, tgt)
    lift = lift_modification_auto(phi, IdealXN(2, src), IdealXN(2, tgt), Vs, Vt)
    assert lift.hom.image("y") == A("1/64*y")
    assert lift.hom(Vt.eq) == Vs.eq.scale(Fraction(1, 64))


def test_lift_rejects_map_missing_the_center():
    src, tgt = B(f"{R} + x"), B(f"{R} + x + x^2")
    with pytest.raises(ModificationError):
        lift_modification_auto(RingHom.identity(B), IdealXN(3, src), IdealXN(3, tgt),
                               hypersurface(A, 3, src), hypersurface(A, 3, tgt))


def test_verify_coordinate_change_factor():
    X0 = VarietyEq(A, A("x^4*y + z^2 + t^3 + x + x^2"))
    X = VarietyEq(A, A("x^4*z - y^2 - x - x^2 + t^3"))
    h = RingHom.from_text(A, A, {"y": "z", "z": "-y", "t": "-t"})
    h_inv = RingHom.from_text(A, A, {"y": "-z", "z": "y", "t": "-t"})
    check = verify_variety_map(h, X0, X, h_inv)
    assert check.passed and check.unit_factor == A.const(-1)
    assert not verify_variety_map(h, X0, X, h).passed


def test_verify_identity_and_failure():
    V = hypersurface(A, 2, B(f"{R} + x"))
    ok = verify_variety_map(RingHom.identity(A), V, V, RingHom.identity(A))
    assert ok.passed and ok.unit_factor == A.one()
    bad = verify_variety_map(RingHom.from_text(A, A, {"z": "z + 1"}), V, V)
    assert not bad.passed and bad.remainder == A("2*z + 1")
