import random
from fractions import Fraction

import pytest
import sympy

from helpers import to_sympy
from noncancel.geom2 import beta_matrix
from noncancel.linbez import (BezoutError, PolyMatrix, bezout, complete_unimodular, coprime_adjust, det, ext_gcd,
                              inverse_unit_det, is_coprime, solve_linear)
from noncancel.poly import VarCtx

X = VarCtx.make("x")
XL = VarCtx.make("x lam", laurent="lam")


def test_ext_gcd_examples():
    g, s, t = ext_gcd(X("1 + x"), X("1 - x"))
    assert (g, s, t) == (X.one(), X.const(Fraction(1, 2)), X.const(Fraction(1, 2)))
    g, s, t = ext_gcd(X("x^4"), X("3 + x - x^3"))
    assert g == X.one() and s * X("x^4") + t * X("3 + x - x^3") == g
    g, s, t = ext_gcd(X("2*x + 4"), X.zero())
    assert (g, s, t) == (X("x + 2"), X.const(Fraction(1, 2)), X.zero())


def test_ext_gcd_common_factor():
    g, _, _ = ext_gcd(X("(1 + x)*(2 - x)"), X("(1 + x)*x"))
    assert g == X("x + 1")
    assert not is_coprime(X("x^2 - 1"), X("x + 1"))


def test_ext_gcd_agrees_with_sympy():
    rng = random.Random(9)
    xs = sympy.Symbol("x")
    for _ in range(20):
        a = sum((X("x") ** k * rng.randint(-3, 3) for k in range(rng.randint(1, 5))), X.one())
        b = sum((X("x") ** k * rng.randint(-3, 3) for k in range(rng.randint(1, 5))), X("x^6"))
        g, s, t = ext_gcd(a, b)
        expected = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), xs).monic()
        assert sympy.expand(to_sympy(g) - expected.as_expr()) == 0


def test_bezout_over_laurent_coefficients():
    # x^4 and a polynomial whose x-constant term is a unit in lam
    sigma = XL("lam^3 - 1/2*lam^-3*x")
    cert = bezout(XL("x^4"), sigma.scale(2))
    assert cert.verify()
    assert cert.value == XL.one()


def test_bezout_refuses_non_coprime():
    with pytest.raises(BezoutError):
        bezout(X("x^2"), X("x + x^3"))


def test_complete_unimodular_trivial():
    M = complete_unimodular(X.one(), X.one(), 2)
    assert M.rows[2] == (X.zero(), X.zero(), X.one())
    assert det(M) == X.one()


def test_complete_unimodular_cylinder_data():
    g1, g2 = X("1 + 1/2*x - 1/8*x^2"), X("1 + 1/3*x - 1/9*x^2")
    M = complete_unimodular(g1, g2, 3)
    assert M.det() == X.one()
    assert sympy.Matrix([[to_sympy(e) for e in r] for r in M.rows]).det().expand() == 1


def test_complete_unimodular_split():
    M = complete_unimodular(X("1 + x"), X("1 - x"), 2)
    assert M.det() == X.one()
    assert M[0, 0] == X("1 + x") and M[1, 1] == X("1 - x") and M[0, 2] == X("x^2")


def test_complete_unimodular_needs_coprime_inputs():
    with pytest.raises(BezoutError):
        complete_unimodular(X("1 + x"), X("(1 + x)*(1 - x)"), 2)


def test_coprime_adjust_examples():
    assert coprime_adjust(X("1 + x"), X("1 - x"), 2) == X("1 - x")
    assert coprime_adjust(X("1 + x"), X("1 + x"), 2) == X("1 + x + x^2")
    assert coprime_adjust(X("(1 + x)^2"), X("1 + x"), 2) == X("1 + x + x^2")


def test_gl2_matrix_and_inverse():
    M = beta_matrix(Fraction(-1, 3))
    assert M.det() == M.ctx.one()
    inv = inverse_unit_det(M)
    assert M @ inv == PolyMatrix.identity(2, M.ctx)


def test_small_matrices():
    I3 = PolyMatrix.identity(3, X)
    assert det(I3) == X.one() and inverse_unit_det(I3) == I3
    D = PolyMatrix.of([[X.const(2), X.zero()], [X.zero(), X.const(Fraction(1, 2))]])
    assert det(D) == X.one()
    with pytest.raises(BezoutError):
        inverse_unit_det(PolyMatrix.of([[X("x"), X.zero()], [X.zero(), X.one()]]))


def test_solve_linear():
    assert solve_linear([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    with pytest.raises(BezoutError):
        solve_linear([[1, 1], [2, 2]], [1, 2])


@pytest.mark.parametrize("seed", range(30))
def test_unimodular_completion_random(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    g1 = X.one() + sum((X("x") ** k * Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                        for k in range(1, rng.randint(1, 5))), X.zero())
    g20 = X.one() + sum((X("x") ** k * rng.randint(-3, 3) for k in range(1, rng.randint(1, 5))), X.zero())
    g2 = coprime_adjust(g1, g20, n)
    assert (g2 - g20).truncate("x", n) == X.zero()
    M = complete_unimodular(g1, g2, n)
    assert M.det() == X.one()
    # independent determinant
    assert sympy.Matrix([[to_sympy(e) for e in r] for r in M.rows]).det().expand() == 1
    inv = inverse_unit_det(M)
    assert M @ inv == PolyMatrix.identity(3, X)
