import random
from fractions import Fraction

import pytest
import sympy

from helpers import from_sympy
from noncancel.poly import VarCtx
from noncancel.series import SeriesError, TruncSeries, exp_xmul, inv_series, kth_root, log_unit

X = VarCtx.make("x")
XL = VarCtx.make("x lam", laurent="lam")
xs = sympy.Symbol("x")


def S(text, N, ctx=X):
    return TruncSeries(ctx(text), N)


def oracle(expr, N, ctx=X):
    """Taylor polynomial of ``expr`` through ``x^(N-1)`` computed by sympy."""
    return from_sympy(sympy.series(expr, xs, 0, N).removeO(), ctx)


@pytest.mark.parametrize("text, N, expected", [("1 + x", 3, "1 - x + x^2"), ("1", 5, "1"), ("2", 2, "1/2")])
def test_inv_series_examples(text, N, expected):
    inv = inv_series(S(text, N))
    assert inv.body == X(expected)
    assert (inv * S(text, N)).body == X.one()


def test_inv_series_needs_unit():
    with pytest.raises(SeriesError):
        inv_series(S("x + x^2", 4))


def test_exp_examples():
    assert exp_xmul(X.one(), 4).body == X("1 + x + 1/2*x^2 + 1/6*x^3")
    assert exp_xmul(X.zero(), 6).body == X.one()
    assert exp_xmul(X("1 - 1/2*x + 1/3*x^2"), 4).body == X("1 + x")
    assert exp_xmul(X.one(), 8).body == oracle(sympy.exp(xs), 8)


def test_log_examples():
    assert log_unit(X("1 + x"), 4).body == X("1 - 1/2*x + 1/3*x^2")
    assert log_unit(X.one(), 5).body == X.zero()
    assert log_unit(X("1 + x + 1/2*x^2 + 1/6*x^3"), 4).body == X.one()


def test_log_matches_sympy():
    p = X("3 + x - 2*x^2 + 5*x^4")
    f = log_unit(p.scale(Fraction(1, 3)), 7)
    expected = sympy.expand((sympy.log(1 + sympy.Rational(1, 3) * (xs - 2 * xs ** 2 + 5 * xs ** 4))) / xs)
    assert f.body == oracle(expected, 6)


def test_kth_root_examples():
    assert kth_root(S("1 + x", 3), 2, 1).body == X("1 + 1/2*x - 1/8*x^2")
    assert kth_root(S("1", 7), 3, 1).body == X.one()
    assert kth_root(S("1 + x", 6), 3, 1).body == oracle((1 + xs) ** sympy.Rational(1, 3), 6)


def test_sigma_square_root():
    P = TruncSeries(XL("lam^6 - x - x^2"), 4)
    s = kth_root(P, 2, XL("lam^3"))
    expected = XL("lam^3 - 1/2*lam^-3*x - (1/2*lam^-3 + 1/8*lam^-9)*x^2 - (1/4*lam^-9 + 1/16*lam^-15)*x^3")
    assert s.body == expected
    assert s.coeff(1) == XL("-1/2*lam^-3")
    assert (s * s).body == P.body


def test_kth_root_rejects_wrong_branch():
    with pytest.raises(SeriesError):
        kth_root(S("1 + x", 4), 2, 2)


def test_precision_cannot_increase():
    with pytest.raises(SeriesError):
        S("1 + x", 3).with_order(5)


# -- seeded round trips --------------------------------------------------------------


def _unit_series(rng: random.Random, N: int, c0=None) -> TruncSeries:
    coefs = [c0 if c0 is not None else Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2, 3]))]
    coefs += [Fraction(rng.randint(-4, 4), rng.randint(1, 4)) for _ in range(N - 1)]
    return TruncSeries(sum((X("x") ** k * c for k, c in enumerate(coefs)), X.zero()), N)


@pytest.mark.parametrize("seed", range(50))
def test_root_power_round_trip(seed):
    rng = random.Random(seed)
    N, k = rng.randint(2, 8), rng.randint(2, 5)
    c0 = Fraction(rng.choice([1, 2, 3]), rng.choice([1, 2]))
    P = _unit_series(rng, N, c0 ** k)
    root = kth_root(P, k, c0)
    assert (root ** k).body == P.body
    assert root.coeff(0) == X.const(c0)


@pytest.mark.parametrize("seed", range(50))
def test_exp_log_round_trip(seed):
    rng = random.Random(1000 + seed)
    N = rng.randint(2, 9)
    p = _unit_series(rng, N, Fraction(1))
    f = log_unit(p.body, N)
    assert exp_xmul(f, N).body == p.body
    g = _unit_series(rng, N - 1)
    assert log_unit(exp_xmul(g, N).body, N).body == g.body


@pytest.mark.parametrize("seed", range(50))
def test_inverse_round_trip(seed):
    rng = random.Random(2000 + seed)
    P = _unit_series(rng, rng.randint(1, 10))
    inv = inv_series(P)
    assert (P * inv).body == X.one()
    assert inv_series(inv).body == P.body
