import random

import pytest
import sympy

from helpers import from_sympy
from noncancel.autonorm import (BASE, JacobianLND, NormalizationError, TruncAuto, cusp, decompose_gamma,
                                equcrit_normalize, exp_lnd, extract_potential, jet_order, random_equcrit_auto,
                                random_poly_x)

x, z, t = BASE.vars()
xs, zs, ts = sympy.symbols("x z t")


def auto(zt, tt, n):
    return TruncAuto(BASE(zt), BASE(tt), n)


def test_jet_order_examples():
    assert jet_order(TruncAuto.identity(5)) == 5
    assert jet_order(auto("z + 3*x*t^2", "t - 2*x*z", 4)) == 1
    assert jet_order(auto("z + x^2*t", "t", 4)) == 2


def test_jet_order_rejects_non_identity_mod_x():
    with pytest.raises(NormalizationError):
        jet_order(auto("2*z", "t", 3))


def test_extract_potential_examples():
    assert extract_potential(auto("z + 3*x*t^2", "t - 2*x*z", 3), 1) == BASE("t^3 + z^2")
    assert extract_potential(TruncAuto.identity(3), 1) == BASE.zero()
    h = extract_potential(auto("z + x*t", "t + x*z", 3), 1)
    assert h == BASE("1/2*t^2 - 1/2*z^2")
    assert h.diff("t") == BASE("t") and h.diff("z") == -BASE("z")


def test_extract_potential_rejects_divergence():
    with pytest.raises(NormalizationError):
        extract_potential(auto("z + x*z", "t", 3), 1)


def test_decompose_gamma_examples():
    r = cusp()
    assert decompose_gamma(r) == (BASE.one(), BASE.zero())
    assert decompose_gamma((z + t) * r + 5) == (z + t, BASE.const(5))
    with pytest.raises(NormalizationError):
        decompose_gamma(z)


def _oracle_exp(G, n0, n, v):
    """Sum of delta^k(v)/k! with sympy derivatives, truncated at x^n."""
    Gs = sympy.sympify(str(G).replace("^", "**"))
    term, total, k = v, v, 1
    while True:
        term = sympy.expand(xs ** n0 * (sympy.diff(term, zs) * sympy.diff(Gs, ts)
                                        - sympy.diff(term, ts) * sympy.diff(Gs, zs)) / k)
        term = sum(term.coeff(xs, j) * xs ** j for j in range(n))
        if term == 0:
            return total
        total += term
        k += 1


def test_exp_lnd_example():
    G = cusp() + x * (1 + x)
    theta = exp_lnd(JacobianLND(1, G), 3)
    assert theta.z == BASE("z + 3*x*t^2 - 6*x^2*z*t")
    assert theta.t == BASE("t - 2*x*z - 3*x^2*t^2")
    assert theta(G) == G.truncate("x", 3)
    assert theta.z == from_sympy(_oracle_exp(G, 1, 3, zs), BASE)


def test_exp_lnd_constant_potential_is_identity():
    assert exp_lnd(JacobianLND(1, BASE.const(7)), 4) == TruncAuto.identity(4)


def test_exp_lnd_matches_oracle_deeper():
    G = (z - 2 * t) * (cusp() + x * (1 - x))
    theta = exp_lnd(JacobianLND(2, G), 6)
    assert theta.z == from_sympy(_oracle_exp(G, 2, 6, zs), BASE)
    assert theta.t == from_sympy(_oracle_exp(G, 2, 6, ts), BASE)
    assert theta.jacobian() == BASE.one()


def test_normalize_single_exponential():
    p = BASE("1 + x")
    phi = exp_lnd(JacobianLND(1, cusp() + x * p), 4)
    trace = equcrit_normalize(4, p, p, phi)
    assert trace.equal
    assert 1 <= len(trace.steps) <= 3
    assert trace.final is not None and jet_order(trace.final) >= 3


def test_normalize_identity():
    trace = equcrit_normalize(3, BASE("2 - x"), BASE("2 - x"), TruncAuto.identity(3))
    assert trace.equal and not trace.steps


def test_normalize_refuses_different_polynomials():
    trace = equcrit_normalize(3, BASE.one(), BASE("1 + x"), TruncAuto.identity(3))
    assert trace.verdict == "precondition-failed"
    rem = trace.precondition.remainder
    assert rem and rem.variables() == {"x"} and rem.min_degree("x") == 2


def test_normalize_rejects_bad_degree():
    with pytest.raises(NormalizationError):
        equcrit_normalize(3, BASE("1 + x^2"), BASE("1 + x^2"), TruncAuto.identity(3))


@pytest.mark.parametrize("seed", range(12))
def test_random_automorphisms_normalize(seed):
    rng = random.Random(seed)
    n = 3 + seed % 3
    p = random_poly_x(rng, n - 2)
    phi = random_equcrit_auto(rng, n, p)
    assert phi.jacobian() == BASE.one()
    trace = equcrit_normalize(n, p, p, phi)
    assert trace.equal, trace.detail
    assert all(s.matched and s.jac_constant_free for s in trace.steps)
