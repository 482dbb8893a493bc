"""Symbolic log-polynomial ring: operator algebra and exact integration."""

import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from hadene.coeffs import EC_ONE, ExactCoeff, GaussianRational, log_symbol
from hadene.logpoly import (
    BiLogPoly,
    BranchPoint,
    LogLaurentPoly,
    ZeroArgument,
    integrate_u,
    lp_eval,
)

TWO_PI_I = ExactCoeff.two_pi_i()


def gr(p, q=1):
    return GaussianRational.of(Fraction(p, q))


def random_poly(rng, zmin=-3, zmax=4, max_log=3, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = (rng.randint(zmin, zmax), rng.randint(0, max_log))
        coeff = ExactCoeff.from_gaussian(
            GaussianRational.of(Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
        )
        if rng.random() < 0.3:
            coeff = coeff * TWO_PI_I
        terms[key] = terms.get(key, ExactCoeff.zero()) + coeff
    return LogLaurentPoly(terms)


# --- ring operations ----------------------------------------------------------


def test_log_squared_from_product():
    logz = LogLaurentPoly.log_z()
    assert logz * logz == LogLaurentPoly.term(0, 2)


def test_laurent_inverse_power_cancels():
    assert LogLaurentPoly.z() * LogLaurentPoly.term(-1, 0) == LogLaurentPoly.constant(1)


def test_distributivity_on_random_triples():
    rng = random.Random(11)
    for _ in range(50):
        a, b, c = (random_poly(rng) for _ in range(3))
        assert a * (b + c) == a * b + a * c


# --- derivative ----------------------------------------------------------------


def test_derivative_of_log_squared():
    p = LogLaurentPoly.term(0, 2)
    assert p.derivative() == LogLaurentPoly.term(-1, 1, 2)


def test_derivative_of_z():
    assert LogLaurentPoly.z().derivative() == LogLaurentPoly.constant(1)


def test_antiderivative_differentiates_back():
    rng = random.Random(12)
    for _ in range(20):
        k = rng.randint(-3, 3)
        l = rng.randint(0, 3)
        coeff = ExactCoeff.from_rational(Fraction(rng.randint(1, 5), rng.randint(1, 3)))
        mono = BiLogPoly({(k, l, rng.randint(0, 2), rng.randint(0, 1)): coeff})
        assert mono.antiderivative_u().derivative_u() == mono


# --- monodromy operator --------------------------------------------------------


def test_monodromy_of_log_is_the_period():
    assert LogLaurentPoly.log_z().monodromy_at_zero() == LogLaurentPoly.constant(TWO_PI_I)


def test_monodromy_of_single_valued_power_vanishes():
    for m in (-2, 0, 1, 5):
        assert LogLaurentPoly.term(m, 0).monodromy_at_zero().is_zero()


def test_monodromy_of_log_squared_binomial():
    # (log z + 2pii)^2 - (log z)^2 = 2*(2pii)*log z + (2pii)^2
    p = LogLaurentPoly.term(0, 2)
    expected = LogLaurentPoly({(0, 1): TWO_PI_I * 2, (0, 0): TWO_PI_I * TWO_PI_I})
    assert p.monodromy_at_zero() == expected


def test_sigma_shifts_log():
    p = LogLaurentPoly.log_z()
    assert p.sigma_power(1) == p + LogLaurentPoly.constant(TWO_PI_I)


def test_sigma_fixes_constants():
    c = LogLaurentPoly.constant(Fraction(7, 3))
    assert c.sigma_power(3) == c


def test_double_loop_two_ways():
    p = LogLaurentPoly.term(0, 2)
    d1 = p.monodromy_at_zero()
    d2 = d1.monodromy_at_zero()
    lhs = p.sigma_power(2) - p
    rhs = 2 * d1 + d2
    assert lhs == rhs


def test_winding_binomial_identity():
    rng = random.Random(13)
    for _ in range(200):
        p = random_poly(rng)
        deltas = [p]
        for _ in range(6):
            deltas.append(deltas[-1].monodromy_at_zero())
        for n in range(1, 7):
            lhs = p.sigma_power(n) - p
            rhs = LogLaurentPoly.zero()
            for k in range(1, n + 1):
                rhs = rhs + math.comb(n, k) * deltas[k]
            assert lhs == rhs


def test_leibniz_rule_for_monodromy():
    rng = random.Random(14)
    for _ in range(200):
        p, q = random_poly(rng), random_poly(rng)
        dp, dq = p.monodromy_at_zero(), q.monodromy_at_zero()
        assert (p * q).monodromy_at_zero() == dp * q + p * dq + dp * dq


def test_monodromy_commutes_with_derivation():
    rng = random.Random(15)
    for _ in range(100):
        p = random_poly(rng)
        assert p.derivative().monodromy_at_zero() == p.monodromy_at_zero().derivative()


# --- substitution z -> z/u -----------------------------------------------------


def test_substitute_log():
    bil = BiLogPoly.from_poly_at_z_over_u(LogLaurentPoly.log_z())
    assert bil == BiLogPoly({(0, 0, 0, 1): EC_ONE, (0, 1, 0, 0): -EC_ONE})


def test_substitute_z():
    bil = BiLogPoly.from_poly_at_z_over_u(LogLaurentPoly.z())
    assert bil == BiLogPoly({(-1, 0, 1, 0): EC_ONE})


def test_substitute_z_log_z():
    bil = BiLogPoly.from_poly_at_z_over_u(LogLaurentPoly.term(1, 1))
    assert bil == BiLogPoly({(-1, 0, 1, 1): EC_ONE, (-1, 1, 1, 0): -EC_ONE})


# --- definite integration -------------------------------------------------------


def test_integral_of_du_over_u_from_one_to_z():
    p = BiLogPoly({(-1, 0, 0, 0): EC_ONE})
    assert integrate_u(p, gr(1), gr(1)) == LogLaurentPoly.log_z()


def test_elementary_antiderivative():
    a, b = Fraction(3, 2), Fraction(-2, 5)
    p = BiLogPoly({(0, 0, 0, 0): ExactCoeff.from_rational(a * b)})
    expected = LogLaurentPoly({(1, 0): ExactCoeff.from_rational(a * b), (0, 0): ExactCoeff.from_rational(-a * b)})
    assert integrate_u(p, gr(1), gr(1)) == expected


def test_power_of_log_integral():
    for k in range(1, 6):
        p = BiLogPoly({(-1, k - 1, 0, 0): EC_ONE})
        assert integrate_u(p, gr(1), gr(1)) == LogLaurentPoly.term(0, k, Fraction(1, k))


def test_integration_closure_of_symbols():
    # result coefficients stay inside the subring generated by the inputs,
    # the endpoints, their logs, and rationals
    rng = random.Random(16)
    allowed_extra = {log_symbol(2), log_symbol(3)}
    for _ in range(50):
        p = BiLogPoly({
            (rng.randint(-3, 3), rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)):
                ExactCoeff.from_rational(Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3)))
        })
        result = integrate_u(p, gr(2), gr(3))
        extra = {s for k, c in result.terms.items() for s in c.symbols()}
        assert extra <= allowed_extra


def test_integrate_u_matches_numeric_quadrature():
    # independent oracle: 200-node Gauss-Legendre along the straight segment
    # from alpha to z/beta with principal logs (the path stays in Re > 0)
    rng = random.Random(17)
    nodes, weights = np.polynomial.legendre.leggauss(200)
    z = 1.3 + 0.7j
    alpha, beta = gr(1), gr(2)
    for _ in range(25):
        k = rng.randint(-3, 3)
        l = rng.randint(0, 3)
        zm = rng.randint(0, 2)
        zl = rng.randint(0, 1)
        coeff = Fraction(rng.randint(-4, 4) or 2, rng.randint(1, 3))
        p = BiLogPoly({(k, l, zm, zl): ExactCoeff.from_rational(coeff)})
        symbolic = integrate_u(p, alpha, beta)
        expected = lp_eval(symbolic, BranchPoint(z))

        a = complex(alpha)
        b = z / complex(beta)
        mid, half = (a + b) / 2, (b - a) / 2
        total = 0j
        for t, w in zip(nodes, weights):
            u = mid + half * t
            total += w * (u ** k) * (cmath.log(u) ** l)
        total *= half * float(coeff) * (z ** zm) * (cmath.log(z) ** zl)
        assert abs(total - expected) < 1e-10 * (1 + abs(expected))


# --- numeric evaluation ---------------------------------------------------------


def test_lp_eval_log_at_e():
    value = lp_eval(LogLaurentPoly.log_z(), BranchPoint(math.e, 0))
    assert abs(value - 1.0) < 1e-14


def test_lp_eval_log_on_next_sheet():
    value = lp_eval(LogLaurentPoly.log_z(), BranchPoint(1.0, 1))
    assert abs(value - 2j * math.pi) < 1e-14


def test_lp_eval_polylog_monodromy_closed_form():
    p = LogLaurentPoly.term(0, 1, 1) * (-TWO_PI_I)
    value = lp_eval(p, BranchPoint(0.9, 0))
    assert abs(value - (-2j * math.pi) * math.log(0.9)) < 1e-12
    assert abs(value - 0.66200j) < 1e-4


def test_lp_eval_rejects_zero():
    with pytest.raises(ZeroArgument):
        lp_eval(LogLaurentPoly.log_z(), BranchPoint(0.0, 0))
