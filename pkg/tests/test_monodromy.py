"""Product monodromy formulas: polylog ladder, residues, divisors, symmetry."""

import random
from fractions import Fraction

import pytest

from hadene.coeffs import ExactCoeff, GaussianRational
from hadene.logpoly import LogLaurentPoly
from hadene.monodromy import (
    Divisor,
    FunctionSpec,
    GermNotTotallyHolomorphic,
    GermPart,
    MonodromyResult,
    Singularity,
    divisor_ene,
    ene_monodromy_general,
    ene_monodromy_total,
    ene_symmetry_check,
    hadamard_monodromy_general,
    hadamard_monodromy_total,
    koebe_polar_function_spec,
    log_ladder_monodromy,
    polylog_function_spec,
    polylog_monodromy,
    product_set,
)

TWO_PI_I = ExactCoeff.two_pi_i()


def gr(p, q=1):
    return GaussianRational.of(Fraction(p, q))


def spec_with(name, location, monodromy, germ=None):
    germ = germ or GermPart.totally_holomorphic()
    return FunctionSpec.of(name, [Singularity(gr(*location) if isinstance(location, tuple) else gr(location), monodromy, germ)])


def random_holomorphic_poly(rng, max_deg=3, max_log=2):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        key = (rng.randint(0, max_deg), rng.randint(0, max_log))
        coeff = ExactCoeff.from_rational(Fraction(rng.randint(-4, 4) or 1, rng.randint(1, 3)))
        if rng.random() < 0.4:
            coeff = coeff * TWO_PI_I
        terms[key] = terms.get(key, ExactCoeff.zero()) + coeff
    return LogLaurentPoly(terms)


def minus_z_dz(p: LogLaurentPoly) -> LogLaurentPoly:
    return -(LogLaurentPoly.z() * p.derivative())


# --- product_set -----------------------------------------------------------------


def test_product_set_groups_with_multiplicity():
    f = FunctionSpec.of("f", [Singularity(gr(2), LogLaurentPoly.zero()),
                              Singularity(gr(3), LogLaurentPoly.zero())])
    g = FunctionSpec.of("g", [Singularity(gr(3), LogLaurentPoly.zero()),
                              Singularity(gr(2), LogLaurentPoly.zero())])
    groups = {complex(gamma): len(pairs) for gamma, pairs in product_set(f, g)}
    assert groups == {(4 + 0j): 1, (6 + 0j): 2, (9 + 0j): 1}


def test_product_set_single_pair():
    f = polylog_function_spec(1)
    groups = product_set(f, f)
    assert len(groups) == 1
    gamma, pairs = groups[0]
    assert gamma == gr(1) and len(pairs) == 1


def test_product_set_empty():
    f = FunctionSpec.of("empty", [])
    assert product_set(f, polylog_function_spec(1)) == []


# --- hadamard, totally holomorphic ------------------------------------------------


def test_constant_monodromies_give_log():
    li1 = polylog_function_spec(1)
    result = hadamard_monodromy_total(li1, li1, 1)
    assert result.value == LogLaurentPoly.term(0, 1, 1).scale(-TWO_PI_I)
    assert result.pairs == ((gr(1), gr(1)),)


def test_ladder_induction_step():
    li1 = polylog_function_spec(1)
    for k in range(1, 6):
        lik = polylog_function_spec(k)
        result = hadamard_monodromy_total(lik, li1, 1)
        assert result.value == log_ladder_monodromy(k + 1)


def test_linear_times_constant_monodromy():
    a, b = Fraction(3), Fraction(5, 2)
    f = spec_with("f", 1, LogLaurentPoly.term(1, 0, a))
    g = spec_with("g", 1, LogLaurentPoly.constant(b))
    result = hadamard_monodromy_total(f, g, 1)
    coeff = ExactCoeff.from_rational(a * b) * ExactCoeff.two_pi_i(-1) * (-1)
    expected = (LogLaurentPoly.z() - LogLaurentPoly.constant(1)).scale(coeff)
    assert result.value == expected


def test_total_rejects_polar_germ():
    f = koebe_polar_function_spec()
    g = polylog_function_spec(2)
    with pytest.raises(GermNotTotallyHolomorphic):
        hadamard_monodromy_total(f, g, 1)


def test_gamma_without_factorization_gives_zero():
    li1 = polylog_function_spec(1)
    result = hadamard_monodromy_total(li1, li1, 7)
    assert result.value.is_zero() and result.pairs == ()


# --- hadamard, general -------------------------------------------------------------


def test_general_equals_total_when_no_polar_parts():
    rng = random.Random(21)
    for _ in range(20):
        f = spec_with("f", 2, random_holomorphic_poly(rng))
        g = spec_with("g", 3, random_holomorphic_poly(rng))
        assert hadamard_monodromy_general(f, g, 6).value == hadamard_monodromy_total(f, g, 6).value


def test_pure_polar_against_monodromy_is_derivative_style():
    # F = a/(u-2) only (no monodromy), dG = z at 3:
    # result = -a * [dG(z/u)/u]_{u=2} = -a * z/4
    a = Fraction(1)
    f = spec_with("f", 2, LogLaurentPoly.zero(), GermPart.polar_part([a]))
    g = spec_with("g", 3, LogLaurentPoly.term(1, 0, 1))
    result = hadamard_monodromy_general(f, g, 6)
    assert result.value == LogLaurentPoly.term(1, 0, Fraction(-1, 4))


def test_koebe_polar_acts_as_minus_z_ddz():
    # Hadamard with the polar part {-1, -1} at 1 multiplies coefficients by -n,
    # i.e. acts on monodromies as -z d/dz (checked against the contour oracle
    # in test_continuation.py).
    rng = random.Random(22)
    koebe = koebe_polar_function_spec()
    for _ in range(25):
        p = random_holomorphic_poly(rng)
        g = spec_with("g", 1, p)
        result = hadamard_monodromy_general(koebe, g, 1)
        assert result.value == minus_z_dz(p)


def test_koebe_polar_on_li2_gives_constant_period():
    # -K0 (.) Li_2 = -Li_1, whose monodromy at 1 is +2pii
    result = hadamard_monodromy_general(koebe_polar_function_spec(), polylog_function_spec(2), 1)
    assert result.value == LogLaurentPoly.constant(TWO_PI_I)


# --- ene, totally holomorphic --------------------------------------------------------


def test_ene_polylog_pairs_close_the_ladder():
    for k in range(2, 6):
        for l in range(2, 6):
            result = ene_monodromy_total(polylog_function_spec(k), polylog_function_spec(l), 1)
            assert result.value == -log_ladder_monodromy(k + l - 1)


def test_ene_li1_pair():
    result = ene_monodromy_total(polylog_function_spec(1), polylog_function_spec(1), 1)
    assert result.value == LogLaurentPoly.constant(TWO_PI_I)


def test_ene_constant_monodromies_multiply_multiplicities():
    n_a, n_b = 3, -2
    f = spec_with("f", 2, LogLaurentPoly.constant(TWO_PI_I * n_a))
    g = spec_with("g", 3, LogLaurentPoly.constant(TWO_PI_I * n_b))
    result = ene_monodromy_total(f, g, 6)
    assert result.value == LogLaurentPoly.constant(TWO_PI_I * (n_a * n_b))


def test_ene_zero_monodromy_gives_zero():
    f = spec_with("f", 2, LogLaurentPoly.zero())
    g = spec_with("g", 3, random_holomorphic_poly(random.Random(23)))
    assert ene_monodromy_total(f, g, 6).value.is_zero()


def test_ene_symmetry_on_random_pairs():
    rng = random.Random(24)
    for _ in range(20):
        f = spec_with("f", 2, random_holomorphic_poly(rng))
        g = spec_with("g", 3, random_holomorphic_poly(rng))
        assert ene_symmetry_check(f, g, 6)


def test_ene_symmetry_with_self():
    f = polylog_function_spec(3)
    assert ene_symmetry_check(f, f, 1)


# --- ene, general ----------------------------------------------------------------------


def test_ene_general_equals_total_when_no_polar_parts():
    rng = random.Random(25)
    for _ in range(10):
        f = spec_with("f", 2, random_holomorphic_poly(rng))
        g = spec_with("g", 3, random_holomorphic_poly(rng))
        assert ene_monodromy_general(f, g, 6).value == ene_monodromy_total(f, g, 6).value


def test_ene_constant_monodromy_with_polar_germ_two_term_formula():
    # F: constant monodromy c and polar part a/(u-2); G: dG = z at 3.
    # Expected: -a*[d/du (z/u)]_{u=2} + (c/2pii) * (z/2)
    #         =  a*z/4 + (c/2pii)*(z/2)
    a = Fraction(2)
    c = TWO_PI_I * 4
    f = spec_with("f", 2, LogLaurentPoly.constant(c), GermPart.polar_part([a]))
    g = spec_with("g", 3, LogLaurentPoly.term(1, 0, 1))
    result = ene_monodromy_general(f, g, 6)
    expected = LogLaurentPoly.term(1, 0, a * Fraction(1, 4)) + LogLaurentPoly.term(1, 0, Fraction(2))
    assert result.value == expected


def test_ene_koebe_polar_cases_are_exact():
    # (-K0) ene Li_2 has only uniform singularities: z/(1-z) is rational
    koebe = koebe_polar_function_spec()
    li2 = polylog_function_spec(2)
    assert ene_monodromy_general(koebe, li2, 1).value.is_zero()
    assert ene_monodromy_general(li2, koebe, 1).value.is_zero()


def test_ene_vs_hadamard_ladder_consistency():
    for k, l in [(1, 1), (2, 2), (2, 3), (4, 2)]:
        ene_result = ene_monodromy_total(polylog_function_spec(k), polylog_function_spec(l), 1)
        had = hadamard_monodromy_total(polylog_function_spec(k), polylog_function_spec(l), 1)
        # Li_k ene Li_l = -Li_{k+l-1} while Li_k (.) Li_l = Li_{k+l}
        assert ene_result.value == -log_ladder_monodromy(k + l - 1)
        assert had.value == log_ladder_monodromy(k + l)


def test_ene_equals_koebe_composed_hadamard():
    # operator identity: the ene monodromy is -z d/dz of the Hadamard monodromy
    rng = random.Random(26)
    for _ in range(15):
        f = spec_with("f", 2, random_holomorphic_poly(rng))
        g = spec_with("g", 3, random_holomorphic_poly(rng))
        assert ene_monodromy_total(f, g, 6).value == minus_z_dz(hadamard_monodromy_total(f, g, 6).value)


def test_ene_equals_koebe_composed_hadamard_with_polar_parts():
    rng = random.Random(27)
    for _ in range(15):
        f_germ = GermPart.polar_part([Fraction(rng.randint(-3, 3)), Fraction(rng.randint(1, 3))])
        g_germ = GermPart.polar_part([Fraction(rng.randint(1, 3))])
        f = spec_with("f", 2, random_holomorphic_poly(rng), f_germ)
        g = spec_with("g", 3, random_holomorphic_poly(rng), g_germ)
        lhs = ene_monodromy_general(f, g, 6).value
        rhs = minus_z_dz(hadamard_monodromy_general(f, g, 6).value)
        assert lhs == rhs


# --- superposition over factorizations ---------------------------------------------


def test_multiplicity_superposition():
    rng = random.Random(28)
    p1, p2, q1, q2 = (random_holomorphic_poly(rng) for _ in range(4))
    f = FunctionSpec.of("f", [Singularity(gr(2), p1), Singularity(gr(3), p2)])
    g = FunctionSpec.of("g", [Singularity(gr(3), q1), Singularity(gr(2), q2)])
    combined = hadamard_monodromy_total(f, g, 6)
    assert len(combined.pairs) == 2
    single_a = hadamard_monodromy_total(spec_with("fa", 2, p1), spec_with("gb", 3, q1), 6)
    single_b = hadamard_monodromy_total(spec_with("fb", 3, p2), spec_with("ga", 2, q2), 6)
    assert combined.value == single_a.value + single_b.value


# --- PLM closure ---------------------------------------------------------------------


def test_plm_closure_no_laurent_leakage():
    rng = random.Random(29)
    locations = [gr(1), gr(2), gr(3), gr(1, 2), gr(3, 2)]
    for _ in range(30):
        alpha, beta = rng.choice(locations), rng.choice(locations)
        f = FunctionSpec.of("f", [Singularity(alpha, random_holomorphic_poly(rng, 4, 2))])
        g = FunctionSpec.of("g", [Singularity(beta, random_holomorphic_poly(rng, 4, 2))])
        result = hadamard_monodromy_total(f, g, alpha * beta)
        assert result.value.min_zpow() >= 0


def test_plm_polynomial_monodromies_get_at_most_one_log():
    rng = random.Random(30)
    for _ in range(30):
        f = spec_with("f", 2, random_holomorphic_poly(rng, 4, 0))
        g = spec_with("g", 3, random_holomorphic_poly(rng, 4, 0))
        result = hadamard_monodromy_total(f, g, 6)
        assert result.value.max_logpow() <= 1


# --- Borel degenerate case -------------------------------------------------------------


def test_borel_zero_monodromies_stay_zero():
    f = FunctionSpec.of("f", [
        Singularity(gr(2), LogLaurentPoly.zero(), GermPart.polar_part([Fraction(1)])),
        Singularity(gr(3), LogLaurentPoly.zero()),
    ])
    g = FunctionSpec.of("g", [Singularity(gr(3), LogLaurentPoly.zero(), GermPart.polar_part([Fraction(2), Fraction(1)]))])
    for gamma in (6, 9):
        assert hadamard_monodromy_general(f, g, gamma).value.is_zero()
        assert ene_monodromy_general(f, g, gamma).value.is_zero()


# --- polylog ladder -----------------------------------------------------------------


def test_polylog_monodromy_connects_to_closed_form():
    for k in (1, 2, 5):
        assert polylog_monodromy(k) == log_ladder_monodromy(k)


def test_log_ladder_values():
    assert log_ladder_monodromy(1) == LogLaurentPoly.constant(-TWO_PI_I)
    assert log_ladder_monodromy(2) == LogLaurentPoly.term(0, 1, 1).scale(-TWO_PI_I)
    expected5 = LogLaurentPoly.term(0, 4, Fraction(-1, 24)).scale(TWO_PI_I)
    assert log_ladder_monodromy(5) == expected5


# --- divisors -----------------------------------------------------------------------


def test_divisor_square_of_simple_zero():
    d = Divisor.of({gr(1): 1})
    assert divisor_ene(d, d).as_dict() == {gr(1): 1}


def test_divisor_cross_terms():
    f = Divisor.of({gr(2): 1, gr(3): 1})
    g = Divisor.of({gr(3): 1, gr(2): 1})
    assert divisor_ene(f, g).as_dict() == {gr(6): 2, gr(4): 1, gr(9): 1}


def test_divisor_pole_sign_algebra():
    f = Divisor.of({gr(2): 1})
    g = Divisor.of({gr(3): -1})
    assert divisor_ene(f, g).as_dict() == {gr(6): -1}


def test_divisor_cancellation_drops_point():
    f = Divisor.of({gr(1): 1, gr(-1): -1})
    g = Divisor.of({gr(1): 1, gr(-1): 1})
    # products at gamma=1: 1*1 + (-1)*1 = 0, at gamma=-1: 1*1 + (-1)*1 = 0
    assert divisor_ene(f, g).as_dict() == {}
