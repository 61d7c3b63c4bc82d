'''

Factorial-ratio specs, the Landau floor criterion, D_n(q) from cyclotomic
exponents, the Phi_n^3 congruences for balanced ratios, their classical
counterpart and the Phi_n^4 exploration.

'''
from fractions import Fraction
from math import comb

import pytest

import factratio
from cyclo import CycloModulus, congruent
from factratio import (
    FactorialRatioSpec,
    c_coeff,
    cyclotomic_exponents,
    describe_spec,
    explore_pan_rhs,
    explore_phi4,
    explore_straub_rhs,
    factorial_ratio,
    validate_spec,
    value_at_one,
    verify_classical_ratio,
    verify_ratio_asymptotics,
    verify_theorem3,
)
from polyarith import Poly, RationalFunction
from qcalc import q_binomial
from qcong import theorem1_rhs, theorem2_rhs, verify_known_congruence
from utils import Family, InvalidParameters, NotBalanced, NotIntegral, PrimeTooSmall, SpecParseError, Variant

CHEBYSHEV = FactorialRatioSpec((30, 1), (15, 10, 6))
MIXED = FactorialRatioSpec((4, 1), (2, 2, 1))
CATALAN_RECIPROCAL = FactorialRatioSpec((1, 1), (2,))


# -----------------------------------------------------------------------------
# Specs
# -----------------------------------------------------------------------------

@pytest.mark.parametrize("text", ["30,1/15,10,6", "2/1,1", "1,1/2", "4,1/2,2,1"])
def test_parse_and_str(text):
    assert str(FactorialRatioSpec.parse(text)) == text


def test_parse_tolerates_spaces():
    assert FactorialRatioSpec.parse(" 2 / 1, 1 ") == FactorialRatioSpec((2,), (1, 1))


@pytest.mark.parametrize("text", ["2,1", "a/b", "0/1", "/1", "2/", "1/2/3", "-1/1"])
def test_parse_rejects(text):
    with pytest.raises(SpecParseError):
        FactorialRatioSpec.parse(text)


def test_binomial_spec():
    assert FactorialRatioSpec.binomial(5, 2) == FactorialRatioSpec((5,), (2, 3))
    with pytest.raises(InvalidParameters):
        FactorialRatioSpec.binomial(2, 2)


def test_validate_examples():
    assert validate_spec(CHEBYSHEV) == (True, True, None)
    assert validate_spec(FactorialRatioSpec.parse("2/1,1")) == (True, True, None)
    assert validate_spec(CATALAN_RECIPROCAL) == (True, False, Fraction(1, 2))
    assert not FactorialRatioSpec.parse("3/1,1").balanced()


def test_describe_spec():
    assert describe_spec(CHEBYSHEV) == "balanced, integral"
    assert describe_spec(CATALAN_RECIPROCAL) == "balanced, NOT integral (witness x=1/2)"
    assert describe_spec(FactorialRatioSpec.parse("3/1,1")) == "NOT balanced, integral"


def test_c_coefficients():
    assert c_coeff(FactorialRatioSpec.binomial(2, 1), 2) == 1
    assert c_coeff(CHEBYSHEV, 1) == 0
    assert c_coeff(CHEBYSHEV, 2) == 270
    assert c_coeff(CHEBYSHEV, 3) == 3465
    for i in (1, 2, 3, 4):
        assert c_coeff(CHEBYSHEV.reciprocal(), i) == -c_coeff(CHEBYSHEV, i)


def test_c_coefficients_of_binomial_spec():
    for a in range(2, 8):
        for b in range(1, a):
            spec = FactorialRatioSpec.binomial(a, b)
            c2, c3 = c_coeff(spec, 2), c_coeff(spec, 3)
            assert c2 == b * (a - b)
            assert a * c2 == 2 * (c2 + c3)


# -----------------------------------------------------------------------------
# D_n(q)
# -----------------------------------------------------------------------------

def test_binomial_ratio_is_q_binomial():
    for a, b in [(2, 1), (3, 1), (5, 2)]:
        for n in (1, 2, 3):
            assert factorial_ratio(FactorialRatioSpec.binomial(a, b), n) == RationalFunction(q_binomial(a * n, b * n))


def test_reciprocal_ratio():
    assert factorial_ratio(CATALAN_RECIPROCAL, 1) == RationalFunction(Poly.one(), Poly([1, 1]))
    assert not factorial_ratio(CATALAN_RECIPROCAL, 2).is_polynomial()


def test_integral_ratios_are_polynomials():
    for spec in (CHEBYSHEV, MIXED, FactorialRatioSpec.parse("2,2/1,1,2")):
        for n in (1, 2):
            d = factorial_ratio(spec, n)
            assert d.is_polynomial()
            assert d.as_poly().is_integral()
            assert all(e > 0 for e in cyclotomic_exponents(spec, n).values())


def test_integral_spec_with_denominator_raises(monkeypatch):
    spec = FactorialRatioSpec.binomial(2, 1)
    factorial_ratio.cache_clear()
    monkeypatch.setattr(factratio, "cyclotomic_exponents", lambda s, n: {2: -1})
    with pytest.raises(NotIntegral):
        factorial_ratio(spec, 1)
    factorial_ratio.cache_clear()


def test_value_at_one_matches_evaluation():
    for spec in (MIXED, CATALAN_RECIPROCAL, FactorialRatioSpec.binomial(4, 1)):
        for n in (1, 2, 3):
            assert factorial_ratio(spec, n)(1) == value_at_one(spec, n)
    assert value_at_one(FactorialRatioSpec.binomial(2, 1), 5) == comb(10, 5)


def test_ratio_is_multiplicative():
    s, t = MIXED, CATALAN_RECIPROCAL
    for n in (1, 2, 3):
        assert factorial_ratio(s.concat(t), n) == factorial_ratio(s, n) * factorial_ratio(t, n)
    assert c_coeff(s.concat(t), 2) == c_coeff(s, 2) + c_coeff(t, 2)


def test_unbalanced_rejected():
    with pytest.raises(NotBalanced):
        factorial_ratio(FactorialRatioSpec.parse("3/1,1"), 2)
    with pytest.raises(NotBalanced):
        verify_theorem3(FactorialRatioSpec.parse("3/1,1"), 2, Variant.STRAUB_G)


# -----------------------------------------------------------------------------
# Congruences modulo Phi_n^3
# -----------------------------------------------------------------------------

@pytest.mark.parametrize("variant", list(Variant))
def test_theorem3_binomial_specs(variant):
    for a in range(2, 5):
        for b in range(1, a):
            for n in range(1, 7):
                report = verify_theorem3(FactorialRatioSpec.binomial(a, b), n, variant)
                assert report.holds, (a, b, n)
                assert report.params["spec"] == f"{a}/{b},{a - b}"


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("spec", [CATALAN_RECIPROCAL, MIXED, MIXED.reciprocal(), FactorialRatioSpec.parse("2,2/1,1,2")])
def test_theorem3_other_specs(spec, variant):
    for n in range(2, 6):
        assert verify_theorem3(spec, n, variant).holds, (str(spec), n)


@pytest.mark.parametrize("variant", list(Variant))
def test_theorem3_chebyshev(variant):
    for n in (2, 3):
        assert verify_theorem3(CHEBYSHEV, n, variant).holds


def test_theorem3_without_correction_fails():
    spec, n = FactorialRatioSpec.binomial(2, 1), 5
    main = factorial_ratio(spec, 1).subst_power(n * n)
    assert not congruent(factorial_ratio(spec, n), main, CycloModulus.of(n, 3)).holds


def test_theorem3_family_names():
    spec = FactorialRatioSpec.binomial(2, 1)
    assert verify_theorem3(spec, 3, "straub_g").family == "theorem3_straub"
    assert verify_theorem3(spec, 3, "pan_g").family == "theorem3_pan"


CONCAT_PAIRS = [
    (MIXED, CATALAN_RECIPROCAL),
    (FactorialRatioSpec.binomial(2, 1), FactorialRatioSpec.binomial(3, 1)),
    (CATALAN_RECIPROCAL, FactorialRatioSpec.binomial(3, 2)),
    (MIXED.reciprocal(), FactorialRatioSpec.binomial(2, 1)),
]


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("s, t", CONCAT_PAIRS)
def test_theorem3_holds_on_concatenation(s, t, variant):
    for n in range(2, 6):
        assert verify_theorem3(s, n, variant).holds
        assert verify_theorem3(t, n, variant).holds
        assert verify_theorem3(s.concat(t), n, variant).holds, (str(s.concat(t)), n)


@pytest.mark.parametrize(
    "variant, family", [(Variant.STRAUB_G, Family.STRAUB2), (Variant.PAN_G, Family.PAN5)]
)
def test_theorem3_agrees_with_binomial_congruence(variant, family):
    for a in range(2, 5):
        for b in range(1, a):
            for n in range(2, 7):
                general = verify_theorem3(FactorialRatioSpec.binomial(a, b), n, variant)
                binomial = verify_known_congruence(family, a, b, n)
                assert general.holds == binomial.holds, (a, b, n)
                assert general.remainder == binomial.remainder, (a, b, n)


# -----------------------------------------------------------------------------
# Classical counterpart
# -----------------------------------------------------------------------------

@pytest.mark.parametrize("spec, p", [
    (FactorialRatioSpec.binomial(2, 1), 5),
    (CHEBYSHEV, 5),
    (CHEBYSHEV, 7),
    (MIXED, 7),
    (MIXED, 11),
])
def test_classical_ratio(spec, p):
    report = verify_classical_ratio(spec, p)
    assert report.holds
    assert report.params == {"spec": str(spec), "n": p, "k": 3}


def test_classical_ratio_difference():
    assert verify_classical_ratio(FactorialRatioSpec.binomial(2, 1), 5).details["difference"] == "250"


def test_classical_ratio_rejects():
    with pytest.raises(NotIntegral):
        verify_classical_ratio(CATALAN_RECIPROCAL, 5)
    with pytest.raises(PrimeTooSmall):
        verify_classical_ratio(MIXED, 3)
    with pytest.raises(NotBalanced):
        verify_classical_ratio(FactorialRatioSpec.parse("3/1,1"), 5)


# -----------------------------------------------------------------------------
# Radial form and the Phi_n^4 exploration
# -----------------------------------------------------------------------------

@pytest.mark.parametrize("variant", list(Variant))
def test_ratio_asymptotics(variant):
    for a in range(2, 5):
        for b in range(1, a):
            for n in range(1, 6):
                report = verify_ratio_asymptotics(a, b, n, variant)
                assert report.holds, (a, b, n, report.details)
                assert report.details["reciprocal"] == "holds"


def test_ratio_asymptotics_constant():
    report = verify_ratio_asymptotics(2, 1, 5, Variant.STRAUB_G)
    assert report.details["c"] == "-25"
    assert report.family == "ratio_asymptotics_straub_g"


def test_exploration_matches_binomial_refinements():
    for a, b, n in [(2, 1, 5), (3, 1, 4), (4, 2, 3)]:
        spec = FactorialRatioSpec.binomial(a, b)
        assert explore_straub_rhs(spec, n) == theorem1_rhs(a, b, n)
        assert explore_pan_rhs(spec, n) == theorem2_rhs(a, b, n)


@pytest.mark.parametrize("variant", list(Variant))
def test_explore_phi4_is_exploratory(variant):
    report = explore_phi4(FactorialRatioSpec.binomial(3, 1), 4, variant)
    assert report.holds
    assert report.exploratory
    other = explore_phi4(MIXED, 3, variant)
    assert other.exploratory
    assert other.params["k"] == 4
