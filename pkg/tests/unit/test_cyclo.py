'''

Cyclotomic polynomials (recursive construction vs Moebius product vs sympy),
reduction modulo Phi_n^k and the congruence predicate.

'''
import logging
from concurrent.futures import ThreadPoolExecutor

import pytest
from sympy import Poly as SymPoly
from sympy import cyclotomic_poly, symbols, totient

from cyclo import (
    CycloModulus,
    CongruenceReport,
    _cyclo_cache,
    congruent,
    cyclotomic,
    cyclotomic_mobius,
    mobius,
    reduce_mod,
)
from polyarith import Poly, RationalFunction
from qcalc import q_binomial
from utils import DenominatorNotCoprime, InvalidParameters, binom

q = symbols("q")


def _sympy_cyclotomic(n):
    coeffs = SymPoly(cyclotomic_poly(n, q), q).all_coeffs()
    return Poly(int(c) for c in reversed(coeffs))


# -----------------------------------------------------------------------------
# cyclotomic
# -----------------------------------------------------------------------------

def test_cyclotomic_small():
    assert cyclotomic(1) == Poly([-1, 1])
    assert cyclotomic(5) == Poly([1, 1, 1, 1, 1])
    assert cyclotomic(6) == Poly([1, -1, 1])


def test_cyclotomic_rejects_zero():
    with pytest.raises(InvalidParameters):
        cyclotomic(0)


@pytest.mark.parametrize("n", list(range(1, 61)) + [105, 210])
def test_cyclotomic_matches_sympy_and_mobius(n):
    phi = cyclotomic(n)
    assert phi == _sympy_cyclotomic(n)
    assert phi == cyclotomic_mobius(n)
    assert phi.is_integral()
    assert phi.leading == 1


@pytest.mark.parametrize("n", range(1, 101))
def test_product_over_divisors_is_q_n_minus_1(n):
    product = Poly.product(cyclotomic(d) for d in range(1, n + 1) if n % d == 0)
    assert product == Poly.monomial(n) - 1
    assert cyclotomic(n).degree == int(totient(n))


def test_cyclotomic_palindromic():
    for n in range(2, 40):
        coeffs = cyclotomic(n).coeffs
        assert coeffs == tuple(reversed(coeffs))


def test_cyclotomic_is_cached():
    _cyclo_cache.clear()
    first = cyclotomic(12)
    assert _cyclo_cache.get(12) is first
    assert cyclotomic(12) is first


def test_cyclotomic_concurrent_queries_share_one_object():
    _cyclo_cache.clear()
    indices = [n for n in range(1, 61) for _ in range(4)]
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(cyclotomic, indices))
    for n, phi in zip(indices, results):
        assert phi == _sympy_cyclotomic(n)
        assert phi is cyclotomic(n)


def test_mobius_values():
    assert [mobius(m) for m in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


# -----------------------------------------------------------------------------
# reduce_mod / congruent
# -----------------------------------------------------------------------------

def test_reduce_q_power_n():
    for n in range(1, 10):
        assert reduce_mod(Poly.monomial(n), CycloModulus.of(n, 1)) == Poly.one()


def test_reduce_phi_itself():
    m = CycloModulus.of(7, 1)
    assert reduce_mod(cyclotomic(7), m).is_zero()


def test_reduce_qbinomial_to_lucas_value():
    assert reduce_mod(q_binomial(12, 4), CycloModulus.of(4, 1)) == Poly.constant(3)


def test_modulus_is_memoized_and_printable():
    m = CycloModulus.of(5, 3)
    assert m is CycloModulus.of(5, 3)
    assert m.phi_pow == cyclotomic(5) ** 3
    assert str(m) == "Phi_5^3"


def test_congruent_trivial():
    report = congruent(Poly.monomial(6), 1, CycloModulus.of(6, 1))
    assert report.holds
    assert report.remainder.is_zero()
    assert report.params == {"n": 6, "k": 1}
    assert isinstance(report.elapsed_ms, int) and report.elapsed_ms >= 0


def test_congruent_q_lucas():
    for a, b, n in [(3, 1, 4), (4, 2, 3), (2, 1, 2)]:
        report = congruent(q_binomial(a * n, b * n), binom(a, b), CycloModulus.of(n, 1), "qlucas")
        assert report.holds


def test_congruent_failure_reports_remainder():
    report = congruent(Poly.monomial(5), 2, CycloModulus.of(5, 1))
    assert not report.holds
    assert report.remainder == Poly([-1])


def test_congruent_ill_posed_raises():
    bad = RationalFunction(Poly.one(), 1 - Poly.monomial(5))
    with pytest.raises(DenominatorNotCoprime):
        congruent(bad, 0, CycloModulus.of(5, 1))


def test_congruent_rational_sides():
    # 1/(1-q) == 1/(1-q) + (q^3 - 1)^2 (mod Phi_3^2)
    h = RationalFunction(Poly.one(), Poly([1, -1]))
    shifted = h + (Poly.monomial(3) - 1) ** 2
    assert congruent(h, shifted, CycloModulus.of(3, 2)).holds
    assert not congruent(h, shifted, CycloModulus.of(3, 3)).holds


def test_remainder_is_cross_multiplied_numerator():
    a = RationalFunction(Poly([1, 2]), Poly([1, 1]))
    b = RationalFunction(Poly([3]), Poly([2, 0, 1]))
    modulus = CycloModulus.of(4, 2)
    report = congruent(a, b, modulus)
    expected = (a.num * b.den - b.num * a.den) % modulus.phi_pow
    assert report.remainder == expected
    assert not report.holds


def test_congruence_level_is_monotone():
    # divisible by Phi^3 implies divisible by Phi^2
    lhs = Poly.one() + cyclotomic(4) ** 3 * Poly([2, 1])
    assert congruent(lhs, 1, CycloModulus.of(4, 3)).holds
    assert congruent(lhs, 1, CycloModulus.of(4, 2)).holds
    assert not congruent(lhs, 1, CycloModulus.of(4, 4)).holds


def test_report_reduced_and_details():
    report = congruent(Poly.monomial(4), 2, CycloModulus.of(4, 2))
    assert report.reduced(1) == Poly([-1])
    with pytest.raises(InvalidParameters):
        report.reduced(3)
    tagged = report.with_details(note="x")
    assert tagged.details == {"note": "x"}
    assert report.details == {}
    assert isinstance(tagged, CongruenceReport)


def test_congruent_logs_at_debug(caplog):
    with caplog.at_level(logging.DEBUG, logger="cyclo"):
        congruent(Poly.monomial(3), 1, CycloModulus.of(3, 1), "demo")
    assert any("demo" in rec.getMessage() for rec in caplog.records)
