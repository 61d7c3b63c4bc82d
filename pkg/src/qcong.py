from __future__ import annotations

import logging
import time
from dataclasses import replace
from fractions import Fraction
from functools import lru_cache
from typing import Tuple, TypeAlias

from sympy import isprime

from cyclo import CongruenceReport, CycloModulus, congruent, elapsed_since
from polyarith import Poly, RationalFunction, format_rational
from qcalc import q_binomial, sigma_power
from utils import Family, InvalidParameters, NotPrime, PrimeTooSmall, binom, require

logger = logging.getLogger(__name__)

Sides: TypeAlias = Tuple[RationalFunction, RationalFunction, CycloModulus]

KNOWN_FAMILIES = (Family.STRAUB2, Family.MONOMIAL3, Family.ANDREWS4, Family.PAN5)


# ================================
# Harmonic-type sums
# ================================

@lru_cache(maxsize=64)
def harmonic_sum(n: int) -> RationalFunction:
    """H_{n-1}(q) = sum_{k=1}^{n-1} q^k / (1 - q^k)."""
    require(n >= 1, f"harmonic sum needs n >= 1, got {n}")
    total = RationalFunction(Poly.zero())
    for k in range(1, n):
        total = total + RationalFunction(Poly.monomial(k), 1 - Poly.monomial(k))
    return total


@lru_cache(maxsize=64)
def s_sum(n: int) -> RationalFunction:
    """S_{n-1}(q) = 1/2 sum_{k=1}^{n-1} k q^k ((k+1) q^k + k - 1) / (1 - q^k)^3."""
    require(n >= 1, f"S-sum needs n >= 1, got {n}")
    total = RationalFunction(Poly.zero())
    for k in range(1, n):
        num = Poly.monomial(k, k) * (Poly.monomial(k, k + 1) + (k - 1))
        total = total + RationalFunction(num, (1 - Poly.monomial(k)) ** 3)
    return total * Fraction(1, 2)


def harmonic_number(p: int) -> Fraction:
    """sum_{k<p} 1/k."""
    return sum((Fraction(1, k) for k in range(1, p)), Fraction(0))


# ================================
# Right-hand sides
# ================================

def _qn_minus_one(n: int) -> Poly:
    return Poly.monomial(n) - 1


def _monomial_weight(n: int, e: int, exponent: int) -> Poly:
    """sigma_n^e q^exponent."""
    return Poly.monomial(exponent, sigma_power(n, e))


def straub_rhs(a: int, b: int, n: int) -> RationalFunction:
    """qbin(a, b)(q^{n^2}) - b(a-b) binom(a,b) (n^2-1)/24 (q^n - 1)^2, modulo Phi_n^3."""
    correction = Fraction(b * (a - b) * binom(a, b) * (n * n - 1), 24)
    return RationalFunction(q_binomial(a, b).subst_power(n * n) - _qn_minus_one(n) ** 2 * correction)


def andrews_rhs(a: int, b: int, n: int) -> RationalFunction:
    """sigma_n^{b(a-b)} q^{b(a-b) binom(n,2)} qbin(a, b)(q^n), modulo Phi_n^2."""
    c2 = b * (a - b)
    weight = _monomial_weight(n, c2, c2 * binom(n, 2))
    return RationalFunction(weight * q_binomial(a, b).subst_power(n))


def pan_correction(a: int, b: int, n: int) -> Poly:
    """ab(a-b) binom(a,b) (n^2-1)/24 (q^n - 1)^2."""
    return _qn_minus_one(n) ** 2 * Fraction(a * b * (a - b) * binom(a, b) * (n * n - 1), 24)


def pan_rhs(a: int, b: int, n: int) -> RationalFunction:
    return andrews_rhs(a, b, n) + pan_correction(a, b, n)


def monomial_sides(a: int, b: int, n: int) -> Tuple[RationalFunction, RationalFunction]:
    """qbin(an,bn) sigma^b q^binom(bn,2) against binom(a-1,b) + binom(a-1,a-b) sigma^a q^binom(an,2)."""
    lhs = q_binomial(a * n, b * n) * _monomial_weight(n, b, binom(b * n, 2))
    rhs = binom(a - 1, a - b) * _monomial_weight(n, a, binom(a * n, 2)) + binom(a - 1, b)
    return RationalFunction(lhs), RationalFunction(rhs)


def theorem1_rhs(a: int, b: int, n: int) -> RationalFunction:
    c2 = b * (a - b)
    u = _qn_minus_one(n)
    m = n * n - 1
    bracket = (
        harmonic_sum(n) * a
        + Fraction(a * (n - 1), 2)
        + u * Fraction((a + 1) * m, 24)
        + u ** 2 * Fraction((c2 * n - a - 2) * m, 48)
    )
    base = RationalFunction(q_binomial(a, b).subst_power(n * n))
    return base - bracket * u * (c2 * binom(a, b))


def theorem2_rhs(a: int, b: int, n: int) -> RationalFunction:
    c2 = b * (a - b)
    u = _qn_minus_one(n)
    bracket = (
        harmonic_sum(n)
        + Fraction(n - 1, 2)
        - u ** 2 * Fraction((c2 * n - 1) * (n * n - 1), 48)
    )
    return andrews_rhs(a, b, n) - bracket * u * (a * c2 * binom(a, b))


def harmonic_rhs(n: int, k: int) -> RationalFunction:
    """Right side of the q-harmonic congruence for H_{n-1} modulo Phi_n^k."""
    u = _qn_minus_one(n)
    poly = Fraction(-(n - 1), 2) - u * Fraction(n * n - 1, 24)
    if k == 2:
        return RationalFunction(poly)
    poly = poly + u ** 2 * Fraction((n - 1) * (n * n - 1), 48 * n)
    return s_sum(n) * RationalFunction(u ** 2 * Fraction(1, n * n)) + poly


def _check_binomial(a: int, b: int, n: int, permissive: bool) -> None:
    require(0 <= b <= a, f"need 0 <= b <= a, got a={a}, b={b}")
    if n < 2:
        require(permissive and n == 1, f"need n >= 2, got n={n}")


def congruence_sides(family: Family, a: int, b: int, n: int) -> Sides:
    """Left side, right side and modulus of a congruence family."""
    family = Family(family)
    lhs = RationalFunction(q_binomial(a * n, b * n))
    if family is Family.STRAUB2:
        return lhs, straub_rhs(a, b, n), CycloModulus.of(n, 3)
    if family is Family.MONOMIAL3:
        require(a >= 1, "the monomial congruence needs a >= 1")
        left, right = monomial_sides(a, b, n)
        return left, right, CycloModulus.of(n, 2)
    if family is Family.ANDREWS4:
        return lhs, andrews_rhs(a, b, n), CycloModulus.of(n, 2)
    if family is Family.PAN5:
        return lhs, pan_rhs(a, b, n), CycloModulus.of(n, 3)
    if family is Family.THEOREM1:
        return lhs, theorem1_rhs(a, b, n), CycloModulus.of(n, 4)
    if family is Family.THEOREM2:
        return lhs, theorem2_rhs(a, b, n), CycloModulus.of(n, 4)
    raise InvalidParameters(f"{family.value} is not a binomial congruence family")


def _verify(family: Family, a: int, b: int, n: int, permissive: bool) -> CongruenceReport:
    _check_binomial(a, b, n, permissive)
    lhs, rhs, modulus = congruence_sides(family, a, b, n)
    report = congruent(lhs, rhs, modulus, family.value, {"a": a, "b": b})
    if n == 1:
        logger.warning("[qcong] %s at n=1 is exploratory: %s", family.value, report.holds)
        return replace(report.with_details(note="n=1 is outside the asserted range"), exploratory=True)
    return report


# ================================
# Verifiers
# ================================

def verify_known_congruence(
    family: Family, a: int, b: int, n: int, permissive: bool = False
) -> CongruenceReport:
    family = Family(family)
    if family not in KNOWN_FAMILIES:
        raise InvalidParameters(f"unknown congruence family {family.value}")
    return _verify(family, a, b, n, permissive)


def verify_theorem1(a: int, b: int, n: int, permissive: bool = False) -> CongruenceReport:
    return _verify(Family.THEOREM1, a, b, n, permissive)


def verify_theorem2(a: int, b: int, n: int, permissive: bool = False) -> CongruenceReport:
    return _verify(Family.THEOREM2, a, b, n, permissive)


def verify_harmonic_congruence(n: int, k: int) -> CongruenceReport:
    require(n >= 2, f"harmonic congruence needs n >= 2, got {n}")
    require(k in (2, 3), f"harmonic congruence is stated for k in (2, 3), got {k}")
    family = Family.HARMONIC2 if k == 2 else Family.HARMONIC3
    return congruent(harmonic_sum(n), harmonic_rhs(n, k), CycloModulus.of(n, k), family.value)


def check_prime(p: int) -> None:
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if p <= 3:
        raise PrimeTooSmall(f"the congruence needs a prime p > 3, got {p}")


def verify_classical_integer(a: int, b: int, p: int, level: int) -> CongruenceReport:
    """
    binom(ap, bp) == binom(a, b) mod p^3, or its refinement mod p^4 with the
    harmonic correction ab(a-b) binom(a, b) p H_{p-1}.
    """
    start = time.perf_counter()
    require(0 <= b <= a, f"need 0 <= b <= a, got a={a}, b={b}")
    require(level in (3, 4), f"level must be 3 or 4, got {level}")
    check_prime(p)

    diff = Fraction(binom(a * p, b * p) - binom(a, b))
    if level == 4:
        diff -= a * b * (a - b) * binom(a, b) * p * harmonic_number(p)
    modulus = p ** level
    residue = diff.numerator % modulus
    coprime = diff.denominator % p != 0
    holds = residue == 0 and coprime
    family = Family.CLASSICAL3 if level == 3 else Family.CLASSICAL4
    return CongruenceReport(
        family=family.value,
        params={"a": a, "b": b, "n": p, "k": level},
        holds=holds,
        remainder=Poly.constant(residue) if coprime else Poly.one(),
        elapsed_ms=elapsed_since(start),
        details={"difference": format_rational(diff)},
    )
