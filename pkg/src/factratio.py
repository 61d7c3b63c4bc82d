"""
q-analogues of Chebyshev-Landau factorial ratios

    D_n(q) = [a_1 n]! ... [a_r n]! / ([b_1 n]! ... [b_s n]!)

and their congruences modulo Phi_n^3.
"""
from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Tuple

from cyclo import CongruenceReport, CycloModulus, congruent, cyclotomic, elapsed_since
from polyarith import Poly, RationalFunction, format_rational
from qcalc import q_binomial, sigma_power
from qcong import check_prime, harmonic_sum
from rootexpand import EpsSeries, expand_poly_at_root
from utils import (
    Family,
    NotBalanced,
    NotIntegral,
    SpecParseError,
    Variant,
    binom,
    require,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactorialRatioSpec:
    num_params: Tuple[int, ...]
    den_params: Tuple[int, ...]

    def __post_init__(self):
        num, den = tuple(self.num_params), tuple(self.den_params)
        if not num or not den:
            raise SpecParseError("both parameter lists must be non-empty")
        if any((not isinstance(v, int)) or v < 1 for v in num + den):
            raise SpecParseError(f"parameters must be positive integers, got {num}/{den}")
        object.__setattr__(self, "num_params", num)
        object.__setattr__(self, "den_params", den)

    @classmethod
    def parse(cls, text: str) -> FactorialRatioSpec:
        """Parse "a1,...,ar/b1,...,bs"."""
        parts = text.replace(" ", "").split("/")
        if len(parts) != 2:
            raise SpecParseError(f"expected 'a1,...,ar/b1,...,bs', got {text!r}")
        try:
            num, den = (tuple(int(v) for v in part.split(",")) for part in parts)
        except ValueError as e:
            raise SpecParseError(f"non-integer entry in {text!r}") from e
        return cls(num, den)

    @classmethod
    def binomial(cls, a: int, b: int) -> FactorialRatioSpec:
        """((a), (b, a-b)), whose D_n is qbin(an, bn)."""
        require(1 <= b < a, f"binomial spec needs 1 <= b < a, got a={a}, b={b}")
        return cls((a,), (b, a - b))

    def __str__(self) -> str:
        return f"{','.join(map(str, self.num_params))}/{','.join(map(str, self.den_params))}"

    def balanced(self) -> bool:
        return sum(self.num_params) == sum(self.den_params)

    def landau_integral(self) -> bool:
        return _landau_witness(self.num_params, self.den_params) is None

    def reciprocal(self) -> FactorialRatioSpec:
        return FactorialRatioSpec(self.den_params, self.num_params)

    def concat(self, other: FactorialRatioSpec) -> FactorialRatioSpec:
        """Spec of the product D_n(self) D_n(other)."""
        return FactorialRatioSpec(
            self.num_params + other.num_params, self.den_params + other.den_params
        )


def _floor_sum(params: Tuple[int, ...], x: Fraction) -> int:
    return sum(math.floor(v * x) for v in params)


@lru_cache(maxsize=256)
def _landau_witness(num: Tuple[int, ...], den: Tuple[int, ...]) -> Optional[Fraction]:
    """Smallest breakpoint x in (0, 1] where the floor inequality fails."""
    breakpoints = sorted({Fraction(t, d) for d in set(num + den) for t in range(1, d + 1)})
    for x in breakpoints:
        if _floor_sum(num, x) < _floor_sum(den, x):
            return x
    return None


def validate_spec(spec: FactorialRatioSpec) -> Tuple[bool, bool, Optional[Fraction]]:
    """(balanced, integral, witness); the breakpoint scan on (0, 1] covers all x > 0 for balanced specs."""
    witness = _landau_witness(spec.num_params, spec.den_params)
    return spec.balanced(), witness is None, witness


def describe_spec(spec: FactorialRatioSpec) -> str:
    balanced, integral, witness = validate_spec(spec)
    parts = ["balanced" if balanced else "NOT balanced"]
    if integral:
        parts.append("integral")
    else:
        parts.append(f"NOT integral (witness x={format_rational(witness)})")
    return ", ".join(parts)


def _require_balanced(spec: FactorialRatioSpec) -> None:
    if not spec.balanced():
        raise NotBalanced(f"{spec} is not balanced: {sum(spec.num_params)} != {sum(spec.den_params)}")


def c_coeff(spec: FactorialRatioSpec, i: int) -> int:
    require(i >= 1, f"c_i needs i >= 1, got {i}")
    return sum(binom(v, i) for v in spec.num_params) - sum(binom(v, i) for v in spec.den_params)


# ================================
# D_n(q)
# ================================

def cyclotomic_exponents(spec: FactorialRatioSpec, n: int) -> Dict[int, int]:
    """
    Nonzero exponents e_d of Phi_d in D_n, from [m]! = prod_{d >= 2} Phi_d^floor(m/d).

    e_d >= 0 is the floor inequality at x = n/d, so every exponent is
    non-negative for an integral spec.
    """
    require(n >= 1, f"need n >= 1, got {n}")
    top = max(spec.num_params + spec.den_params) * n
    exponents: Dict[int, int] = {}
    for d in range(2, top + 1):
        e = sum(v * n // d for v in spec.num_params) - sum(v * n // d for v in spec.den_params)
        if e:
            exponents[d] = e
    return exponents


@lru_cache(maxsize=128)
def factorial_ratio(spec: FactorialRatioSpec, n: int) -> RationalFunction:
    """
    D_n(q) as a normalized rational function.

    Raises:
        NotBalanced: if the parameter sums differ.
        NotIntegral: if an integral spec does not give an integer polynomial.
    """
    _require_balanced(spec)
    exponents = cyclotomic_exponents(spec, n)
    num = Poly.product(cyclotomic(d) ** e for d, e in exponents.items() if e > 0)
    den = Poly.product(cyclotomic(d) ** -e for d, e in exponents.items() if e < 0)
    logger.debug("[factratio] D_%d for %s: degree %s over %s", n, spec, num.degree, den.degree)
    # distinct cyclotomic factors are coprime and monic
    ratio = RationalFunction.from_coprime(num, den)
    if spec.landau_integral() and not (ratio.is_polynomial() and num.is_integral()):
        raise NotIntegral(f"D_{n} for {spec} is not an integer polynomial")
    return ratio


def value_at_one(spec: FactorialRatioSpec, n: int) -> Fraction:
    """D_n(1) from exact integer factorials."""
    num = math.prod(math.factorial(v * n) for v in spec.num_params)
    den = math.prod(math.factorial(v * n) for v in spec.den_params)
    return Fraction(num, den)


# ================================
# Congruences modulo Phi_n^3
# ================================

def _u(n: int) -> Poly:
    return Poly.monomial(n) - 1


def straub_g_rhs(spec: FactorialRatioSpec, n: int) -> RationalFunction:
    c2 = c_coeff(spec, 2)
    correction = value_at_one(spec, 1) * Fraction(c2 * (n * n - 1), 24)
    return factorial_ratio(spec, 1).subst_power(n * n) - _u(n) ** 2 * correction


def _pan_weight(spec: FactorialRatioSpec, n: int) -> RationalFunction:
    """sigma_n^c2 q^(c2 binom(n, 2)); the exponent is negative when c2 < 0."""
    c2 = c_coeff(spec, 2)
    return RationalFunction.monomial(c2 * binom(n, 2), sigma_power(n, c2))


def pan_g_rhs(spec: FactorialRatioSpec, n: int) -> RationalFunction:
    c23 = c_coeff(spec, 2) + c_coeff(spec, 3)
    correction = value_at_one(spec, 1) * Fraction(c23 * (n * n - 1), 12)
    return _pan_weight(spec, n) * factorial_ratio(spec, 1).subst_power(n) + _u(n) ** 2 * correction


_THEOREM3 = {
    Variant.STRAUB_G: (Family.THEOREM3_STRAUB, straub_g_rhs),
    Variant.PAN_G: (Family.THEOREM3_PAN, pan_g_rhs),
}


def verify_theorem3(spec: FactorialRatioSpec, n: int, variant: Variant) -> CongruenceReport:
    """D_n against either generalized right side, modulo Phi_n^3; integrality is not needed."""
    require(n >= 1, f"need n >= 1, got {n}")
    _require_balanced(spec)
    family, rhs = _THEOREM3[Variant(variant)]
    return congruent(
        factorial_ratio(spec, n), rhs(spec, n), CycloModulus.of(n, 3), family.value, {"spec": str(spec)}
    )


def verify_classical_ratio(spec: FactorialRatioSpec, p: int) -> CongruenceReport:
    """D_p(1) == D_1(1) (mod p^3)."""
    start = time.perf_counter()
    _require_balanced(spec)
    balanced, integral, witness = validate_spec(spec)
    if not integral:
        raise NotIntegral(f"{spec} fails the floor inequality at x={format_rational(witness)}")
    check_prime(p)
    diff = int(value_at_one(spec, p) - value_at_one(spec, 1))
    residue = diff % p ** 3
    return CongruenceReport(
        family=Family.CLASSICAL_RATIO.value,
        params={"spec": str(spec), "n": p, "k": 3},
        holds=residue == 0,
        remainder=Poly.constant(residue),
        elapsed_ms=elapsed_since(start),
        details={"difference": str(diff)},
    )


# ================================
# Radial form of the binomial case
# ================================

def ratio_main_term(a: int, b: int, n: int, variant: Variant) -> Poly:
    """B(q): qbin(a,b)(q^{n^2}) or sigma^{b(a-b)} q^{b(a-b) binom(n,2)} qbin(a,b)(q^n)."""
    if Variant(variant) is Variant.STRAUB_G:
        return q_binomial(a, b).subst_power(n * n)
    c2 = b * (a - b)
    return Poly.monomial(c2 * binom(n, 2), sigma_power(n, c2)) * q_binomial(a, b).subst_power(n)


def ratio_eps2_constant(a: int, b: int, n: int, variant: Variant) -> Fraction:
    c = Fraction(b * (a - b) * n * n * (n * n - 1), 24)
    return -c if Variant(variant) is Variant.STRAUB_G else c * a


def verify_ratio_asymptotics(a: int, b: int, n: int, variant: Variant) -> CongruenceReport:
    """
    At q = zeta(1 - eps): qbin(an, bn) = B(q) + c B(1) eps^2 + O(eps^3), and for
    the reciprocal 1/qbin(an, bn) = 1/B(q) - c/B(1) eps^2 + O(eps^3).
    """
    start = time.perf_counter()
    require(1 <= b < a, f"need 1 <= b < a, got a={a}, b={b}")
    require(n >= 1, f"need n >= 1, got {n}")
    variant = Variant(variant)
    order = 3
    c = ratio_eps2_constant(a, b, n, variant)
    b1 = binom(a, b)

    lhs = expand_poly_at_root(q_binomial(a * n, b * n), n, order)
    main = expand_poly_at_root(ratio_main_term(a, b, n, variant), n, order)
    direct = lhs - main - EpsSeries(n, [0, 0, c * b1], order)
    inverse = lhs.inverse() - main.inverse() - EpsSeries(n, [0, 0, -c / b1], order)

    details = {"c": format_rational(c)}
    remainder = Poly.zero()
    for name, diff in (("direct", direct), ("reciprocal", inverse)):
        index = diff.first_nonzero()
        details[name] = "holds" if index is None else f"mismatch at eps^{index}"
        if index is not None and remainder.is_zero():
            remainder = diff.coeffs[index].poly
    return CongruenceReport(
        family=f"ratio_asymptotics_{variant.value}",
        params={"a": a, "b": b, "n": n, "k": order},
        holds=remainder.is_zero(),
        remainder=remainder,
        elapsed_ms=elapsed_since(start),
        details=details,
    )


# ================================
# Candidate refinements modulo Phi_n^4
# ================================

def explore_straub_rhs(spec: FactorialRatioSpec, n: int) -> RationalFunction:
    c2, c3 = c_coeff(spec, 2), c_coeff(spec, 3)
    u = _u(n)
    m = n * n - 1
    bracket = (
        harmonic_sum(n) * (2 * (c2 + c3))
        + (c2 + c3) * (n - 1)
        + u * Fraction((2 * c3 + 3 * c2) * m, 24)
        + u ** 2 * Fraction((c2 * c2 * n - 2 * c3 - 4 * c2) * m, 48)
    )
    return factorial_ratio(spec, 1).subst_power(n * n) - bracket * u * value_at_one(spec, 1)


def explore_pan_rhs(spec: FactorialRatioSpec, n: int) -> RationalFunction:
    c2, c3 = c_coeff(spec, 2), c_coeff(spec, 3)
    u = _u(n)
    bracket = (
        harmonic_sum(n)
        + Fraction(n - 1, 2)
        - u ** 2 * Fraction((c2 * n - 1) * (n * n - 1), 48)
    )
    main = _pan_weight(spec, n) * factorial_ratio(spec, 1).subst_power(n)
    return main - bracket * u * (value_at_one(spec, 1) * 2 * (c2 + c3))


_EXPLORE = {
    Variant.STRAUB_G: (Family.EXPLORE4_STRAUB, explore_straub_rhs),
    Variant.PAN_G: (Family.EXPLORE4_PAN, explore_pan_rhs),
}


def explore_phi4(spec: FactorialRatioSpec, n: int, variant: Variant) -> CongruenceReport:
    """
    Test the mod Phi_n^4 candidates obtained by writing the binomial refinements
    through c2 and c3. They coincide with the binomial refinements for
    ((a), (b, a-b)); for other specs the outcome is reported, not asserted.
    """
    require(n >= 2, f"need n >= 2, got {n}")
    _require_balanced(spec)
    family, rhs = _EXPLORE[Variant(variant)]
    report = congruent(
        factorial_ratio(spec, n), rhs(spec, n), CycloModulus.of(n, 4), family.value, {"spec": str(spec)}
    )
    logger.info("[factratio] %s %s n=%d: %s", family.value, spec, n, "holds" if report.holds else "fails")
    return replace(report, exploratory=True)
