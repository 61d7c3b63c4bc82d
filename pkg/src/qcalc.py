"""q-numbers, q-factorials, Gaussian binomials and q-Pochhammer symbols in x."""
from __future__ import annotations

import time
from functools import lru_cache
from typing import Iterable, List, Tuple

from cyclo import CongruenceReport, CycloModulus, congruent, elapsed_since, reduce_mod
from polyarith import Poly
from utils import Family, binom, require


def q_number(a: int) -> Poly:
    """[a] = 1 + q + ... + q^(a-1)."""
    require(a >= 0, f"q-number index must be non-negative, got {a}")
    return Poly([1] * a)


def _one_minus_q_power(m: int) -> Poly:
    return 1 - Poly.monomial(m)


@lru_cache(maxsize=256)
def q_factorial(a: int) -> Poly:
    require(a >= 0, f"q-factorial index must be non-negative, got {a}")
    result = Poly.one()
    for i in range(2, a + 1):
        result = (result * _one_minus_q_power(i)).exact_div(_one_minus_q_power(1))
    return result


@lru_cache(maxsize=1024)
def q_binomial(a: int, b: int) -> Poly:
    """
    Gaussian binomial [a]!/([b]![a-b]!), zero outside 0 <= b <= a.

    Built as a running product of (1 - q^(a-k+i))/(1 - q^i); every partial
    product is itself a Gaussian binomial, so each division must be exact.
    """
    if b < 0 or b > a:
        return Poly.zero()
    k = min(b, a - b)
    result = Poly.one()
    for i in range(1, k + 1):
        result = (result * _one_minus_q_power(a - k + i)).exact_div(_one_minus_q_power(i))
    return result


def q_binomial_pascal(a: int, b: int) -> Poly:
    """Gaussian binomial from qbin(m, j) = qbin(m-1, j-1) + q^j qbin(m-1, j)."""
    if b < 0 or b > a:
        return Poly.zero()
    row: List[Poly] = [Poly.one()]
    for m in range(1, a + 1):
        nxt = [Poly.one()]
        for j in range(1, m):
            nxt.append(row[j - 1] + row[j].shift(j))
        nxt.append(Poly.one())
        row = nxt
    return row[b]


def sign_sigma(n: int) -> int:
    """(-1)^(n-1)."""
    require(n >= 1, f"sigma needs n >= 1, got {n}")
    return 1 if n % 2 else -1


def sigma_power(n: int, e: int) -> int:
    """sign_sigma(n)**e for any integer e."""
    return sign_sigma(n) if e % 2 else 1


# ================================
# Polynomials in x over Z[q]
# ================================

class XPoly:
    """Polynomial in x whose coefficients are Poly in q."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Poly] = ()):
        out = list(coeffs)
        while out and out[-1].is_zero():
            out.pop()
        self._c: Tuple[Poly, ...] = tuple(out)

    @property
    def coeffs(self) -> Tuple[Poly, ...]:
        return self._c

    @property
    def x_degree(self) -> int:
        return len(self._c) - 1

    def coeff(self, j: int) -> Poly:
        return self._c[j] if 0 <= j < len(self._c) else Poly.zero()

    def __add__(self, other: XPoly) -> XPoly:
        size = max(len(self._c), len(other._c))
        return XPoly(self.coeff(j) + other.coeff(j) for j in range(size))

    def __neg__(self) -> XPoly:
        return XPoly(-c for c in self._c)

    def __sub__(self, other: XPoly) -> XPoly:
        return self + (-other)

    def __mul__(self, other: XPoly) -> XPoly:
        if not self._c or not other._c:
            return XPoly()
        out = [Poly.zero()] * (len(self._c) + len(other._c) - 1)
        for i, u in enumerate(self._c):
            if u.is_zero():
                continue
            for j, v in enumerate(other._c):
                if not v.is_zero():
                    out[i + j] = out[i + j] + u * v
        return XPoly(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(("XPoly", self._c))

    def render(self) -> str:
        if not self._c:
            return "0"
        parts = [f"({c.render()})*x^{j}" for j, c in enumerate(self._c) if not c.is_zero()]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"XPoly({self.render()})"


def q_pochhammer_x(N: int) -> XPoly:
    """(x; q)_N = prod_{l<N} (1 - x q^l)."""
    require(N >= 0, f"Pochhammer length must be non-negative, got {N}")
    result = XPoly([Poly.one()])
    for ell in range(N):
        result = result * XPoly([Poly.one(), -Poly.monomial(ell)])
    return result


def q_binomial_theorem_rhs(N: int) -> XPoly:
    """sum_k qbin(N, k) (-x)^k q^binom(k, 2)."""
    require(N >= 0, f"N must be non-negative, got {N}")
    return XPoly(
        q_binomial(N, k).shift(k * (k - 1) // 2).scale(-1 if k % 2 else 1)
        for k in range(N + 1)
    )


def first_difference(lhs: XPoly, rhs: XPoly) -> Poly:
    """Coefficient difference at the lowest x-power where the sides differ."""
    for j in range(max(len(lhs.coeffs), len(rhs.coeffs))):
        diff = lhs.coeff(j) - rhs.coeff(j)
        if not diff.is_zero():
            return diff
    return Poly.zero()


def check_q_binomial_theorem(N: int) -> CongruenceReport:
    start = time.perf_counter()
    remainder = first_difference(q_pochhammer_x(N), q_binomial_theorem_rhs(N))
    # k = 0 marks an exact identity rather than a congruence
    return CongruenceReport(
        family=Family.QBINTHM.value,
        params={"N": N, "n": N, "k": 0},
        holds=remainder.is_zero(),
        remainder=remainder,
        elapsed_ms=elapsed_since(start),
    )


def check_q_lucas(a: int, b: int, n: int) -> CongruenceReport:
    """qbin(an, bn) == binom(a, b) (mod Phi_n)."""
    require(0 <= b <= a, f"need 0 <= b <= a, got a={a}, b={b}")
    require(n >= 2, f"q-Lucas needs n >= 2, got {n}")
    modulus = CycloModulus.of(n, 1)
    lhs = q_binomial(a * n, b * n)
    report = congruent(lhs, binom(a, b), modulus, Family.QLUCAS.value, {"a": a, "b": b})
    return report.with_details(reduced=reduce_mod(lhs, modulus).render())
