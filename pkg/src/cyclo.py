from __future__ import annotations

import logging
import threading
import time
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Dict, Optional, TypeAlias, Union

from sympy import divisors, factorint

from polyarith import Poly, RationalFunction, as_rational_function
from utils import DenominatorNotCoprime, Params, require

logger = logging.getLogger(__name__)

LatencyMs: TypeAlias = int
Operand: TypeAlias = Union[Poly, RationalFunction, int]


class CyclotomicCache:
    """Memo of Phi_n, filled at most once per n."""

    def __init__(self):
        self._cache: Dict[int, Poly] = {}
        self.lock = threading.RLock()

    def get(self, n: int) -> Optional[Poly]:
        return self._cache.get(n)

    def set(self, n: int, phi: Poly) -> None:
        self._cache[n] = phi

    def clear(self) -> None:
        with self.lock:
            self._cache.clear()

    def __len__(self) -> int:
        return len(self._cache)


# Global cache instance
_cyclo_cache = CyclotomicCache()


def cyclotomic(n: int) -> Poly:
    """
    The n-th cyclotomic polynomial, as (q^n - 1) divided exactly by Phi_d
    for the proper divisors d of n.
    """
    require(n >= 1, f"cyclotomic index must be positive, got {n}")
    phi = _cyclo_cache.get(n)
    if phi is not None:
        return phi
    with _cyclo_cache.lock:
        phi = _cyclo_cache.get(n)
        if phi is not None:
            return phi
        proper = Poly.product(cyclotomic(int(d)) for d in divisors(n) if d < n)
        phi = (Poly.monomial(n) - 1).exact_div(proper)
        _cyclo_cache.set(n, phi)
        logger.debug("[cyclo] cached Phi_%d (degree %d)", n, phi.degree)
    return phi


def mobius(m: int) -> int:
    exponents = factorint(m).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


def cyclotomic_mobius(n: int) -> Poly:
    """Phi_n as the Moebius product of (q^d - 1) over d | n."""
    require(n >= 1, f"cyclotomic index must be positive, got {n}")
    num, den = [], []
    for d in divisors(n):
        mu = mobius(n // int(d))
        if mu == 1:
            num.append(Poly.monomial(int(d)) - 1)
        elif mu == -1:
            den.append(Poly.monomial(int(d)) - 1)
    return Poly.product(num).exact_div(Poly.product(den))


# ================================
# Modulus and reports
# ================================

@dataclass(frozen=True)
class CycloModulus:
    n: int
    k: int
    phi: Poly
    phi_pow: Poly

    @classmethod
    def of(cls, n: int, k: int) -> CycloModulus:
        return _modulus(n, k)

    def __str__(self) -> str:
        return f"Phi_{self.n}^{self.k}"


@lru_cache(maxsize=None)
def _modulus(n: int, k: int) -> CycloModulus:
    require(k >= 1, f"modulus exponent must be positive, got {k}")
    phi = cyclotomic(n)
    return CycloModulus(n=n, k=k, phi=phi, phi_pow=phi ** k)


@dataclass(frozen=True)
class CongruenceReport:
    """
    Outcome of one congruence check.

    remainder is (num_A*den_B - num_B*den_A) mod Phi_n^k, with num/den the
    reduced numerator and monic denominator of each side. It differs from the
    numerator of A - B by a unit mod Phi_n, so it is zero exactly when the
    congruence holds.
    """

    family: str
    params: Params
    holds: bool
    remainder: Poly
    elapsed_ms: LatencyMs = 0
    exploratory: bool = False
    details: Dict[str, str] = field(default_factory=dict)

    def reduced(self, k: int) -> Poly:
        """The stored remainder re-reduced modulo Phi_n^k for k at most the tested power."""
        require(1 <= k <= int(self.params["k"]), f"cannot re-reduce to power {k}")
        return reduce_mod(self.remainder, CycloModulus.of(int(self.params["n"]), k))

    def with_details(self, **details: str) -> CongruenceReport:
        return replace(self, details={**self.details, **details})


def reduce_mod(p: Poly, modulus: CycloModulus) -> Poly:
    return p % modulus.phi_pow


def elapsed_since(start: float) -> LatencyMs:
    return int((time.perf_counter() - start) * 1000)


def congruent(
    a: Operand,
    b: Operand,
    modulus: CycloModulus,
    family: str = "congruence",
    params: Optional[Params] = None,
) -> CongruenceReport:
    """
    Decide a == b (mod Phi_n^k) for polynomials or rational functions.

    Both denominators must be coprime to Phi_n. The remainder is
    num(a)*den(b) - num(b)*den(a) reduced modulo Phi_n^k; the congruence holds
    iff it is zero.

    Raises:
        DenominatorNotCoprime: if Phi_n divides a denominator (ill-posed).
    """
    start = time.perf_counter()
    ra, rb = as_rational_function(a), as_rational_function(b)
    for side, den in (("left", ra.den), ("right", rb.den)):
        if not den.is_constant() and (den % modulus.phi).is_zero():
            raise DenominatorNotCoprime(
                f"{side} denominator {den.render()} is divisible by Phi_{modulus.n}"
            )

    m = modulus.phi_pow
    if ra.den.is_one() and rb.den.is_one():
        remainder = (ra.num - rb.num) % m
    else:
        remainder = ((ra.num % m) * (rb.den % m) - (rb.num % m) * (ra.den % m)) % m

    merged: Params = dict(params or {})
    merged["n"] = modulus.n
    merged["k"] = modulus.k
    holds = remainder.is_zero()
    logger.debug("[cyclo] %s %s mod %s: %s", family, merged, modulus, "holds" if holds else "fails")
    return CongruenceReport(
        family=family,
        params=merged,
        holds=holds,
        remainder=remainder,
        elapsed_ms=elapsed_since(start),
    )
