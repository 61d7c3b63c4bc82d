"""
Exact arithmetic in Q(zeta_n) and truncated expansions at q = zeta (1 - eps).

zeta is the class of x modulo Phi_n(x); no floating point is involved.
"""
from __future__ import annotations

import logging
import math
import time
from fractions import Fraction
from typing import Callable, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from cyclo import CongruenceReport, cyclotomic, elapsed_since
from polyarith import Poly, RationalFunction, as_rational_function, poly_xgcd
from qcalc import q_binomial, sigma_power
from qcong import harmonic_sum, monomial_sides
from utils import (
    DenominatorVanishes,
    Family,
    InvalidResidueClass,
    ProofIdentity,
    ZeroInverse,
    binom,
    require,
)

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]

DEFAULT_Q_SAMPLES: Tuple[Fraction, ...] = (Fraction(2), Fraction(3), Fraction(1, 2))
DEFAULT_X_SAMPLES: Tuple[Fraction, ...] = (Fraction(2), Fraction(-3), Fraction(1, 3))


# ================================
# Q(zeta_n)
# ================================

class CyclotomicNumber:
    """Element of Q(zeta_n), stored as its residue modulo Phi_n."""

    __slots__ = ("n", "_r")

    def __init__(self, n: int, residue: Union[Poly, Iterable[Scalar]] = ()):
        self.n = n
        poly = residue if isinstance(residue, Poly) else Poly(residue)
        phi = cyclotomic(n)
        self._r = poly % phi if poly.degree >= phi.degree else poly

    @classmethod
    def rational(cls, n: int, c: Scalar) -> CyclotomicNumber:
        return cls(n, Poly.constant(c))

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> CyclotomicNumber:
        return cls(n, Poly.monomial(power % n))

    @property
    def poly(self) -> Poly:
        return self._r

    @property
    def residue(self) -> Tuple[Scalar, ...]:
        """Coordinates in the basis 1, zeta, ..., zeta^(phi(n)-1)."""
        size = cyclotomic(self.n).degree
        return tuple(self._r.coeff(i) for i in range(size))

    def is_zero(self) -> bool:
        return self._r.is_zero()

    def is_rational(self) -> bool:
        return self._r.is_constant()

    def _lift(self, other) -> Optional[CyclotomicNumber]:
        if isinstance(other, CyclotomicNumber):
            if other.n != self.n:
                raise ValueError(f"mixing Q(zeta_{self.n}) and Q(zeta_{other.n})")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(self.n, other)
        return None

    def __add__(self, other) -> CyclotomicNumber:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.n, self._r + o._r)

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber(self.n, -self._r)

    def __sub__(self, other) -> CyclotomicNumber:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.n, self._r - o._r)

    def __rsub__(self, other) -> CyclotomicNumber:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> CyclotomicNumber:
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.n, self._r.scale(other))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CyclotomicNumber(self.n, self._r * o._r)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        """Inverse via the extended Euclidean algorithm against Phi_n."""
        if self.is_zero():
            raise ZeroInverse(f"zero has no inverse in Q(zeta_{self.n})")
        g, s, _ = poly_xgcd(self._r, cyclotomic(self.n))
        if not g.is_one():
            raise ZeroInverse(f"{self.render()} is not invertible modulo Phi_{self.n}")
        return CyclotomicNumber(self.n, s)

    def __truediv__(self, other) -> CyclotomicNumber:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> CyclotomicNumber:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> CyclotomicNumber:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = CyclotomicNumber.rational(self.n, 1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclotomicNumber):
            return self.n == other.n and self._r == other._r
        if isinstance(other, (int, Fraction)):
            return self._r == Poly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("CyclotomicNumber", self.n, self._r))

    def render(self) -> str:
        return self._r.render("z")

    def __repr__(self) -> str:
        return f"CyclotomicNumber(n={self.n}, {self.render()})"


# ================================
# Truncated eps-series
# ================================

class EpsSeries:
    """sum c_i eps^i + O(eps^order) with coefficients in Q(zeta_n)."""

    __slots__ = ("n", "order", "coeffs")

    def __init__(self, n: int, coeffs: Sequence, order: Optional[int] = None):
        order = len(coeffs) if order is None else order
        require(order >= 1, f"series order must be positive, got {order}")
        out: List[CyclotomicNumber] = []
        for i in range(order):
            c = coeffs[i] if i < len(coeffs) else 0
            out.append(c if isinstance(c, CyclotomicNumber) else CyclotomicNumber.rational(n, c))
        self.n = n
        self.order = order
        self.coeffs: Tuple[CyclotomicNumber, ...] = tuple(out)

    @classmethod
    def zero(cls, n: int, order: int) -> EpsSeries:
        return cls(n, (), order)

    @classmethod
    def constant(cls, n: int, c, order: int) -> EpsSeries:
        return cls(n, (c,), order)

    def coeff(self, i: int) -> CyclotomicNumber:
        return self.coeffs[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def first_nonzero(self) -> Optional[int]:
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def _lift(self, other) -> Optional[EpsSeries]:
        if isinstance(other, EpsSeries):
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return EpsSeries.constant(self.n, other, self.order)
        return None

    def __add__(self, other) -> EpsSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        m = min(self.order, o.order)
        return EpsSeries(self.n, [self.coeffs[i] + o.coeffs[i] for i in range(m)], m)

    __radd__ = __add__

    def __neg__(self) -> EpsSeries:
        return EpsSeries(self.n, [-c for c in self.coeffs], self.order)

    def __sub__(self, other) -> EpsSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> EpsSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> EpsSeries:
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return EpsSeries(self.n, [c * other for c in self.coeffs], self.order)
        if not isinstance(other, EpsSeries):
            return NotImplemented
        m = min(self.order, other.order)
        out = []
        for k in range(m):
            acc = CyclotomicNumber.rational(self.n, 0)
            for i in range(k + 1):
                u, v = self.coeffs[i], other.coeffs[k - i]
                if not u.is_zero() and not v.is_zero():
                    acc = acc + u * v
            out.append(acc)
        return EpsSeries(self.n, out, m)

    __rmul__ = __mul__

    def inverse(self) -> EpsSeries:
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise DenominatorVanishes("series with zero constant term has no inverse")
        b0 = c0.inverse()
        out = [b0]
        for k in range(1, self.order):
            acc = CyclotomicNumber.rational(self.n, 0)
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-(b0 * acc))
        return EpsSeries(self.n, out, self.order)

    def __truediv__(self, other) -> EpsSeries:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, e: int) -> EpsSeries:
        if e < 0:
            return self.inverse() ** (-e)
        result = EpsSeries.constant(self.n, 1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, EpsSeries):
            return NotImplemented
        return self.n == other.n and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("EpsSeries", self.n, self.coeffs))

    def render(self) -> List[str]:
        return [f"eps^{i}: {c.render()}" for i, c in enumerate(self.coeffs)]

    def __repr__(self) -> str:
        return f"EpsSeries(n={self.n}, {'; '.join(self.render())})"


def _check_twist(n: int, twist: int) -> None:
    require(math.gcd(twist, n) == 1, f"zeta^{twist} is not a primitive {n}-th root")


def binomial_series(N: Scalar, n: int, order: int) -> EpsSeries:
    """(1 - eps)^N for any rational exponent N (generalised binomial)."""
    out: List[Fraction] = []
    c = Fraction(1)
    for i in range(order):
        out.append(c if i % 2 == 0 else -c)
        c = c * (Fraction(N) - i) / (i + 1)
    return EpsSeries(n, out, order)


def expand_poly_at_root(p: Poly, n: int, order: int, twist: int = 1) -> EpsSeries:
    """
    Substitute q = zeta^twist (1 - eps) into p and truncate.

    Args:
        p: polynomial in q.
        n: order of the root of unity.
        order: number of eps-coefficients kept.
        twist: exponent t with gcd(t, n) = 1 selecting the primitive root zeta^t.

    Returns:
        EpsSeries of length `order`.
    """
    require(order >= 1, f"series order must be positive, got {order}")
    _check_twist(n, twist)
    # acc[i][r]: rational weight of zeta^r in the eps^i coefficient
    acc = [[0] * n for _ in range(order)]
    for j, c in enumerate(p.coeffs):
        if not c:
            continue
        r = (j * twist) % n
        for i in range(min(order, j + 1)):
            acc[i][r] += c * math.comb(j, i)
    coeffs = []
    for i, row in enumerate(acc):
        value = CyclotomicNumber(n, Poly(row))
        coeffs.append(-value if i % 2 else value)
    return EpsSeries(n, coeffs, order)


def expand_ratfun_at_root(
    r: Union[RationalFunction, Poly], n: int, order: int, twist: int = 1
) -> EpsSeries:
    """
    Raises:
        DenominatorVanishes: when Phi_n divides the denominator.
    """
    rf = as_rational_function(r)
    num = expand_poly_at_root(rf.num, n, order, twist)
    if rf.den.is_one():
        return num
    den = expand_poly_at_root(rf.den, n, order, twist)
    if den.coeffs[0].is_zero():
        raise DenominatorVanishes(f"denominator {rf.den.render()} vanishes at zeta_{n}")
    return num * den.inverse()


# ================================
# Closed forms
# ================================

class LemmaConstants(NamedTuple):
    rho0: Fraction
    rho1: Fraction
    rho0_hat: Fraction
    rho1_hat: Fraction


def lemma_constants(a: int, b: int, n: int) -> LemmaConstants:
    an = a * n
    rho0 = Fraction(3 * (an - 1) ** 2 - a * n * n - 1, 24)
    rho1 = Fraction(
        a * b * n * n * (an - 1) * (an - n - 2)
        + (an + 2) * (an - 1) ** 2 * (an - 3)
        + a * n * n + a + 2,
        48,
    )
    rho0_hat = Fraction(3 * (an - 1) ** 2 - (a + 1) * n * n, 24)
    rho1_hat = (
        Fraction(b * n * (an - 1) * ((an - 1) ** 2 - (a + 1) * n * n), 48)
        + Fraction(an * (an - 1) ** 3 - 6 * (an - 1) ** 2 + 2 * (a + 1) * n * n, 48)
    )
    return LemmaConstants(rho0, rho1, rho0_hat, rho1_hat)


def _w(y: CyclotomicNumber) -> CyclotomicNumber:
    """y / (1 - y)."""
    return y * (1 - y).inverse()


def s_at_zeta(n: int, twist: int = 1) -> CyclotomicNumber:
    """S_{n-1} evaluated at zeta^twist."""
    require(n >= 1, f"S needs n >= 1, got {n}")
    _check_twist(n, twist)
    total = CyclotomicNumber.rational(n, 0)
    for k in range(1, n):
        z = CyclotomicNumber.zeta(n, k * twist)
        term = z * ((k + 1) * z + (k - 1)) * (1 - z).inverse() ** 3
        total = total + term * k
    return total * Fraction(1, 2)


# ================================
# Series verification
# ================================

def _series_report(
    family: Family,
    params: dict,
    actual: EpsSeries,
    predicted: Sequence,
    start: float,
) -> CongruenceReport:
    expected = EpsSeries(actual.n, predicted, actual.order)
    diff = actual - expected
    index = diff.first_nonzero()
    details = {"series": " | ".join(actual.render())}
    if index is None:
        remainder = Poly.zero()
    else:
        remainder = diff.coeffs[index].poly
        details["mismatch_at"] = f"eps^{index}"
        logger.info("[rootexpand] %s %s mismatch at eps^%d", family.value, params, index)
    return CongruenceReport(
        family=family.value,
        params={**params, "k": actual.order},
        holds=index is None,
        remainder=remainder,
        elapsed_ms=elapsed_since(start),
        details=details,
    )


def _check_lemma_params(a: int, b: int, n: int, order: int) -> None:
    require(0 <= b <= a, f"need 0 <= b <= a, got a={a}, b={b}")
    require(a >= 1, "the expansion needs a >= 1")
    require(n >= 1, f"need n >= 1, got {n}")
    require(1 <= order <= 4, f"closed forms are known through eps^3, got order {order}")


def lemma1_combination(a: int, b: int, n: int) -> Poly:
    """qbin(an,bn) sigma^b q^binom(bn,2) - binom(a-1,b) - binom(a-1,a-b) sigma^a q^binom(an,2)."""
    lhs, rhs = monomial_sides(a, b, n)
    return lhs.as_poly() - rhs.as_poly()


def lemma3_combination(a: int, b: int, n: int) -> Poly:
    _, rhs = monomial_sides(a, b, n)
    weight = Poly.monomial(binom(b * n, 2), sigma_power(n, b))
    return q_binomial(a, b).subst_power(n * n) * weight - rhs.as_poly()


def lemma1_prediction(a: int, b: int, n: int, twist: int = 1) -> List:
    c = b * (a - b) * binom(a, b)
    k = lemma_constants(a, b, n)
    eps3 = (s_at_zeta(n, twist) * (a * n) + k.rho1 * n * n) * c
    return [0, 0, -c * n * n * k.rho0, eps3]


def lemma3_prediction(a: int, b: int, n: int) -> List:
    c = b * (a - b) * binom(a, b)
    k = lemma_constants(a, b, n)
    return [0, 0, -c * n * n * k.rho0_hat, c * n * n * k.rho1_hat]


def verify_lemma1(a: int, b: int, n: int, order: int = 4, twist: int = 1) -> CongruenceReport:
    start = time.perf_counter()
    _check_lemma_params(a, b, n, order)
    series = expand_poly_at_root(lemma1_combination(a, b, n), n, order, twist)
    params = {"a": a, "b": b, "n": n}
    if twist != 1:
        params["twist"] = twist
    return _series_report(Family.LEMMA1, params, series, lemma1_prediction(a, b, n, twist), start)


def verify_lemma3(a: int, b: int, n: int, order: int = 4, twist: int = 1) -> CongruenceReport:
    start = time.perf_counter()
    _check_lemma_params(a, b, n, order)
    series = expand_poly_at_root(lemma3_combination(a, b, n), n, order, twist)
    params = {"a": a, "b": b, "n": n}
    if twist != 1:
        params["twist"] = twist
    return _series_report(Family.LEMMA3, params, series, lemma3_prediction(a, b, n), start)


def harmonic_expansion_prediction(n: int) -> List:
    return [Fraction(-(n - 1), 2), Fraction((n * n - 1) * n, 24), s_at_zeta(n)]


def lemma2_substitute(n: int) -> RationalFunction:
    """H + (n-1)/2 + (n^2-1)/24 (q^n-1) - (n-1)(n^2-1)/(48n) (q^n-1)^2, which is eps^2 S(zeta) + O(eps^3)."""
    u = Poly.monomial(n) - 1
    poly = u * Fraction(n * n - 1, 24) - u ** 2 * Fraction((n - 1) * (n * n - 1), 48 * n)
    return harmonic_sum(n) + poly + Fraction(n - 1, 2)


def verify_lemma2_eq3(n: int) -> CongruenceReport:
    """
    Three checks at order 3: the expansion of H_{n-1}, the inversion of
    q^n - 1 in terms of eps, and the eps^2 S(zeta) substitute.
    """
    start = time.perf_counter()
    require(n >= 2, f"need n >= 2, got {n}")
    order = 3

    h = expand_ratfun_at_root(harmonic_sum(n), n, order)
    d1 = h - EpsSeries(n, harmonic_expansion_prediction(n), order)

    u = expand_poly_at_root(Poly.monomial(n) - 1, n, order)
    eps = u * Fraction(-1, n) + u * u * Fraction(n - 1, 2 * n * n)
    d2 = eps - EpsSeries(n, [0, 1], order)

    sub = expand_ratfun_at_root(lemma2_substitute(n), n, order)
    d3 = sub - EpsSeries(n, [0, 0, s_at_zeta(n)], order)

    details = {"series": " | ".join(h.render())}
    remainder = Poly.zero()
    for name, diff in (("expansion", d1), ("inversion", d2), ("substitute", d3)):
        index = diff.first_nonzero()
        details[name] = "holds" if index is None else f"mismatch at eps^{index}"
        if index is not None and remainder.is_zero():
            remainder = diff.coeffs[index].poly
    return CongruenceReport(
        family=Family.EQ3.value,
        params={"n": n, "k": order},
        holds=remainder.is_zero(),
        remainder=remainder,
        elapsed_ms=elapsed_since(start),
        details=details,
    )


# ================================
# Identities used inside the proofs
# ================================

def _identity_report(family: Family, params: dict, mismatch: Optional[CyclotomicNumber],
                     start: float, details: Optional[dict] = None) -> CongruenceReport:
    # k = 0 marks an exact identity rather than a congruence
    return CongruenceReport(
        family=family.value,
        params={**params, "k": 0},
        holds=mismatch is None,
        remainder=Poly.zero() if mismatch is None else mismatch.poly,
        elapsed_ms=elapsed_since(start),
        details=details or {},
    )


def _first_mismatch(lhs: Sequence[CyclotomicNumber], rhs: Sequence[CyclotomicNumber]) -> Optional[CyclotomicNumber]:
    for u, v in zip(lhs, rhs):
        d = u - v
        if not d.is_zero():
            return d
    return None


def check_root_filter(a: int, n: int, samples: Sequence[Scalar] = DEFAULT_Q_SAMPLES) -> CongruenceReport:
    """1/n sum_j (zeta^j x; q)_{an} = sum_b qbin(an,bn) (-x)^{bn} q^binom(bn,2), at sample values of q."""
    start = time.perf_counter()
    require(a >= 1 and n >= 1, f"need a, n >= 1, got a={a}, n={n}")
    N = a * n
    zero = CyclotomicNumber.rational(n, 0)
    mismatch = None
    for q0 in samples:
        q0 = Fraction(q0)
        lhs = [zero] * (N + 1)
        for j in range(1, n + 1):
            z = CyclotomicNumber.zeta(n, j)
            poly = [CyclotomicNumber.rational(n, 1)] + [zero] * N
            for ell in range(N):
                c = z * (q0 ** ell)
                for i in range(ell + 1, 0, -1):
                    poly[i] = poly[i] - c * poly[i - 1]
            lhs = [u + v for u, v in zip(lhs, poly)]
        lhs = [u * Fraction(1, n) for u in lhs]
        rhs = [zero] * (N + 1)
        for b in range(a + 1):
            k = b * n
            value = q_binomial(N, k)(q0) * q0 ** (k * (k - 1) // 2)
            rhs[k] = CyclotomicNumber.rational(n, -value if k % 2 else value)
        mismatch = _first_mismatch(lhs, rhs)
        if mismatch is not None:
            break
    return _identity_report(Family.ROOT_FILTER, {"a": a, "n": n}, mismatch, start)


def _check_residues(n: int, k: Optional[int], l: Optional[int]) -> None:
    if k is not None and k % n == 0:
        raise InvalidResidueClass(f"k={k} must not be divisible by n={n}")
    if l is not None:
        if k is None:
            raise InvalidResidueClass("l requires k")
        if l % n == 0 or (k - l) % n == 0:
            raise InvalidResidueClass(f"need l and k-l not divisible by n, got k={k}, l={l}, n={n}")


def _summation_formulae(
    n: int, k: Optional[int], l: Optional[int]
) -> List[Tuple[str, Callable[[CyclotomicNumber], CyclotomicNumber], Callable[[Fraction], CyclotomicNumber]]]:
    def geo(X: Fraction) -> Fraction:
        return X / (1 - X)

    def rat(value: Fraction) -> CyclotomicNumber:
        return CyclotomicNumber.rational(n, value)

    formulae = [
        ("1", lambda y: _w(y), lambda X: rat(geo(X))),
        ("2", lambda y: _w(y) ** 2, lambda X: rat(n * X / (1 - X) ** 2 - geo(X))),
        ("4", lambda y: _w(y) ** 3, lambda X: rat(
            Fraction(n * n) * X * (1 + X) / (2 * (1 - X) ** 3)
            - Fraction(3 * n) * X / (2 * (1 - X) ** 2)
            + geo(X)
        )),
    ]
    if k is not None:
        zk = CyclotomicNumber.zeta(n, k)
        formulae.append(("3", lambda y: _w(y) * _w(zk * y), lambda X: rat(-geo(X))))
        formulae.append(("6", lambda y: _w(y) ** 2 * _w(zk * y),
                         lambda X: _w(zk) * (n * X / (1 - X) ** 2) + geo(X)))
        if l is not None:
            zl = CyclotomicNumber.zeta(n, l)
            formulae.append(("5", lambda y: _w(y) * _w(zk * y) * _w(zl * y), lambda X: rat(geo(X))))
    return formulae


def check_summations(
    n: int,
    k: Optional[int] = None,
    l: Optional[int] = None,
    samples: Sequence[Scalar] = DEFAULT_X_SAMPLES,
) -> CongruenceReport:
    """Averages of products of y/(1-y) over y = zeta^j x, against their closed forms in X = x^n."""
    start = time.perf_counter()
    require(n >= 1, f"need n >= 1, got {n}")
    _check_residues(n, k, l)
    formulae = _summation_formulae(n, k, l)
    mismatch = None
    failed = ""
    for x0 in samples:
        x0 = Fraction(x0)
        X = x0 ** n
        require(X != 1 and x0 != 0, f"sample x={x0} is a root of unity or zero")
        for name, term, closed in formulae:
            total = CyclotomicNumber.rational(n, 0)
            for j in range(1, n + 1):
                total = total + term(CyclotomicNumber.zeta(n, j) * x0)
            diff = total * Fraction(1, n) - closed(X)
            if not diff.is_zero():
                mismatch, failed = diff, name
                break
        if mismatch is not None:
            break
    params = {"n": n}
    if k is not None:
        params["kk"] = k
    if l is not None:
        params["l"] = l
    details = {"formulae": ",".join(sorted(name for name, _, _ in formulae))}
    if failed:
        details["failed"] = failed
    return _identity_report(Family.SUMMATIONS, params, mismatch, start, details)


def exceptional_sums(a: int, n: int) -> Tuple[CyclotomicNumber, CyclotomicNumber]:
    """
    Brute-force double and triple sums over 1 <= l_i <= an - 1:
    T2 = sum_{l1 != l2 mod n} l1^2 l2 w(l2 - l1) and
    T3 = sum_{l1 == l2 != l3 mod n} l1 l2 l3 w(l3 - l1), with w(r) = zeta^r/(1 - zeta^r).
    """
    N = a * n
    w = [CyclotomicNumber.rational(n, 0)] + [_w(CyclotomicNumber.zeta(n, r)) for r in range(1, n)]
    c2 = [0] * n
    c3 = [0] * n
    for l1 in range(1, N):
        for l2 in range(1, N):
            d = (l2 - l1) % n
            if d:
                c2[d] += l1 * l1 * l2
            else:
                for l3 in range(1, N):
                    e = (l3 - l1) % n
                    if e:
                        c3[e] += l1 * l2 * l3
    t2 = CyclotomicNumber.rational(n, 0)
    t3 = CyclotomicNumber.rational(n, 0)
    for r in range(1, n):
        t2 = t2 + w[r] * c2[r]
        t3 = t3 + w[r] * c3[r]
    return t2, t3


def exceptional_closed_forms(a: int, n: int) -> Tuple[CyclotomicNumber, CyclotomicNumber]:
    an = a * n
    two_s = s_at_zeta(n) * 2
    t2 = two_s * (-a * a) - Fraction(a * a * n * (n - 1) * (an * (an - 1) * (2 * an - 3) - a * n * n - 1), 24)
    t3 = two_s * (-a ** 3) - Fraction(
        a ** 3 * n * (n - 1) * (3 * an * (an - 1) * (an - 2) + n * n * (an - 2 * a - 1) - 2), 48
    )
    return t2, t3


def check_exceptional_sums(a: int, n: int) -> CongruenceReport:
    start = time.perf_counter()
    require(a >= 1 and n >= 1, f"need a, n >= 1, got a={a}, n={n}")
    brute = exceptional_sums(a, n)
    closed = exceptional_closed_forms(a, n)
    mismatch = _first_mismatch(brute, closed)
    details = {"double": brute[0].render(), "triple": brute[1].render()}
    return _identity_report(Family.EXCEPTIONAL, {"a": a, "n": n}, mismatch, start, details)


def check_cong_asymp(a: int, b: int, n: int) -> CongruenceReport:
    """qbin(an,bn) (1-eps)^binom(bn,2) = binom(a-1,b) + binom(a-1,a-b) (1-eps)^binom(an,2) + O(eps^2)."""
    start = time.perf_counter()
    _check_lemma_params(a, b, n, 2)
    order = 2
    lhs = expand_poly_at_root(q_binomial(a * n, b * n), n, order) * binomial_series(binom(b * n, 2), n, order)
    rhs = binomial_series(binom(a * n, 2), n, order) * binom(a - 1, a - b) + binom(a - 1, b)
    return _series_report(Family.CONG_ASYMP, {"a": a, "b": b, "n": n}, lhs - rhs, [0, 0], start)


def verify_proof_identities(
    kind: ProofIdentity,
    *,
    n: int,
    a: Optional[int] = None,
    b: Optional[int] = None,
    k: Optional[int] = None,
    l: Optional[int] = None,
    samples: Optional[Sequence[Scalar]] = None,
) -> CongruenceReport:
    kind = ProofIdentity(kind)
    if kind is ProofIdentity.ROOT_FILTER:
        require(a is not None, "root_filter needs a")
        return check_root_filter(a, n, samples or DEFAULT_Q_SAMPLES)
    if kind is ProofIdentity.SUMMATIONS:
        return check_summations(n, k, l, samples or DEFAULT_X_SAMPLES)
    if kind is ProofIdentity.EXCEPTIONAL:
        require(a is not None, "exceptional needs a")
        return check_exceptional_sums(a, n)
    require(a is not None and b is not None, "cong_asymp needs a and b")
    return check_cong_asymp(a, b, n)
