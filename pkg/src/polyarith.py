"""
Exact univariate polynomial and rational-function arithmetic over Q.

Coefficients are Python ints where integral and fractions.Fraction otherwise,
so integer-only work stays on the fast int path. All values are immutable.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Final, Iterable, List, Optional, Sequence, Tuple, TypeAlias, Union

from config import settings
from utils import NotDivisible, PolyZeroDivision, require

Coeff: TypeAlias = Union[int, Fraction]
Scalar: TypeAlias = Union[int, Fraction]

NEG_INFINITY: Final[float] = float("-inf")


# ================================
# Coefficient helpers
# ================================

def _coeff(c) -> Coeff:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _coeff(Fraction(int(c.numerator), int(c.denominator)))
    raise TypeError(f"not an exact rational coefficient: {c!r}")


def _div(x: Coeff, y: Coeff) -> Coeff:
    """Exact quotient of two coefficients."""
    if y == 1:
        return x
    if y == -1:
        return -x
    if type(x) is int and type(y) is int:
        quot, r = divmod(x, y)
        if r == 0:
            return quot
        return Fraction(x, y)
    return _coeff(Fraction(x) / y)


def _pack(values: Iterable) -> Tuple[Coeff, ...]:
    out = [_coeff(c) for c in values]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def format_rational(c: Scalar) -> str:
    """Canonical rendering: integers as-is, other rationals as p/q."""
    c = _coeff(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


# ================================
# Multiplication kernels
# ================================

def _schoolbook(a: Sequence[Coeff], b: Sequence[Coeff]) -> List[Coeff]:
    if not a or not b:
        return []
    res: List[Coeff] = [0] * (len(a) + len(b) - 1)
    nz_b = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            for j, y in nz_b:
                res[i + j] += x * y
    return res


def _add_into(res: List[Coeff], src: Sequence[Coeff], offset: int, sign: int = 1) -> None:
    for i, c in enumerate(src):
        if c:
            res[offset + i] += c if sign > 0 else -c


def _sum_lists(a: Sequence[Coeff], b: Sequence[Coeff]) -> List[Coeff]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _karatsuba(a: Sequence[Coeff], b: Sequence[Coeff], threshold: int) -> List[Coeff]:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return []
    if len(b) <= threshold:
        return _schoolbook(a, b)

    m = (len(a) + 1) // 2
    res: List[Coeff] = [0] * (len(a) + len(b) - 1)
    if len(b) <= m:
        # unbalanced: split only the longer operand
        _add_into(res, _karatsuba(a[:m], b, threshold), 0)
        _add_into(res, _karatsuba(a[m:], b, threshold), m)
        return res

    a0, a1 = a[:m], a[m:]
    b0, b1 = b[:m], b[m:]
    z0 = _karatsuba(a0, b0, threshold)
    z2 = _karatsuba(a1, b1, threshold)
    z1 = _karatsuba(_sum_lists(a0, a1), _sum_lists(b0, b1), threshold)

    _add_into(res, z0, 0)
    _add_into(res, z2, 2 * m)
    _add_into(res, z1, m)
    _add_into(res, z0, m, -1)
    _add_into(res, z2, m, -1)
    return res


def mul_schoolbook(p: Poly, q: Poly) -> Poly:
    return Poly(_schoolbook(p.coeffs, q.coeffs))


def mul_karatsuba(p: Poly, q: Poly, threshold: Optional[int] = None) -> Poly:
    t = settings.karatsuba_threshold if threshold is None else threshold
    return Poly(_karatsuba(p.coeffs, q.coeffs, max(1, t)))


# ================================
# Poly
# ================================

class Poly:
    """Dense polynomial in q; coeffs[i] is the coefficient of q^i."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self._c: Tuple[Coeff, ...] = _pack(coeffs)
        self._hash: Optional[int] = None

    # ---- constructors ----
    @classmethod
    def zero(cls) -> Poly:
        return cls()

    @classmethod
    def one(cls) -> Poly:
        return cls((1,))

    @classmethod
    def constant(cls, c: Scalar) -> Poly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Scalar = 1) -> Poly:
        require(k >= 0, f"monomial exponent must be non-negative, got {k}")
        return cls([0] * k + [c])

    @staticmethod
    def product(factors: Iterable[Poly]) -> Poly:
        """Product of many factors as a balanced tree."""
        items = list(factors)
        if not items:
            return Poly.one()
        while len(items) > 1:
            items = [
                items[i] * items[i + 1] if i + 1 < len(items) else items[i]
                for i in range(0, len(items), 2)
            ]
        return items[0]

    # ---- inspection ----
    @property
    def coeffs(self) -> Tuple[Coeff, ...]:
        return self._c

    @property
    def degree(self) -> Union[int, float]:
        return len(self._c) - 1 if self._c else NEG_INFINITY

    @property
    def leading(self) -> Coeff:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == (1,)

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._c)

    def nnz(self) -> int:
        return sum(1 for c in self._c if c)

    def coeff(self, i: int) -> Coeff:
        return self._c[i] if 0 <= i < len(self._c) else 0

    def terms(self) -> List[Tuple[int, Coeff]]:
        """Nonzero (exponent, coefficient) pairs, highest exponent first."""
        return [(i, self._c[i]) for i in range(len(self._c) - 1, -1, -1) if self._c[i]]

    # ---- arithmetic ----
    def __add__(self, other) -> Poly:
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return Poly(_sum_lists(self._c, other._c))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self._c)

    def __sub__(self, other) -> Poly:
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c: Scalar) -> Poly:
        c = _coeff(c)
        if c == 0:
            return Poly.zero()
        if c == 1:
            return self
        return Poly(x * c for x in self._c)

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return Poly.zero()
        threshold = max(1, settings.karatsuba_threshold)
        if min(self.nnz(), other.nnz()) <= threshold:
            return Poly(_schoolbook(self._c, other._c))
        return Poly(_karatsuba(self._c, other._c, threshold))

    def __rmul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int) -> Poly:
        require(e >= 0, f"negative polynomial power {e}")
        result, base = Poly.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise PolyZeroDivision("division of a polynomial by zero")
            return self.scale(_div(1, _coeff(other)))
        if isinstance(other, (Poly, RationalFunction)):
            return RationalFunction(self) / other
        return NotImplemented

    def divrem(self, other: Poly) -> Tuple[Poly, Poly]:
        """Long division: self = other*quot + rem with deg rem < deg other."""
        if other.is_zero():
            raise PolyZeroDivision("polynomial division by the zero polynomial")
        dq = len(other._c) - 1
        if len(self._c) - 1 < dq:
            return Poly.zero(), self
        rem = list(self._c)
        lc = other._c[-1]
        tail = [(i, c) for i, c in enumerate(other._c[:-1]) if c]
        quot: List[Coeff] = [0] * (len(rem) - dq)
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq]
            if c:
                f = _div(c, lc)
                quot[k] = f
                for i, oc in tail:
                    rem[k + i] -= f * oc
        return Poly(quot), Poly(rem[:dq])

    def __divmod__(self, other: Poly) -> Tuple[Poly, Poly]:
        return self.divrem(other)

    def __mod__(self, other: Poly) -> Poly:
        return self.divrem(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        quot, rem = self.divrem(other)
        if not rem.is_zero():
            raise NotDivisible(f"{other.render()} does not divide {self.render()}")
        return quot

    # ---- transformations ----
    def subst_power(self, m: int) -> Poly:
        """P(q^m)."""
        require(m >= 1, f"substitution power must be positive, got {m}")
        if m == 1 or len(self._c) <= 1:
            return self
        out: List[Coeff] = [0] * (m * (len(self._c) - 1) + 1)
        for i, c in enumerate(self._c):
            out[m * i] = c
        return Poly(out)

    def shift(self, k: int) -> Poly:
        """Multiply by q^k."""
        require(k >= 0, f"shift must be non-negative, got {k}")
        if k == 0 or not self._c:
            return self
        return Poly((0,) * k + self._c)

    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive."""
        if not self._c:
            return Fraction(0)
        den = math.lcm(*(Fraction(c).denominator for c in self._c))
        g = math.gcd(*(int(c * den) for c in self._c))
        return Fraction(g, den)

    def primitive_part(self) -> Poly:
        if not self._c:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return self.scale(_div(1, _coeff(c)))

    def monic(self) -> Poly:
        if not self._c:
            return self
        return self.scale(_div(1, self.leading))

    def __call__(self, x: Scalar) -> Coeff:
        acc: Coeff = 0
        for c in reversed(self._c):
            acc = acc * x + c
        return _coeff(acc)

    # ---- comparison / display ----
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("Poly", self._c))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._c)

    def __reduce__(self):
        # the cached hash is process-local
        return (Poly, (self._c,))

    def render(self, var: str = "q") -> str:
        if not self._c:
            return "0"
        out = []
        for i, c in self.terms():
            mag = -c if c < 0 else c
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            elif isinstance(mag, int):
                body = f"{mag}{mono}"
            else:
                body = f"({format_rational(mag)}){mono}"
            if not out:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def _as_poly(x) -> Optional[Poly]:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.constant(x)
    return None


Q: Final[Poly] = Poly((0, 1))


# ================================
# gcd
# ================================

def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q via the primitive Euclidean algorithm."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.degree == 0 or q.degree == 0:
        return Poly.one()
    a, b = p.primitive_part(), q.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return Poly.one()
        _, r = a.divrem(b)
        a, b = b, r.primitive_part()
    return a.monic()


def poly_xgcd(p: Poly, q: Poly) -> Tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*p + t*q = g and g monic."""
    r0, r1 = p, q
    s0, s1 = Poly.one(), Poly.zero()
    t0, t1 = Poly.zero(), Poly.one()
    while not r1.is_zero():
        quo, rem = r0.divrem(r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quo * s1
        t0, t1 = t1, t0 - quo * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = _div(1, r0.leading)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# ================================
# RationalFunction
# ================================

class RationalFunction:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num) if not isinstance(num, Poly) else num
        den = Poly.one() if den is None else (den if isinstance(den, Poly) else _as_poly(den))
        if num is None or den is None:
            raise TypeError("RationalFunction needs polynomial or rational arguments")
        if den.is_zero():
            raise PolyZeroDivision("rational function with zero denominator")
        if not num.is_zero() and not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num.exact_div(g), den.exact_div(g)
        self._set(num, den)

    def _set(self, num: Poly, den: Poly) -> None:
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        elif den.leading != 1:
            inv = _div(1, den.leading)
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def _coprime(cls, num: Poly, den: Poly) -> RationalFunction:
        """Build from a pair already known to be coprime."""
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def from_coprime(cls, num: Poly, den: Poly) -> RationalFunction:
        """Skip the gcd; the caller guarantees gcd(num, den) = 1."""
        return cls._coprime(num, den)

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> RationalFunction:
        """c*q^e for any integer e."""
        if e >= 0:
            return cls._coprime(Poly.monomial(e, c), Poly.one())
        return cls._coprime(Poly.constant(c), Poly.monomial(-e))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise NotDivisible(f"{self.render()} is not a polynomial")
        return self.num

    # ---- arithmetic (Henrici) ----
    def __add__(self, other) -> RationalFunction:
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            if b.is_one():
                return RationalFunction._coprime(a + c, b)
            return RationalFunction(a + c, b)
        g = poly_gcd(b, d)
        if g.is_one():
            return RationalFunction._coprime(a * d + c * b, b * d)
        b1, d1 = b.exact_div(g), d.exact_div(g)
        t = a * d1 + c * b1
        h = poly_gcd(t, g)
        if not h.is_one():
            t, g = t.exact_div(h), g.exact_div(h)
        return RationalFunction._coprime(t, b1 * d1 * g)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction._coprime(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RationalFunction:
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> RationalFunction:
        if isinstance(other, (int, Fraction)):
            return RationalFunction._coprime(self.num.scale(other), self.den)
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        g1, g2 = poly_gcd(a, d), poly_gcd(c, b)
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RationalFunction._coprime(a * c, b * d)

    __rmul__ = __mul__

    def reciprocal(self) -> RationalFunction:
        if self.is_zero():
            raise PolyZeroDivision("reciprocal of the zero rational function")
        return RationalFunction._coprime(self.den, self.num)

    def __truediv__(self, other) -> RationalFunction:
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> RationalFunction:
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, e: int) -> RationalFunction:
        if e < 0:
            return self.reciprocal() ** (-e)
        return RationalFunction._coprime(self.num ** e, self.den ** e)

    def subst_power(self, m: int) -> RationalFunction:
        # q -> q^m keeps coprimality and the leading coefficient of den
        return RationalFunction._coprime(self.num.subst_power(m), self.den.subst_power(m))

    def __call__(self, x: Scalar) -> Coeff:
        d = self.den(x)
        if d == 0:
            raise PolyZeroDivision(f"denominator vanishes at q={x}")
        return _div(self.num(x), d)

    def __eq__(self, other) -> bool:
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("RationalFunction", self.num, self.den))

    def render(self, var: str = "q") -> str:
        if self.is_polynomial():
            return self.num.render(var)
        return f"({self.num.render(var)})/({self.den.render(var)})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RationalFunction({self.render()})"


def _as_rf(x) -> Optional[RationalFunction]:
    if isinstance(x, RationalFunction):
        return x
    p = _as_poly(x)
    if p is None:
        return None
    return RationalFunction._coprime(p, Poly.one())


def as_rational_function(x) -> RationalFunction:
    rf = _as_rf(x)
    if rf is None:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return rf
