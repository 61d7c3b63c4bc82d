from __future__ import annotations

from enum import Enum
from math import comb
from typing import Dict, TypeAlias, Union

ParamValue: TypeAlias = Union[int, str]
Params: TypeAlias = Dict[str, ParamValue]


# ================================
# Errors
# ================================

class QCongError(Exception):
    """Base class for every error raised by the verification engine."""


class InvalidParameters(QCongError, ValueError):
    """A precondition on the integer parameters does not hold."""


class NotDivisible(QCongError, ArithmeticError):
    pass


class PolyZeroDivision(QCongError, ZeroDivisionError):
    pass


class DenominatorNotCoprime(QCongError):
    """The congruence is ill-posed: a denominator shares a factor with Phi_n."""


class ZeroInverse(QCongError, ZeroDivisionError):
    pass


class DenominatorVanishes(QCongError):
    """The denominator series has zero constant term at the chosen root."""


class InvalidResidueClass(QCongError, ValueError):
    pass


class NotPrime(QCongError, ValueError):
    pass


class PrimeTooSmall(QCongError, ValueError):
    pass


class NotBalanced(QCongError, ValueError):
    pass


class NotIntegral(QCongError, ValueError):
    pass


class SpecParseError(QCongError, ValueError):
    pass


# ================================
# Verifier families
# ================================

class Family(str, Enum):
    QLUCAS = "qlucas"
    QBINTHM = "qbinthm"
    STRAUB2 = "straub2"
    MONOMIAL3 = "monomial3"
    ANDREWS4 = "andrews4"
    PAN5 = "pan5"
    THEOREM1 = "theorem1"
    THEOREM2 = "theorem2"
    HARMONIC2 = "harmonic2"
    HARMONIC3 = "harmonic3"
    EQ3 = "eq3"
    CLASSICAL3 = "classical3"
    CLASSICAL4 = "classical4"
    LEMMA1 = "lemma1"
    LEMMA3 = "lemma3"
    CONG_ASYMP = "cong_asymp"
    ROOT_FILTER = "root_filter"
    SUMMATIONS = "summations"
    EXCEPTIONAL = "exceptional"
    THEOREM3_STRAUB = "theorem3_straub"
    THEOREM3_PAN = "theorem3_pan"
    CLASSICAL_RATIO = "classical_ratio"
    EXPLORE4_STRAUB = "explore4_straub"
    EXPLORE4_PAN = "explore4_pan"


class ParamKind(str, Enum):
    """Shape of the parameter grid a family is swept over."""
    BINOMIAL = "binomial"      # (a, b, n)
    INDEX = "index"            # n only
    PRIME = "prime"            # (a, b, p)
    SPEC = "spec"              # (spec, n)
    SPEC_PRIME = "spec_prime"  # (spec, p)
    PROOF = "proof"            # (a, n) or (n, k, l)


class Variant(str, Enum):
    STRAUB_G = "straub_g"
    PAN_G = "pan_g"


class ProofIdentity(str, Enum):
    ROOT_FILTER = "root_filter"
    SUMMATIONS = "summations"
    EXCEPTIONAL = "exceptional"
    CONG_ASYMP = "cong_asymp"


def binom(m: int, j: int) -> int:
    """Binomial coefficient with binom(m, j) = 0 for j < 0 or j > m."""
    if j < 0 or j > m:
        return 0
    return comb(m, j)


def require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParameters(message)
