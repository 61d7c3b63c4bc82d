"""Registry of verifier families and the single entry point used by `verify` and sweeps."""
from __future__ import annotations

import logging
from typing import Callable, Dict, List, Optional, Union

from config import settings
from cyclo import CongruenceReport
from factratio import FactorialRatioSpec, explore_phi4, verify_classical_ratio, verify_theorem3
from qcalc import check_q_binomial_theorem, check_q_lucas
from qcong import (
    verify_classical_integer,
    verify_harmonic_congruence,
    verify_known_congruence,
    verify_theorem1,
    verify_theorem2,
)
from rootexpand import (
    check_cong_asymp,
    check_exceptional_sums,
    check_root_filter,
    check_summations,
    verify_lemma1,
    verify_lemma2_eq3,
    verify_lemma3,
)
from utils import Family, InvalidParameters, ParamKind, Variant

logger = logging.getLogger(__name__)

FAMILY_KINDS: Dict[Family, ParamKind] = {
    Family.QLUCAS: ParamKind.BINOMIAL,
    Family.QBINTHM: ParamKind.INDEX,
    Family.STRAUB2: ParamKind.BINOMIAL,
    Family.MONOMIAL3: ParamKind.BINOMIAL,
    Family.ANDREWS4: ParamKind.BINOMIAL,
    Family.PAN5: ParamKind.BINOMIAL,
    Family.THEOREM1: ParamKind.BINOMIAL,
    Family.THEOREM2: ParamKind.BINOMIAL,
    Family.HARMONIC2: ParamKind.INDEX,
    Family.HARMONIC3: ParamKind.INDEX,
    Family.EQ3: ParamKind.INDEX,
    Family.CLASSICAL3: ParamKind.PRIME,
    Family.CLASSICAL4: ParamKind.PRIME,
    Family.LEMMA1: ParamKind.BINOMIAL,
    Family.LEMMA3: ParamKind.BINOMIAL,
    Family.CONG_ASYMP: ParamKind.BINOMIAL,
    Family.ROOT_FILTER: ParamKind.PROOF,
    Family.SUMMATIONS: ParamKind.PROOF,
    Family.EXCEPTIONAL: ParamKind.PROOF,
    Family.THEOREM3_STRAUB: ParamKind.SPEC,
    Family.THEOREM3_PAN: ParamKind.SPEC,
    Family.CLASSICAL_RATIO: ParamKind.SPEC_PRIME,
    Family.EXPLORE4_STRAUB: ParamKind.SPEC,
    Family.EXPLORE4_PAN: ParamKind.SPEC,
}

# command-line shorthands
ALIASES: Dict[str, List[Family]] = {
    "theorem3": [Family.THEOREM3_STRAUB, Family.THEOREM3_PAN],
    "explore4": [Family.EXPLORE4_STRAUB, Family.EXPLORE4_PAN],
    "all": list(Family),
}


def expand_families(names: Union[str, List[str]]) -> List[Family]:
    """Resolve a comma list of family ids and aliases, in catalogue order, without duplicates."""
    if isinstance(names, str):
        names = [s for s in names.split(",") if s.strip()]
    wanted = set()
    for raw in names:
        name = raw.strip().lower()
        if name in ALIASES:
            wanted.update(ALIASES[name])
            continue
        try:
            wanted.add(Family(name))
        except ValueError:
            raise InvalidParameters(f"unknown family {raw!r}") from None
    return [f for f in Family if f in wanted]


def _need(value: Optional[int], name: str, family: Family) -> int:
    if value is None:
        raise InvalidParameters(f"{family.value} needs --{name}")
    return value


def _spec(value: Union[str, FactorialRatioSpec, None], family: Family) -> FactorialRatioSpec:
    if value is None:
        raise InvalidParameters(f"{family.value} needs --spec")
    return value if isinstance(value, FactorialRatioSpec) else FactorialRatioSpec.parse(value)


def run_family(
    family: Union[Family, str],
    *,
    a: Optional[int] = None,
    b: Optional[int] = None,
    n: Optional[int] = None,
    k: Optional[int] = None,
    l: Optional[int] = None,
    spec: Union[str, FactorialRatioSpec, None] = None,
    order: Optional[int] = None,
    permissive: bool = False,
) -> CongruenceReport:
    """
    Run one verifier.

    `n` doubles as the prime p for the integer families and as N for the
    q-binomial theorem; `k` selects the residue class for the summation
    formulae.
    """
    family = Family(family)
    order = order or settings.series_order
    logger.debug("[catalogue] %s a=%s b=%s n=%s spec=%s", family.value, a, b, n, spec)
    handler = _HANDLERS[family]
    return handler(family, a, b, n, k, l, spec, order, permissive)


Handler = Callable[..., CongruenceReport]


def _binomial(fn: Callable[[int, int, int], CongruenceReport]) -> Handler:
    def run(family, a, b, n, k, l, spec, order, permissive):
        return fn(_need(a, "a", family), _need(b, "b", family), _need(n, "n", family))
    return run


def _theorem(fn: Callable[..., CongruenceReport]) -> Handler:
    def run(family, a, b, n, k, l, spec, order, permissive):
        return fn(_need(a, "a", family), _need(b, "b", family), _need(n, "n", family), permissive)
    return run


def _known(family, a, b, n, k, l, spec, order, permissive):
    return verify_known_congruence(family, _need(a, "a", family), _need(b, "b", family),
                                   _need(n, "n", family), permissive)


def _lemma(fn: Callable[..., CongruenceReport]) -> Handler:
    def run(family, a, b, n, k, l, spec, order, permissive):
        return fn(_need(a, "a", family), _need(b, "b", family), _need(n, "n", family), order)
    return run


def _harmonic(level: int) -> Handler:
    def run(family, a, b, n, k, l, spec, order, permissive):
        return verify_harmonic_congruence(_need(n, "n", family), level)
    return run


def _classical(level: int) -> Handler:
    def run(family, a, b, n, k, l, spec, order, permissive):
        return verify_classical_integer(_need(a, "a", family), _need(b, "b", family),
                                        _need(n, "p", family), level)
    return run


def _theorem3(variant: Variant) -> Handler:
    def run(family, a, b, n, k, l, spec, order, permissive):
        return verify_theorem3(_spec(spec, family), _need(n, "n", family), variant)
    return run


def _explore(variant: Variant) -> Handler:
    def run(family, a, b, n, k, l, spec, order, permissive):
        return explore_phi4(_spec(spec, family), _need(n, "n", family), variant)
    return run


_HANDLERS: Dict[Family, Handler] = {
    Family.QLUCAS: _binomial(check_q_lucas),
    Family.QBINTHM: lambda family, a, b, n, *rest: check_q_binomial_theorem(_need(n, "n", family)),
    Family.STRAUB2: _known,
    Family.MONOMIAL3: _known,
    Family.ANDREWS4: _known,
    Family.PAN5: _known,
    Family.THEOREM1: _theorem(verify_theorem1),
    Family.THEOREM2: _theorem(verify_theorem2),
    Family.HARMONIC2: _harmonic(2),
    Family.HARMONIC3: _harmonic(3),
    Family.EQ3: lambda family, a, b, n, *rest: verify_lemma2_eq3(_need(n, "n", family)),
    Family.CLASSICAL3: _classical(3),
    Family.CLASSICAL4: _classical(4),
    Family.LEMMA1: _lemma(verify_lemma1),
    Family.LEMMA3: _lemma(verify_lemma3),
    Family.CONG_ASYMP: _binomial(check_cong_asymp),
    Family.ROOT_FILTER: lambda family, a, b, n, *rest: check_root_filter(_need(a, "a", family), _need(n, "n", family)),
    Family.SUMMATIONS: lambda family, a, b, n, k, l, *rest: check_summations(_need(n, "n", family), k, l),
    Family.EXCEPTIONAL: lambda family, a, b, n, *rest: check_exceptional_sums(_need(a, "a", family), _need(n, "n", family)),
    Family.THEOREM3_STRAUB: _theorem3(Variant.STRAUB_G),
    Family.THEOREM3_PAN: _theorem3(Variant.PAN_G),
    Family.CLASSICAL_RATIO: lambda family, a, b, n, k, l, spec, *rest: verify_classical_ratio(_spec(spec, family), _need(n, "p", family)),
    Family.EXPLORE4_STRAUB: _explore(Variant.STRAUB_G),
    Family.EXPLORE4_PAN: _explore(Variant.PAN_G),
}
