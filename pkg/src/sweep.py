"""Parameter grids and the parallel sweep runner."""
from __future__ import annotations

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Dict, Iterator, List, NamedTuple, Optional, Union

from sympy import primerange

from catalogue import FAMILY_KINDS, run_family
from cyclo import CongruenceReport
from factratio import FactorialRatioSpec
from models import CaseRecord, SweepConfig
from utils import (
    Family,
    InvalidParameters,
    InvalidResidueClass,
    NotBalanced,
    NotIntegral,
    NotPrime,
    ParamKind,
    PrimeTooSmall,
    SpecParseError,
)

logger = logging.getLogger(__name__)

CaseParams = Dict[str, Union[int, str, None]]

DEFAULT_SPECS = ("2/1,1", "3/2,1", "1,1/2", "4,1/2,2,1", "2,2,1/4,1")

# errors that mean the grid asked for something ill-formed, not a violated congruence
USAGE_ERRORS = {
    cls.__name__
    for cls in (InvalidParameters, InvalidResidueClass, NotPrime, PrimeTooSmall,
                NotBalanced, NotIntegral, SpecParseError)
}

PROOF_A_MAX = 3
PROOF_N_MAX = 5
SERIES_FROM_ONE = {Family.LEMMA1, Family.LEMMA3}


class Case(NamedTuple):
    family: Family
    params: CaseParams

    def label(self) -> Dict[str, Union[int, str]]:
        return {k: v for k, v in self.params.items() if v is not None}


# ================================
# Grids
# ================================

def _pairs(a_max: int) -> List[tuple]:
    return [(a, b) for a in range(1, a_max + 1) for b in range(1, a + 1)]


def _primes(n_max: int) -> List[int]:
    return [int(p) for p in primerange(5, max(n_max, 13) + 1)]


def _residue_classes(n: int) -> Iterator[tuple]:
    if n == 2:
        yield 1, None
        return
    for k, l in product(range(1, n), repeat=2):
        if k != l:
            yield k, l


def _family_cases(family: Family, config: SweepConfig, specs: List[FactorialRatioSpec]) -> Iterator[Case]:
    kind = FAMILY_KINDS[family]
    if kind is ParamKind.BINOMIAL:
        first = 1 if family in SERIES_FROM_ONE else 2
        for n, (a, b) in product(range(first, config.n_max + 1), _pairs(config.a_max)):
            yield Case(family, {"a": a, "b": b, "n": n})
    elif kind is ParamKind.INDEX:
        for n in range(2, config.n_max + 1):
            yield Case(family, {"n": n})
    elif kind is ParamKind.PRIME:
        for p, (a, b) in product(_primes(config.n_max), _pairs(config.a_max)):
            yield Case(family, {"a": a, "b": b, "n": p})
    elif kind is ParamKind.SPEC:
        for spec, n in product(specs, range(2, config.n_max + 1)):
            yield Case(family, {"spec": str(spec), "n": n})
    elif kind is ParamKind.SPEC_PRIME:
        for spec in specs:
            if not spec.landau_integral():
                logger.info("[sweep] %s skips non-integral spec %s", family.value, spec)
                continue
            for p in _primes(config.n_max):
                yield Case(family, {"spec": str(spec), "n": p})
    else:
        a_top = min(config.a_max, PROOF_A_MAX)
        for n in range(2, min(config.n_max, PROOF_N_MAX) + 1):
            if family is Family.SUMMATIONS:
                for k, l in _residue_classes(n):
                    yield Case(family, {"n": n, "k": k, "l": l})
            else:
                for a in range(1, a_top + 1):
                    yield Case(family, {"a": a, "n": n})


def build_cases(config: SweepConfig) -> List[Case]:
    """All cases of a sweep in report order: catalogue order, then each family's grid order."""
    specs = config.parsed_specs() or [FactorialRatioSpec.parse(s) for s in DEFAULT_SPECS]
    cases: List[Case] = []
    for family in config.families:
        cases.extend(_family_cases(family, config, specs))
    logger.info("[sweep] %d cases over %d families", len(cases), len(config.families))
    return cases


# ================================
# Runner
# ================================

def run_case(case: Case) -> CongruenceReport:
    """Worker entry point; must stay importable at module level for the process pool."""
    return run_family(case.family, **case.params)


async def _gather(cases: List[Case], jobs: int) -> list:
    if jobs == 1:
        results = []
        for case in cases:
            try:
                results.append(run_case(case))
            except Exception as exc:
                results.append(exc)
        return results
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        tasks = [loop.run_in_executor(pool, run_case, case) for case in cases]
        # gather keeps task order, so records follow case order for any job count
        return await asyncio.gather(*tasks, return_exceptions=True)


def run_sweep(config: SweepConfig, cases: Optional[List[Case]] = None) -> List[CaseRecord]:
    start = time.perf_counter()
    cases = build_cases(config) if cases is None else cases
    results = asyncio.run(_gather(cases, config.jobs))

    records: List[CaseRecord] = []
    failures = 0
    for case, result in zip(cases, results):
        if isinstance(result, Exception):
            logger.error("[sweep] %s %s raised: %s", case.family.value, case.label(), result,
                         exc_info=result)
            records.append(CaseRecord.from_error(case.family.value, case.label(), result))
            failures += 1
            continue
        if not result.holds and not result.exploratory:
            logger.info("[sweep] %s %s fails", result.family, result.params)
            failures += 1
        records.append(CaseRecord.from_report(result, timings=config.timings))

    logger.info("[sweep] %d cases, %d failing, %d ms", len(records), failures,
                int((time.perf_counter() - start) * 1000))
    return records


def sweep_exit_code(records: List[CaseRecord]) -> int:
    """0 when every non-exploratory case holds, 2 when a case hit a usage error, else 1."""
    if any(r.error and r.error.split(":", 1)[0] in USAGE_ERRORS for r in records):
        return 2
    if all(r.holds or r.exploratory for r in records):
        return 0
    return 1
