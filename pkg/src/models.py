from __future__ import annotations

from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Field, field_validator

from catalogue import expand_families
from config import settings
from cyclo import CongruenceReport
from factratio import FactorialRatioSpec
from polyarith import Poly, format_rational
from utils import Family, QCongError

# remainders of these families are polynomials in zeta
ZETA_FAMILIES = {
    Family.LEMMA1, Family.LEMMA3, Family.EQ3, Family.CONG_ASYMP,
    Family.ROOT_FILTER, Family.SUMMATIONS, Family.EXCEPTIONAL,
}


class ReportFormat(str, Enum):
    json = "json"
    csv = "csv"


# --- Report records ---
class CaseRecord(BaseModel):
    """One verified case as written to a sweep report."""
    family: str
    params: Dict[str, Union[int, str]]
    holds: bool
    remainder_terms: Optional[List[Tuple[int, str]]] = Field(
        None, description="Nonzero remainder as [exponent, 'p/q'] pairs, descending"
    )
    error: Optional[str] = None
    exploratory: Optional[bool] = None
    elapsed_ms: Optional[int] = Field(None, description="Only written with --timings")

    @classmethod
    def from_report(cls, report: CongruenceReport, timings: bool = False) -> CaseRecord:
        terms = None
        if not report.remainder.is_zero():
            terms = [(e, format_rational(c)) for e, c in report.remainder.terms()]
        return cls(
            family=report.family,
            params=dict(report.params),
            holds=report.holds,
            remainder_terms=terms,
            exploratory=True if report.exploratory else None,
            elapsed_ms=report.elapsed_ms if timings else None,
        )

    @classmethod
    def from_error(cls, family: str, params: Dict[str, Union[int, str]], exc: BaseException) -> CaseRecord:
        return cls(family=family, params=params, holds=False, error=f"{type(exc).__name__}: {exc}")

    def remainder(self) -> Poly:
        if not self.remainder_terms:
            return Poly.zero()
        return sum((Poly.monomial(e, Fraction(c)) for e, c in self.remainder_terms), Poly.zero())

    def render_remainder(self) -> str:
        var = "z" if self.family in {f.value for f in ZETA_FAMILIES} else "q"
        return self.remainder().render(var)

    def dump(self) -> dict:
        return self.model_dump(exclude_none=True)


class SweepReport(BaseModel):
    version: str = "1"
    cases: List[CaseRecord]


# --- Sweep configuration ---
class SweepConfig(BaseModel):
    families: List[Family]
    a_max: int = Field(6, ge=2)
    n_max: int = Field(10, ge=2)
    specs: List[str] = Field(default_factory=list)
    jobs: int = Field(default_factory=lambda: settings.jobs, ge=1)
    out: Optional[Path] = None
    format: ReportFormat = ReportFormat.json
    timings: bool = False

    @field_validator("families", mode="before")
    @classmethod
    def _expand_families(cls, value):
        try:
            families = expand_families(value)
        except QCongError as e:
            raise ValueError(str(e)) from e
        if not families:
            raise ValueError("no families selected")
        return families

    @field_validator("specs", mode="before")
    @classmethod
    def _parse_specs(cls, value):
        if isinstance(value, str):
            value = [value]
        out = []
        for text in value or []:
            try:
                out.append(str(FactorialRatioSpec.parse(text)))
            except QCongError as e:
                raise ValueError(str(e)) from e
        return out

    def parsed_specs(self) -> List[FactorialRatioSpec]:
        return [FactorialRatioSpec.parse(s) for s in self.specs]
