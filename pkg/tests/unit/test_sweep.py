'''

Sweep grids, the process-pool runner and the exit-code rule.
Records must come back in case order for any job count.

'''
import logging

import pytest
from pydantic import ValidationError

from models import CaseRecord, SweepConfig
from sweep import (
    DEFAULT_SPECS,
    Case,
    _gather,
    _primes,
    _residue_classes,
    build_cases,
    run_case,
    run_sweep,
    sweep_exit_code,
)
from utils import Family, ParamKind

# -----------------------------------------------------------------------------
# Config validation
# -----------------------------------------------------------------------------

def test_config_expands_families():
    config = SweepConfig(families="theorem2,theorem1", jobs=1)
    assert config.families == [Family.THEOREM1, Family.THEOREM2]
    assert config.a_max == 6 and config.n_max == 10


@pytest.mark.parametrize("kwargs", [
    dict(families="nope"),
    dict(families=""),
    dict(families="theorem1", a_max=1),
    dict(families="theorem1", n_max=1),
    dict(families="theorem1", jobs=0),
    dict(families="theorem3", specs=["2,1"]),
    dict(families="theorem1", format="xml"),
])
def test_config_rejects(kwargs):
    with pytest.raises(ValidationError):
        SweepConfig(**kwargs)


def test_config_normalizes_specs():
    config = SweepConfig(families="theorem3", specs=[" 30,1 / 15,10,6 "], jobs=1)
    assert config.specs == ["30,1/15,10,6"]
    assert str(config.parsed_specs()[0]) == "30,1/15,10,6"


def test_config_jobs_default_from_env(monkeypatch):
    import models

    monkeypatch.setattr(models.settings, "jobs", 3)
    assert SweepConfig(families="eq3").jobs == 3


# -----------------------------------------------------------------------------
# Grids
# -----------------------------------------------------------------------------

def test_case_counts():
    config = SweepConfig(families="theorem1,theorem2", a_max=6, n_max=10, jobs=1)
    cases = build_cases(config)
    assert len(cases) == 378
    assert cases[0] == Case(Family.THEOREM1, {"a": 1, "b": 1, "n": 2})
    assert cases[-1].family is Family.THEOREM2


def test_index_and_prime_grids():
    config = SweepConfig(families="harmonic3,classical4", a_max=2, n_max=8, jobs=1)
    cases = build_cases(config)
    harmonic = [c for c in cases if c.family is Family.HARMONIC3]
    assert [c.params["n"] for c in harmonic] == list(range(2, 9))
    primes = sorted({c.params["n"] for c in cases if c.family is Family.CLASSICAL4})
    assert primes == [5, 7, 11, 13]


def test_primes_start_above_three():
    assert _primes(30) == [5, 7, 11, 13, 17, 19, 23, 29]


def test_lemma_grid_starts_at_one():
    config = SweepConfig(families="lemma1", a_max=2, n_max=3, jobs=1)
    assert {c.params["n"] for c in build_cases(config)} == {1, 2, 3}


def test_residue_classes():
    assert list(_residue_classes(2)) == [(1, None)]
    assert list(_residue_classes(3)) == [(1, 2), (2, 1)]
    assert len(list(_residue_classes(5))) == 12


def test_spec_grids_use_defaults_and_skip_non_integral():
    config = SweepConfig(families="theorem3_straub,classical_ratio", n_max=4, jobs=1)
    cases = build_cases(config)
    theorem3 = [c for c in cases if c.family is Family.THEOREM3_STRAUB]
    assert len(theorem3) == len(DEFAULT_SPECS) * 3
    ratio_specs = {c.params["spec"] for c in cases if c.family is Family.CLASSICAL_RATIO}
    assert "1,1/2" not in ratio_specs
    assert "2/1,1" in ratio_specs


def test_proof_grid_is_capped():
    config = SweepConfig(families="exceptional", a_max=6, n_max=10, jobs=1)
    cases = build_cases(config)
    assert max(c.params["a"] for c in cases) == 3
    assert max(c.params["n"] for c in cases) == 5


def test_case_label_drops_none():
    case = Case(Family.SUMMATIONS, {"n": 2, "k": 1, "l": None})
    assert case.label() == {"n": 2, "k": 1}


# -----------------------------------------------------------------------------
# Runner
# -----------------------------------------------------------------------------

def test_run_case():
    report = run_case(Case(Family.HARMONIC2, {"n": 5}))
    assert report.holds
    assert report.params == {"n": 5, "k": 2}


async def test_gather_in_process_keeps_order_and_errors():
    cases = [
        Case(Family.HARMONIC2, {"n": 3}),
        Case(Family.THEOREM1, {"a": 2, "b": 3, "n": 5}),
        Case(Family.EQ3, {"n": 3}),
    ]
    results = await _gather(cases, 1)
    assert results[0].family == "harmonic2"
    assert isinstance(results[1], Exception)
    assert results[2].family == "eq3"


def test_run_sweep_records():
    config = SweepConfig(families="harmonic2,eq3", n_max=4, jobs=1)
    records = run_sweep(config)
    assert [r.family for r in records] == ["harmonic2"] * 3 + ["eq3"] * 3
    assert all(r.holds for r in records)
    assert all(r.elapsed_ms is None for r in records)


def test_run_sweep_timings():
    config = SweepConfig(families="harmonic2", n_max=3, jobs=1, timings=True)
    records = run_sweep(config)
    assert all(isinstance(r.elapsed_ms, int) and r.elapsed_ms >= 0 for r in records)


def test_run_sweep_same_records_for_any_job_count():
    cases = build_cases(SweepConfig(families="theorem1,harmonic3", a_max=3, n_max=5, jobs=1))
    serial = run_sweep(SweepConfig(families="theorem1", jobs=1), cases)
    parallel = run_sweep(SweepConfig(families="theorem1", jobs=2), cases)
    assert [r.dump() for r in serial] == [r.dump() for r in parallel]


def test_run_sweep_error_record_and_log(caplog):
    cases = [Case(Family.THEOREM1, {"a": 2, "b": 3, "n": 5})]
    with caplog.at_level(logging.ERROR):
        records = run_sweep(SweepConfig(families="theorem1", jobs=1), cases)
    assert records[0].error.startswith("InvalidParameters:")
    assert not records[0].holds
    assert "raised" in caplog.text


# -----------------------------------------------------------------------------
# Exit code
# -----------------------------------------------------------------------------

def _record(**kwargs):
    base = dict(family="theorem1", params={"a": 2, "b": 1, "n": 5, "k": 4}, holds=True)
    base.update(kwargs)
    return CaseRecord(**base)


def test_exit_code_rules():
    assert sweep_exit_code([_record(), _record()]) == 0
    assert sweep_exit_code([_record(), _record(holds=False)]) == 1
    assert sweep_exit_code([_record(holds=False, exploratory=True)]) == 0
    assert sweep_exit_code([_record(holds=False, error="NotPrime: 9 is not prime")]) == 2
    assert sweep_exit_code([_record(holds=False, error="RuntimeError: boom")]) == 1


def test_every_kind_has_a_grid():
    kinds = {ParamKind.BINOMIAL, ParamKind.INDEX, ParamKind.PRIME, ParamKind.SPEC,
             ParamKind.SPEC_PRIME, ParamKind.PROOF}
    config = SweepConfig(families="all", a_max=2, n_max=3, jobs=1)
    families = {c.family for c in build_cases(config)}
    assert families == set(Family)
    assert kinds == set(ParamKind)
