from __future__ import annotations

import logging
import sys
from typing import List

import click
from dotenv import load_dotenv
from pydantic import ValidationError

from catalogue import expand_families, run_family
from config import Settings, settings
from cyclo import CongruenceReport, cyclotomic
from factratio import FactorialRatioSpec, describe_spec
from models import CaseRecord, ReportFormat, SweepConfig
from qcalc import q_binomial
from report import render_report, to_json, write_report
from rootexpand import expand_poly_at_root, lemma1_combination, lemma_constants, s_at_zeta
from sweep import run_sweep, sweep_exit_code
from utils import QCongError, require

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_ERROR = 2


# ================================
# Logging setup
# ================================

def setup_logger() -> logging.Logger:
    """
    Configure and return the application logger.

    LOG_FILE  (env): path to log file, defaults to 'qcong.log'.
    LOG_LEVEL (env): 0 = silent, 1 = INFO, 2 = DEBUG (default: 0).
    """
    cfg = Settings()
    try:
        log_level_int = int(cfg.log_level)
    except ValueError:
        log_level_int = 0

    if not cfg.log_file:
        print("Error: Invalid log file path", file=sys.stderr)
        sys.exit(EXIT_ERROR)

    if log_level_int <= 0:
        logging.disable(logging.CRITICAL)
        level = logging.CRITICAL
    else:
        logging.disable(logging.NOTSET)
        level = logging.DEBUG if log_level_int >= 2 else logging.INFO

    try:
        logging.basicConfig(
            filename=cfg.log_file,
            filemode="w",  # overwrite for each run
            level=level,
            format="%(asctime)s - %(levelname)s - %(message)s",
            force=True,
        )
    except OSError:
        print(f"Error: Invalid log file path '{cfg.log_file}'", file=sys.stderr)
        sys.exit(EXIT_ERROR)

    return logging.getLogger("qcong")


def _fail(message: str) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(EXIT_ERROR)


# ================================
# CLI entrypoints
# ================================

@click.group()
def cli() -> None:
    """Exact verification of q-binomial congruences modulo powers of cyclotomic polynomials."""
    load_dotenv()
    settings.reload()
    setup_logger()


@cli.command()
@click.option("--family", "family_name", required=True, help="Family id, or 'theorem3' for both variants.")
@click.option("--a", "a", type=int)
@click.option("--b", "b", type=int)
@click.option("--n", "n", type=int)
@click.option("--p", "p", type=int, help="Prime for the integer families (same as --n).")
@click.option("--k", "k", type=int, help="Residue class k for the summation formulae.")
@click.option("--l", "l", type=int, help="Residue class l for the summation formulae.")
@click.option("--spec", "spec", help='Factorial-ratio spec "a1,...,ar/b1,...,bs".')
@click.option("--order", "order", type=int, help="Series order for the expansion families.")
@click.option("--permissive", is_flag=True, help="Allow n = 1 for the theorem families.")
@click.option("--json", "as_json", is_flag=True, help="Print a JSON report instead of text.")
def verify(family_name, a, b, n, p, k, l, spec, order, permissive, as_json) -> None:
    """Run one verifier; exit 0 if it holds, 1 if it fails, 2 on bad input."""
    if p is not None and n is not None and p != n:
        _fail("--p and --n disagree")
    n = p if p is not None else n
    logger = logging.getLogger(__name__)

    reports: List[CongruenceReport] = []
    try:
        for family in expand_families(family_name):
            reports.append(
                run_family(family, a=a, b=b, n=n, k=k, l=l, spec=spec, order=order, permissive=permissive)
            )
    except QCongError as e:
        logger.error("verify %s failed: %s", family_name, e)
        _fail(str(e))

    if as_json:
        click.echo(to_json([CaseRecord.from_report(r) for r in reports]), nl=False)
    else:
        for report in reports:
            click.echo(render_report(report))
    holds = all(r.holds or r.exploratory for r in reports)
    sys.exit(EXIT_HOLDS if holds else EXIT_FAILS)


@cli.command()
@click.option("--families", required=True, help="Comma list of family ids; 'all' for every family.")
@click.option("--a-max", type=int, default=6, show_default=True)
@click.option("--n-max", type=int, default=10, show_default=True)
@click.option("--spec", "specs", multiple=True, help="Factorial-ratio spec; repeatable.")
@click.option("--jobs", type=int, envvar="QCONG_JOBS", default=None, help="Worker processes [env QCONG_JOBS].")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Report path (stdout if omitted).")
@click.option("--format", "fmt", type=click.Choice([f.value for f in ReportFormat]), default="json")
@click.option("--timings", is_flag=True, help="Include elapsed_ms in the report.")
def sweep(families, a_max, n_max, specs, jobs, out, fmt, timings) -> None:
    """Run every (family, parameters) case of a grid and write one record per case."""
    try:
        config = SweepConfig(
            families=families,
            a_max=a_max,
            n_max=n_max,
            specs=list(specs),
            jobs=jobs if jobs is not None else settings.jobs,
            out=out,
            format=fmt,
            timings=timings,
        )
    except ValidationError as e:
        _fail("; ".join(err["msg"] for err in e.errors()))

    records = run_sweep(config)
    try:
        write_report(records, config.out, config.format)
    except OSError as e:
        _fail(f"cannot write report: {e}")

    code = sweep_exit_code(records)
    if config.out is not None:
        failing = sum(1 for r in records if not (r.holds or r.exploratory))
        click.echo(f"{len(records)} cases, {failing} failing -> {config.out}")
    sys.exit(code)


@cli.command()
@click.option("--a", "a", type=int, required=True)
@click.option("--b", "b", type=int, required=True)
@click.option("--n", "n", type=int, required=True)
@click.option("--order", "order", type=int, default=None, help="Number of eps-coefficients.")
def expand(a, b, n, order) -> None:
    """Print the radial expansion of the monomial combination at q = zeta(1 - eps)."""
    order = order or settings.series_order
    try:
        require(0 <= b <= a and a >= 1, f"need 0 <= b <= a and a >= 1, got a={a}, b={b}")
        require(n >= 1, f"need n >= 1, got {n}")
        series = expand_poly_at_root(lemma1_combination(a, b, n), n, order)
        constants = lemma_constants(a, b, n)
        s = s_at_zeta(n)
    except QCongError as e:
        _fail(str(e))

    for line in series.render():
        click.echo(line)
    click.echo(f"rho0 = {constants.rho0}")
    click.echo(f"rho1 = {constants.rho1}")
    click.echo(f"S(zeta) = {s.render()}")
    sys.exit(EXIT_HOLDS)


@cli.group()
def info() -> None:
    """Print exact objects."""


@info.command("cyclo")
@click.option("--n", "n", type=int, required=True)
def info_cyclo(n) -> None:
    try:
        click.echo(cyclotomic(n).render())
    except QCongError as e:
        _fail(str(e))


@info.command("qbin")
@click.option("--a", "a", type=int, required=True)
@click.option("--b", "b", type=int, required=True)
def info_qbin(a, b) -> None:
    try:
        require(a >= 0, f"need a >= 0, got {a}")
        click.echo(q_binomial(a, b).render())
    except QCongError as e:
        _fail(str(e))


@info.command("spec")
@click.option("--check", "text", required=True, help='Spec "a1,...,ar/b1,...,bs".')
def info_spec(text: str) -> None:
    try:
        spec = FactorialRatioSpec.parse(text)
    except QCongError as e:
        _fail(str(e))
    click.echo(describe_spec(spec))


if __name__ == "__main__":
    cli()
