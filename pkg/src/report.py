from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import List, Optional, Union

from cyclo import CongruenceReport
from models import CaseRecord, ReportFormat, SweepReport

logger = logging.getLogger(__name__)

CSV_HEADER = ("family", "params", "holds", "remainder", "elapsed_ms")


def _params_cell(params: dict) -> str:
    return ";".join(f"{k}={v}" for k, v in params.items())


def to_json(records: List[CaseRecord]) -> str:
    payload = SweepReport(cases=records).model_dump(exclude_none=True)
    return json.dumps(payload, indent=2) + "\n"


def to_csv(records: List[CaseRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        remainder = r.error if r.error else r.render_remainder()
        elapsed = "" if r.elapsed_ms is None else r.elapsed_ms
        writer.writerow((r.family, _params_cell(r.params), str(r.holds).lower(), remainder, elapsed))
    return buf.getvalue()


def write_report(
    records: List[CaseRecord],
    path: Optional[Union[str, Path]],
    fmt: Union[ReportFormat, str] = ReportFormat.json,
) -> str:
    """
    Serialize records and write them to `path` (stdout when path is None).

    Returns:
        The serialized text.

    Raises:
        OSError: if the path cannot be written.
    """
    fmt = ReportFormat(fmt)
    text = to_json(records) if fmt is ReportFormat.json else to_csv(records)
    if path is None:
        print(text, end="")
        return text
    target = Path(path)
    target.write_text(text, encoding="utf-8")
    logger.info("[report] wrote %d records to %s", len(records), target)
    return text


def render_report(report: CongruenceReport) -> str:
    """Human-readable summary of one report for `verify`."""
    record = CaseRecord.from_report(report)
    params = ", ".join(f"{k}={v}" for k, v in report.params.items())
    status = "holds" if report.holds else "FAILS"
    if report.exploratory:
        status += " (exploratory)"
    lines = [f"{report.family} [{params}]: {status}"]
    if not report.holds:
        lines.append(f"  remainder: {record.render_remainder()}")
    for key, value in report.details.items():
        lines.append(f"  {key}: {value}")
    return "\n".join(lines)
