"""Render assessment results as CSV or JSON tables.

Every report is a list of flat records with a fixed column order. CSV and
JSON carry the same values: floats are written with ``repr`` precision in
both.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any, TextIO

from .errors import IoError, ValidationError
from .model import ComparisonReport, ScoreRow
from .pipeline import TOTAL, AssessmentResult

Record = dict[str, Any]

LEAGUE_COLUMNS = ("unit", "research_staff", "p_hca", "rank")
PROFILE_COLUMNS = ("level", "unit", "research_staff", "p_hca", "rank", "percentile")
HCA_COLUMNS = ("pub_id", "year", "citations", "percentile", "is_hca")
COMPARISON_COLUMNS = (
    "scope",
    "universities",
    "spearman_rho",
    "pct_shifting",
    "avg_shift",
    "max_shift",
    "avg_percentile_shift",
    "max_percentile_shift",
)


def league_records(rows: Sequence[ScoreRow], include_percentile: bool = False) -> list[Record]:
    out = []
    for row in rows:
        rec: Record = {
            "unit": row.university_id,
            "research_staff": row.staff_count,
            "p_hca": row.score,
            "rank": row.rank,
        }
        if include_percentile:
            rec["percentile"] = row.rank_percentile
        out.append(rec)
    return out


def _position(table: Sequence[ScoreRow], university_id: str) -> tuple[ScoreRow, int] | None:
    for row in table:
        if row.university_id == university_id:
            return row, len(table)
    return None


def profile_records(result: AssessmentResult, university_id: str) -> list[Record]:
    """One university's national standing in each eligible SDS and UDA, and
    overall, as ``rank r of N`` with the rank percentile."""
    if university_id not in result.overall_units:
        raise ValidationError(f"university {university_id!r} has no assessed staff")
    out: list[Record] = []

    def add(level: str, unit: str, hit: tuple[ScoreRow, int] | None) -> None:
        if hit is None:
            return
        row, n = hit
        out.append({
            "level": level,
            "unit": unit,
            "research_staff": row.staff_count,
            "p_hca": row.score,
            "rank": f"{row.rank} of {n}",
            "percentile": row.rank_percentile,
        })

    for sds, table in sorted(result.sds_tables.items()):
        add("SDS", sds, _position(table, university_id))
    for uda, table in sorted(result.uda_tables.items()):
        add("UDA", uda, _position(table, university_id))
    add("Overall", TOTAL, _position(result.overall_table, university_id))
    return out


def hca_records(result: AssessmentResult) -> list[Record]:
    return [
        {
            "pub_id": p.pub_id,
            "year": p.year,
            "citations": p.citations,
            "percentile": result.hcas.percentiles[p.pub_id],
            "is_hca": p.pub_id in result.hcas,
        }
        for p in sorted(result.corpus.publications, key=lambda p: p.pub_id)
    ]


def comparison_records(reports: Mapping[str, ComparisonReport]) -> list[Record]:
    return [
        {
            "scope": scope,
            "universities": rep.n_units,
            "spearman_rho": rep.spearman_rho,
            "pct_shifting": rep.pct_shifting,
            "avg_shift": rep.avg_shift,
            "max_shift": rep.max_shift,
            "avg_percentile_shift": rep.avg_percentile_shift,
            "max_percentile_shift": rep.max_percentile_shift,
        }
        for scope, rep in reports.items()
    ]


def _cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def render(records: Sequence[Record], fmt: str, columns: Sequence[str] | None = None) -> str:
    if columns is None:
        columns = list(records[0]) if records else []
    if fmt == "json":
        return json.dumps([{c: r[c] for c in columns} for r in records], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow([_cell(r[c]) for c in columns])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(
    records: Sequence[Record],
    fmt: str,
    out: str | Path | TextIO | None = None,
    columns: Sequence[str] | None = None,
) -> str:
    """Render ``records`` and write them to ``out`` (a path, a stream, or
    stdout when ``None``). Returns the rendered text."""
    text = render(records, fmt, columns)
    if out is None:
        sys.stdout.write(text)
    elif isinstance(out, (str, Path)):
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise IoError(f"cannot write {out}: {exc.strerror}") from exc
    else:
        out.write(text)
    return text
