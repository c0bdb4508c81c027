"""Flat-file ingestion and corpus filters.

A corpus directory holds five UTF-8 CSV files::

    publications.csv  pub_id,year,doc_type,citations,categories   (categories ';'-separated)
    authorship.csv    pub_id,position,university_id,researcher_id (blank = absent)
    researchers.csv   researcher_id,university_id,sds,year,rank   (one row per employment year)
    taxonomy.csv      sds,uda,convention                          (blank convention = UDA default)
    salaries.csv      rank,avg_salary

The assessment config is a ``key = value`` file whose keys mirror
:class:`~hcarank.model.AssessmentConfig`.
"""

from __future__ import annotations

import configparser
import csv
import logging
from collections import defaultdict
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .errors import IoError, ParseError, ReferentialError, ValidationError
from .hca import singleton_cohorts
from .model import (
    AssessmentConfig,
    AuthorSlot,
    Convention,
    FieldTaxonomy,
    PublicationRecord,
    Researcher,
    SalarySchedule,
)

log = logging.getLogger(__name__)

FILES = {
    "publications": "publications.csv",
    "authorship": "authorship.csv",
    "researchers": "researchers.csv",
    "taxonomy": "taxonomy.csv",
    "salaries": "salaries.csv",
}

COLUMNS = {
    "publications": ("pub_id", "year", "doc_type", "citations", "categories"),
    "authorship": ("pub_id", "position", "university_id", "researcher_id"),
    "researchers": ("researcher_id", "university_id", "sds", "year", "rank"),
    "taxonomy": ("sds", "uda", "convention"),
    "salaries": ("rank", "avg_salary"),
}

# UDAs whose SDSs default to position-weighted bylines (biology, medicine,
# agricultural and veterinary sciences in the Italian classification)
POSITION_WEIGHTED_UDAS = frozenset({"5", "6", "7", "05", "06", "07"})

# reason codes
OUT_OF_WINDOW = "out_of_window"
DOC_TYPE_EXCLUDED = "doc_type_excluded"
NO_BYLINE = "no_byline"
ORPHAN_AUTHORSHIP = "orphan_authorship"
SINGLETON_COHORT = "singleton_cohort"
EMPTY_CORPUS = "empty_corpus"
EMPTY_SDS = "empty_sds"
SDS_BELOW_COVERAGE = "sds_below_coverage"


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    record_id: str | None = None
    file: str | None = None
    line: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "code": self.code,
            "message": self.message,
            "record_id": self.record_id,
            "file": self.file,
            "line": self.line,
        }


@dataclass
class ValidationReport:
    dropped: list[Issue] = field(default_factory=list)
    warnings: list[Issue] = field(default_factory=list)

    def drop(self, code: str, message: str, **where: Any) -> None:
        self.dropped.append(Issue(code, message, **where))

    def warn(self, code: str, message: str, **where: Any) -> None:
        self.warnings.append(Issue(code, message, **where))

    def dropped_ids(self) -> set[str]:
        return {i.record_id for i in self.dropped if i.record_id is not None}

    def log(self, logger: logging.Logger = log) -> None:
        for issue in self.dropped:
            logger.warning("dropped %s: %s", issue.code, issue.message)
        for issue in self.warnings:
            logger.warning("%s: %s", issue.code, issue.message)


@dataclass(frozen=True)
class Corpus:
    publications: tuple[PublicationRecord, ...]
    roster: Mapping[str, Researcher]
    taxonomy: FieldTaxonomy
    salaries: SalarySchedule
    report: ValidationReport = field(default_factory=ValidationReport, compare=False)


def _read_rows(path: Path, kind: str) -> Iterator[tuple[int, dict[str, str]]]:
    try:
        handle = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror}") from exc
    with handle:
        reader = csv.reader(handle)
        header = [h.strip() for h in next(reader, [])]
        required = [c for c in COLUMNS[kind] if not (kind == "taxonomy" and c == "convention")]
        missing = [c for c in required if c not in header]
        if missing and header:
            raise ParseError(f"missing columns {missing}", str(path), 1)
        width = len(header)
        for row in reader:
            if not row:
                continue
            if len(row) > width:
                raise ParseError("too many fields", str(path), reader.line_num)
            if len(row) < width:
                row += [""] * (width - len(row))
            yield reader.line_num, dict(zip(header, map(str.strip, row)))


def _int(value: str, what: str, path: Path, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {value!r}", str(path), line) from None


def _float(value: str, what: str, path: Path, line: int) -> float:
    try:
        return float(value)
    except ValueError:
        raise ParseError(f"{what} must be a number, got {value!r}", str(path), line) from None


def _annotate(exc: ValidationError, path: Path, line: int | None = None) -> ValidationError:
    where = f"{path}:{line}" if line is not None else str(path)
    return type(exc)(f"{where}: {exc}")


def read_taxonomy(path: Path, position_weighted_udas: Iterable[str] = POSITION_WEIGHTED_UDAS) -> FieldTaxonomy:
    pw = set(position_weighted_udas)
    to_uda: dict[str, str] = {}
    conv: dict[str, Convention] = {}
    for line, row in _read_rows(path, "taxonomy"):
        sds, uda = row["sds"], row["uda"]
        if not sds or not uda:
            raise ParseError("sds and uda are required", str(path), line)
        if sds in to_uda:
            raise ParseError(f"SDS {sds!r} listed twice", str(path), line)
        to_uda[sds] = uda
        text = row.get("convention", "")
        try:
            conv[sds] = Convention.parse(text) if text else (
                Convention.POSITION_WEIGHTED if uda in pw else Convention.ALPHABETICAL
            )
        except ValidationError as exc:
            raise ParseError(str(exc), str(path), line) from None
    return FieldTaxonomy(to_uda, conv)


def read_salaries(path: Path) -> SalarySchedule:
    if not path.exists():
        return SalarySchedule({})
    out: dict[str, float] = {}
    for line, row in _read_rows(path, "salaries"):
        if row["rank"] in out:
            raise ParseError(f"rank {row['rank']!r} listed twice", str(path), line)
        out[row["rank"]] = _float(row["avg_salary"], "avg_salary", path, line)
    try:
        return SalarySchedule(out)
    except ValidationError as exc:
        raise _annotate(exc, path) from None


def read_researchers(path: Path) -> dict[str, Researcher]:
    meta: dict[str, tuple[str, str]] = {}
    years: dict[str, dict[int, str]] = defaultdict(dict)
    for line, row in _read_rows(path, "researchers"):
        rid = row["researcher_id"]
        if not rid or not row["university_id"] or not row["sds"] or not row["rank"]:
            raise ParseError("researcher_id, university_id, sds and rank are required", str(path), line)
        key = (row["university_id"], row["sds"])
        if meta.setdefault(rid, key) != key:
            raise ValidationError(
                f"{path}:{line}: researcher {rid!r} appears with two (university, SDS) assignments"
            )
        year = _int(row["year"], "year", path, line)
        if year in years[rid]:
            raise ValidationError(f"{path}:{line}: researcher {rid!r} lists year {year} twice")
        years[rid][year] = row["rank"]
    return {
        rid: Researcher(rid, meta[rid][0], meta[rid][1], years[rid]) for rid in sorted(meta)
    }


def load_corpus(
    data_dir: str | Path,
    config: AssessmentConfig,
    position_weighted_udas: Iterable[str] = POSITION_WEIGHTED_UDAS,
) -> Corpus:
    """Read, validate and filter a corpus directory.

    Publications outside the window or of an excluded document type are
    dropped and recorded in ``corpus.report``; so are publications without
    any authorship row. Bylines must reference roster researchers at their
    roster university.
    """
    root = Path(data_dir)
    if not root.is_dir():
        raise IoError(f"corpus directory {root} does not exist")
    paths = {k: root / v for k, v in FILES.items()}
    report = ValidationReport()

    taxonomy = read_taxonomy(paths["taxonomy"], position_weighted_udas)
    salaries = read_salaries(paths["salaries"])
    roster = read_researchers(paths["researchers"])
    taxonomy.check_roster(roster.values())

    raw: dict[str, tuple[int, dict[str, str]]] = {}
    kept: set[str] = set()
    pub_path = paths["publications"]
    for line, row in _read_rows(pub_path, "publications"):
        pid = row["pub_id"]
        if not pid:
            raise ParseError("pub_id is required", str(pub_path), line)
        if pid in raw:
            raise ParseError(f"duplicate pub_id {pid!r}", str(pub_path), line)
        raw[pid] = (line, row)
        year = _int(row["year"], "year", pub_path, line)
        _int(row["citations"], "citations", pub_path, line)
        where = {"record_id": pid, "file": FILES["publications"], "line": line}
        if year not in config.window:
            report.drop(OUT_OF_WINDOW, f"{pid}: year {year} outside {config.window}", **where)
        elif row["doc_type"].lower() not in config.doc_type_whitelist:
            report.drop(DOC_TYPE_EXCLUDED, f"{pid}: document type {row['doc_type']!r}", **where)
        else:
            kept.add(pid)

    slots: dict[str, list[AuthorSlot]] = defaultdict(list)
    auth_path = paths["authorship"]
    for line, row in _read_rows(auth_path, "authorship"):
        pid = row["pub_id"]
        if pid not in raw:
            report.warn(
                ORPHAN_AUTHORSHIP,
                f"authorship row for unknown publication {pid!r}",
                record_id=pid,
                file=FILES["authorship"],
                line=line,
            )
            continue
        if pid not in kept:
            continue
        uni = row.get("university_id") or None
        rid = row.get("researcher_id") or None
        if rid is not None:
            r = roster.get(rid)
            if r is None:
                raise ReferentialError(f"{auth_path}:{line}: researcher {rid!r} is not on the roster")
            if uni is not None and uni != r.university_id:
                raise ReferentialError(
                    f"{auth_path}:{line}: researcher {rid!r} is listed at {uni!r} "
                    f"but the roster places them at {r.university_id!r}"
                )
        try:
            slots[pid].append(AuthorSlot(_int(row["position"], "position", auth_path, line), uni, rid))
        except ValidationError as exc:
            raise _annotate(exc, auth_path, line) from None

    pubs: list[PublicationRecord] = []
    for pid in sorted(kept):
        line, row = raw[pid]
        if not slots.get(pid):
            report.drop(NO_BYLINE, f"{pid}: no authorship rows", record_id=pid,
                        file=FILES["publications"], line=line)
            continue
        cats = tuple(c.strip() for c in row["categories"].split(";") if c.strip())
        try:
            pubs.append(
                PublicationRecord(
                    pub_id=pid,
                    year=int(row["year"]),
                    doc_type=row["doc_type"],
                    citations=int(row["citations"]),
                    subject_categories=cats,
                    byline=tuple(slots[pid]),
                )
            )
        except ValidationError as exc:
            raise _annotate(exc, pub_path, line) from None

    if not pubs:
        report.warn(EMPTY_CORPUS, "no publications survive the window and document-type filters")
    for year, cat in singleton_cohorts(pubs):
        report.warn(SINGLETON_COHORT, f"cohort ({year}, {cat}) has a single publication")

    return Corpus(tuple(pubs), roster, taxonomy, salaries, report)


def filter_sds_coverage(
    roster: Mapping[str, Researcher] | Iterable[Researcher],
    publications: Iterable[PublicationRecord],
    config: AssessmentConfig,
    report: ValidationReport | None = None,
    sds_codes: Iterable[str] = (),
) -> set[str]:
    """SDSs in which enough window-active researchers published at least once.

    ``sds_codes`` adds codes (e.g. the whole taxonomy) that may have no
    researchers; those are excluded with an ``empty_sds`` warning.
    """
    researchers = roster.values() if isinstance(roster, Mapping) else roster
    authors = {s.researcher_id for p in publications for s in p.byline if s.researcher_id is not None}
    active: dict[str, int] = defaultdict(int)
    publishing: dict[str, int] = defaultdict(int)
    for r in researchers:
        if not r.is_active(config.window):
            active.setdefault(r.sds_code, 0)
            continue
        active[r.sds_code] += 1
        if r.researcher_id in authors:
            publishing[r.sds_code] += 1
    for code in sds_codes:
        active.setdefault(code, 0)

    assessed: set[str] = set()
    for code in sorted(active):
        n = active[code]
        if n == 0:
            if report is not None:
                report.warn(EMPTY_SDS, f"SDS {code} has no researcher active in {config.window}",
                            record_id=code)
            continue
        if publishing[code] / n >= config.sds_coverage_min:
            assessed.add(code)
        elif report is not None:
            report.warn(SDS_BELOW_COVERAGE, f"SDS {code}: {publishing[code]} of {n} researchers published",
                        record_id=code)
    return assessed


def read_config(path: str | Path, **overrides: Any) -> AssessmentConfig:
    """Parse a ``key = value`` config file; ``overrides`` win over the file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read config {p}: {exc.strerror}") from exc
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string("[assessment]\n" + text if not text.lstrip().startswith("[") else text)
    except configparser.Error as exc:
        raise ParseError(str(exc).splitlines()[0], str(p)) from None
    section = parser[parser.sections()[0]] if parser.sections() else {}
    data: dict[str, Any] = {k: v for k, v in section.items()}
    data.update({k: v for k, v in overrides.items() if v is not None})
    if "window" not in data:
        raise ParseError("config needs a window (e.g. window = 2008-2012)", str(p))
    return AssessmentConfig.from_dict(data)


def write_corpus(corpus: Corpus, data_dir: str | Path) -> None:
    """Write ``corpus`` in the five-file layout read by :func:`load_corpus`."""
    root = Path(data_dir)
    root.mkdir(parents=True, exist_ok=True)

    def _write(name: str, header: tuple[str, ...], rows: Iterable[Iterable[Any]]) -> None:
        with (root / FILES[name]).open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)

    _write(
        "publications",
        COLUMNS["publications"],
        ((p.pub_id, p.year, p.doc_type, p.citations, ";".join(p.subject_categories))
         for p in corpus.publications),
    )
    _write(
        "authorship",
        COLUMNS["authorship"],
        ((p.pub_id, s.position, s.university_id or "", s.researcher_id or "")
         for p in corpus.publications for s in p.byline),
    )
    _write(
        "researchers",
        COLUMNS["researchers"],
        ((r.researcher_id, r.university_id, r.sds_code, y, rank)
         for r in corpus.roster.values() for y, rank in r.employment),
    )
    _write(
        "taxonomy",
        COLUMNS["taxonomy"],
        ((s, u, corpus.taxonomy.byline_convention[s].value) for s, u in corpus.taxonomy.sds_to_uda.items()),
    )
    _write("salaries", COLUMNS["salaries"], corpus.salaries.salaries.items())
