"""End-to-end assessment: corpus in, league tables out."""

from __future__ import annotations

import contextlib
import dataclasses
from collections import defaultdict
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from pathlib import Path

from .compare import compare_tables
from .cost import staff_headcount, unit_cost
from .credit import Unit
from .errors import HcaRankError, NoHcaInSdsError
from .hca import HcaSet, detect_hcas
from .ingest import Corpus, filter_sds_coverage, load_corpus
from .model import OVERALL, AssessmentConfig, ComparisonReport, CostMode, Researcher, Scope, ScoreRow
from .ranking import UnitScore, build_league_table
from .scoring import hca_credit, national_sds_average, score_overall, score_uda

TOTAL = "Total"


@dataclass(frozen=True)
class AssessmentResult:
    config: AssessmentConfig
    corpus: Corpus
    assessed_sds: tuple[str, ...]
    hcas: HcaSet
    sds_units: Mapping[Unit, UnitScore]
    national_averages: Mapping[str, float | None]
    uda_units: Mapping[tuple[str, str], UnitScore]
    overall_units: Mapping[str, UnitScore]
    sds_tables: Mapping[str, list[ScoreRow]]
    uda_tables: Mapping[str, list[ScoreRow]]
    overall_table: list[ScoreRow]

    def universities(self) -> list[str]:
        return sorted(self.overall_units)


@contextlib.contextmanager
def _stage(name: str) -> Iterator[None]:
    try:
        yield
    except HcaRankError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


def run_assessment(config: AssessmentConfig, data: str | Path | Corpus) -> AssessmentResult:
    """Run the whole assessment on a corpus directory or a loaded corpus.

    Errors keep their type and gain a ``stage`` attribute naming the step
    that raised them.
    """
    with _stage("load"):
        corpus = data if isinstance(data, Corpus) else load_corpus(data, config)
    pubs, roster, taxonomy = corpus.publications, corpus.roster, corpus.taxonomy

    with _stage("coverage"):
        assessed = sorted(
            filter_sds_coverage(roster, pubs, config, corpus.report, taxonomy.sds_to_uda)
        )
    assessed_set = set(assessed)

    with _stage("detect_hcas"):
        hcas = detect_hcas(pubs, config)

    with _stage("cost"):
        staff: dict[Unit, list[Researcher]] = defaultdict(list)
        for r in roster.values():
            if r.sds_code in assessed_set and r.is_active(config.window):
                staff[(r.university_id, r.sds_code)].append(r)
        costs = {
            unit: unit_cost(members, config.window, config.cost_mode, corpus.salaries)
            for unit, members in sorted(staff.items())
        }
        heads = {unit: staff_headcount(members, config.window) for unit, members in staff.items()}

    with _stage("credit"):
        # only window-active staff of assessed fields earn credit
        active_roster = {r.researcher_id: r for members in staff.values() for r in members}
        credit = hca_credit(hcas, pubs, active_roster, taxonomy)

    with _stage("score_sds"):
        sds_units = {
            unit: UnitScore(
                unit[0], unit[1], heads[unit], costs[unit],
                config.multiplier * credit.get(unit, 0.0) / costs[unit],
            )
            for unit in sorted(costs)
        }

    with _stage("national_averages"):
        by_sds: dict[str, list[tuple[float, float]]] = defaultdict(list)
        for (uni, sds), u in sds_units.items():
            by_sds[sds].append((u.cost_w, u.score))
        national: dict[str, float | None] = {}
        for sds in assessed:
            try:
                national[sds] = national_sds_average(by_sds.get(sds, []))
            except NoHcaInSdsError:
                national[sds] = None

    with _stage("score_uda"):
        per_uni: dict[str, dict[str, UnitScore]] = defaultdict(dict)
        for (uni, sds), u in sds_units.items():
            per_uni[uni][sds] = u
        uda_units: dict[tuple[str, str], UnitScore] = {}
        overall_units: dict[str, UnitScore] = {}
        for uni in sorted(per_uni):
            units = per_uni[uni]
            scores = {k: u.score for k, u in units.items()}
            wts = {k: u.cost_w for k, u in units.items()}
            by_uda: dict[str, list[str]] = defaultdict(list)
            for k in sorted(units):
                by_uda[taxonomy.uda_of(k)].append(k)
            for uda, codes in sorted(by_uda.items()):
                sub_w = {k: wts[k] for k in codes}
                uda_units[(uni, uda)] = UnitScore(
                    uni, uda,
                    sum(units[k].staff_count for k in codes),
                    sum(sub_w.values()),
                    score_uda(uni, uda, scores, sub_w, national),
                )
            overall_units[uni] = UnitScore(
                uni, OVERALL,
                sum(u.staff_count for u in units.values()),
                sum(wts.values()),
                score_overall(uni, scores, wts, national),
            )

    with _stage("rank"):
        sds_tables = {
            sds: build_league_table([u for (_, k), u in sds_units.items() if k == sds], config, Scope.SDS)
            for sds in assessed
        }
        udas = sorted({uda for _, uda in uda_units})
        uda_tables = {
            uda: build_league_table([u for (_, k), u in uda_units.items() if k == uda], config, Scope.UDA)
            for uda in udas
        }
        overall_table = build_league_table(overall_units.values(), config, Scope.OVERALL)

    return AssessmentResult(
        config=config,
        corpus=corpus,
        assessed_sds=tuple(assessed),
        hcas=hcas,
        sds_units=sds_units,
        national_averages=national,
        uda_units=uda_units,
        overall_units=overall_units,
        sds_tables=sds_tables,
        uda_tables=uda_tables,
        overall_table=overall_table,
    )


def compare_cost_modes(
    config: AssessmentConfig, data: str | Path | Corpus, shifters_only: bool = False
) -> dict[str, ComparisonReport]:
    """Salary-normalised versus years-only rankings, per UDA and overall.

    Keys are UDA codes plus ``"Total"`` for the whole-institution ranking.
    Tables with fewer than two common units are skipped.
    """
    corpus = data if isinstance(data, Corpus) else load_corpus(data, config)
    salary = run_assessment(dataclasses.replace(config, cost_mode=CostMode.SALARY), corpus)
    years = run_assessment(dataclasses.replace(config, cost_mode=CostMode.YEARS_ONLY), corpus)
    out: dict[str, ComparisonReport] = {}
    for uda in sorted(set(salary.uda_tables) & set(years.uda_tables)):
        a, b = salary.uda_tables[uda], years.uda_tables[uda]
        if len({r.university_id for r in a} & {r.university_id for r in b}) >= 2:
            out[uda] = compare_tables(a, b, shifters_only)
    common = {r.university_id for r in salary.overall_table} & {r.university_id for r in years.overall_table}
    if len(common) >= 2:
        out[TOTAL] = compare_tables(salary.overall_table, years.overall_table, shifters_only)
    return out
