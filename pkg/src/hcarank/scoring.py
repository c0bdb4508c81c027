"""HCA-per-cost scores at field, discipline and institution level.

Field (SDS) score::

    P_S = multiplier / w_S * sum(f_i for highly-cited i)

Discipline (UDA) score, a cost-weighted mean of field scores each divided by
the national cost-weighted average of that field::

    P_U = sum_k (P_Sk / Pbar_k) * (w_Sk / w_U)

The overall score applies the same sum to every assessed field of the
university.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence

from .credit import Unit, unit_fraction, unit_fractions
from .errors import NoHcaInSdsError, ZeroCostError
from .hca import HcaSet
from .model import FieldTaxonomy, PublicationRecord, Researcher


def score_sds(
    university_id: str,
    sds_code: str,
    hcas: HcaSet,
    pubs: Iterable[PublicationRecord],
    roster: Mapping[str, Researcher] | Iterable[Researcher],
    taxonomy: FieldTaxonomy,
    cost_w: float,
    multiplier: float = 100.0,
) -> float:
    if not cost_w > 0:
        raise ZeroCostError(f"{university_id}/{sds_code}: cost must be positive, got {cost_w}")
    if not isinstance(roster, Mapping):
        roster = {r.researcher_id: r for r in roster}
    credit = sum(
        unit_fraction(p, university_id, sds_code, roster, taxonomy) for p in pubs if p.pub_id in hcas
    )
    return multiplier * credit / cost_w


def hca_credit(
    hcas: HcaSet,
    pubs: Iterable[PublicationRecord],
    roster: Mapping[str, Researcher],
    taxonomy: FieldTaxonomy,
) -> dict[Unit, float]:
    """Summed fractional credit over highly-cited publications, per unit."""
    totals: dict[Unit, float] = defaultdict(float)
    for pub in pubs:
        if pub.pub_id not in hcas:
            continue
        for unit, f in unit_fractions(pub, roster, taxonomy).items():
            totals[unit] += f
    return dict(totals)


def national_sds_average(rows: Sequence[tuple[float, float]]) -> float:
    """Cost-weighted mean score over universities with a positive score.

    ``rows`` holds one ``(cost_w, score)`` pair per university.
    """
    num = den = 0.0
    for w, p in rows:
        if p > 0:
            num += w * p
            den += w
    if den <= 0:
        raise NoHcaInSdsError("no university produced highly-cited articles in this SDS")
    return num / den


def _weighted_ratio_sum(
    label: str,
    sds_codes: Iterable[str],
    sds_scores: Mapping[str, float],
    sds_costs: Mapping[str, float],
    national_avgs: Mapping[str, float | None],
) -> float:
    codes = sorted(sds_codes)
    w_total = sum(sds_costs[k] for k in codes)
    if not w_total > 0:
        raise ZeroCostError(f"{label}: total cost must be positive, got {w_total}")
    total = 0.0
    for k in codes:
        avg = national_avgs.get(k)
        # no HCA anywhere nationally: the field adds cost but no output
        if avg is None:
            continue
        total += (sds_scores[k] / avg) * (sds_costs[k] / w_total)
    return total


def score_uda(
    university_id: str,
    uda_code: str,
    sds_scores: Mapping[str, float],
    sds_costs: Mapping[str, float],
    national_avgs: Mapping[str, float | None],
    taxonomy: FieldTaxonomy | None = None,
) -> float:
    """Discipline score of one university.

    Without ``taxonomy`` every SDS in ``sds_costs`` is taken to belong to
    ``uda_code``; with it, the maps are restricted to that UDA's SDSs.
    """
    codes: Iterable[str] = sds_costs
    if taxonomy is not None:
        codes = [k for k in sds_costs if taxonomy.uda_of(k) == uda_code]
    return _weighted_ratio_sum(f"{university_id}/{uda_code}", codes, sds_scores, sds_costs, national_avgs)


def score_overall(
    university_id: str,
    sds_scores: Mapping[str, float],
    sds_costs: Mapping[str, float],
    national_avgs: Mapping[str, float | None],
) -> float:
    return _weighted_ratio_sum(university_id, sds_costs, sds_scores, sds_costs, national_avgs)
