"""Highly-cited article detection.

An article's standing in a (year, subject category) cohort is its
strict-less percentile rank: the share of cohort members with strictly
fewer citations. Articles filed under several categories get the plain
mean of their per-category percentiles, and are flagged as highly cited
when that mean reaches ``100 * (1 - top_fraction)``.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import EmptyCohortError, MembershipError, MissingCohortError
from .model import AssessmentConfig, PublicationRecord

# absorbs float noise in averaged percentiles at the cut (e.g. mean of 85 and 95)
_CUT_EPS = 1e-9

CohortKey = tuple[int, str]


@dataclass(frozen=True)
class HcaSet:
    """Averaged percentile of every publication and the flagged subset."""

    percentiles: Mapping[str, float]
    threshold: float
    hca_ids: frozenset[str] = field(init=False)

    def __post_init__(self) -> None:
        flagged = frozenset(p for p, v in self.percentiles.items() if v >= self.threshold - _CUT_EPS)
        object.__setattr__(self, "hca_ids", flagged)

    def is_hca(self, pub_id: str) -> bool:
        return pub_id in self.hca_ids

    def __len__(self) -> int:
        return len(self.hca_ids)

    def __contains__(self, pub_id: object) -> bool:
        return pub_id in self.hca_ids


def citation_percentile(pub: PublicationRecord, cohort: Sequence[PublicationRecord]) -> float:
    if not cohort:
        raise EmptyCohortError("cohort is empty")
    if not any(q.pub_id == pub.pub_id for q in cohort):
        raise MembershipError(f"publication {pub.pub_id!r} is not in the cohort")
    below = sum(1 for q in cohort if q.citations < pub.citations)
    return 100.0 * below / len(cohort)


def averaged_percentile(
    pub: PublicationRecord, cohorts: Mapping[str, Sequence[PublicationRecord]]
) -> float:
    values = []
    for cat in pub.subject_categories:
        if cat not in cohorts:
            raise MissingCohortError(f"no cohort for category {cat!r} of {pub.pub_id!r}")
        values.append(citation_percentile(pub, cohorts[cat]))
    return sum(values) / len(values)


def build_cohorts(pubs: Iterable[PublicationRecord]) -> dict[CohortKey, list[PublicationRecord]]:
    cohorts: dict[CohortKey, list[PublicationRecord]] = defaultdict(list)
    for pub in pubs:
        for cat in pub.subject_categories:
            cohorts[(pub.year, cat)].append(pub)
    return dict(cohorts)


def cohort_percentiles(pubs: Iterable[PublicationRecord]) -> dict[str, float]:
    """Averaged percentile for every publication, against the corpus itself.

    Each cohort is sorted once and queried by binary search, so this is
    O(N log N) in the number of (publication, category) pairs.
    """
    pubs = list(pubs)
    sorted_counts: dict[CohortKey, list[int]] = defaultdict(list)
    for pub in pubs:
        for cat in pub.subject_categories:
            sorted_counts[(pub.year, cat)].append(pub.citations)
    for counts in sorted_counts.values():
        counts.sort()

    out: dict[str, float] = {}
    for pub in pubs:
        total = 0.0
        for cat in pub.subject_categories:
            counts = sorted_counts[(pub.year, cat)]
            total += 100.0 * bisect_left(counts, pub.citations) / len(counts)
        out[pub.pub_id] = total / len(pub.subject_categories)
    return dict(sorted(out.items()))


def detect_hcas(pubs: Iterable[PublicationRecord], config: AssessmentConfig) -> HcaSet:
    return HcaSet(cohort_percentiles(pubs), config.hca_threshold)


def singleton_cohorts(pubs: Iterable[PublicationRecord]) -> list[CohortKey]:
    sizes: dict[CohortKey, int] = defaultdict(int)
    for pub in pubs:
        for cat in pub.subject_categories:
            sizes[(pub.year, cat)] += 1
    return sorted(k for k, n in sizes.items() if n == 1)
