"""Eligibility, competition ranking and rank percentiles for league tables."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol, TypeVar

from .errors import InvalidRankError
from .model import AssessmentConfig, Scope, ScoreRow

# scores closer than this (relative) are ties; keeps rankings stable when
# salaries are rescaled and the scores pick up last-bit rounding noise
TIE_REL_TOL = 1e-9


class _HasStaff(Protocol):
    staff_count: int


R = TypeVar("R", bound=_HasStaff)


@dataclass(frozen=True)
class UnitScore:
    """A scored unit before eligibility filtering and ranking."""

    university_id: str
    scope: str
    staff_count: int
    cost_w: float
    score: float


def filter_eligible(rows: Iterable[R], scope: Scope | str, config: AssessmentConfig) -> list[R]:
    minimum = config.min_staff(Scope(scope))
    return [r for r in rows if r.staff_count >= minimum]


def _tied(a: float, b: float, rel_tol: float) -> bool:
    return a == b or math.isclose(a, b, rel_tol=rel_tol, abs_tol=0.0)


def competition_rank(scores: Sequence[float], rel_tol: float = TIE_REL_TOL) -> list[int]:
    """Standard competition ("1224") ranks, highest score first."""
    order = sorted(range(len(scores)), key=lambda i: -scores[i])
    ranks = [0] * len(scores)
    head = None
    current = 0
    for pos, i in enumerate(order):
        if head is None or not _tied(scores[i], head, rel_tol):
            head = scores[i]
            current = pos + 1
        ranks[i] = current
    return ranks


def average_rank(values: Sequence[float]) -> list[float]:
    """Fractional ranks, highest value first; tied values share the mean of
    the positions they span."""
    order = sorted(range(len(values)), key=lambda i: -values[i])
    ranks = [0.0] * len(values)
    pos = 0
    while pos < len(order):
        end = pos + 1
        while end < len(order) and values[order[end]] == values[order[pos]]:
            end += 1
        mid = (pos + 1 + end) / 2
        for i in order[pos:end]:
            ranks[i] = mid
        pos = end
    return ranks


def rank_percentile(rank: int, n: int) -> int:
    """``100 * (n - rank) / (n - 1)`` rounded half away from zero."""
    if n < 1 or not 1 <= rank <= n:
        raise InvalidRankError(f"rank {rank} outside 1..{n}")
    if n == 1:
        return 100
    exact = Fraction(100 * (n - rank), n - 1)
    return math.floor(exact + Fraction(1, 2))


def build_league_table(
    units: Iterable[UnitScore], config: AssessmentConfig, scope: Scope | str
) -> list[ScoreRow]:
    """Eligible units, best first, with ranks and rank percentiles.

    Units with a zero score are listed with percentile 0 whatever their rank,
    as in the published profile tables.
    """
    eligible = filter_eligible(units, scope, config)
    ranks = competition_rank([u.score for u in eligible])
    n = len(eligible)
    rows = [
        ScoreRow(
            university_id=u.university_id,
            scope=u.scope,
            staff_count=u.staff_count,
            cost_w=u.cost_w,
            score=u.score,
            rank=r,
            rank_percentile=0 if u.score == 0 else rank_percentile(r, n),
        )
        for u, r in zip(eligible, ranks)
    ]
    rows.sort(key=lambda row: (row.rank, row.university_id))
    return rows
