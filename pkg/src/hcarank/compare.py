"""Ranking comparisons and score-distribution diagnostics."""

from __future__ import annotations

from collections.abc import Sequence
from typing import NamedTuple

import numpy as np

from .errors import DegenerateDistributionError, InvalidPairingError, TooFewValuesError
from .model import ComparisonReport, ScoreRow
from .ranking import average_rank, competition_rank


def _paired(a: Sequence[float], b: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    if len(a) != len(b):
        raise InvalidPairingError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise InvalidPairingError("need at least two paired units")
    return np.asarray(a, dtype=float), np.asarray(b, dtype=float)


def spearman_rho(ranks_a: Sequence[float], ranks_b: Sequence[float]) -> float:
    """Pearson correlation of two rank vectors (valid with tied ranks).

    Two identical vectors give 1.0 even when every unit is tied; a constant
    vector paired with a varying one has no defined correlation.
    """
    a, b = _paired(ranks_a, ranks_b)
    if np.array_equal(a, b):
        return 1.0
    da, db = a - a.mean(), b - b.mean()
    denom = np.sqrt((da * da).sum() * (db * db).sum())
    if denom == 0:
        raise DegenerateDistributionError("a rank vector is constant")
    rho = float((da * db).sum() / denom)
    return min(1.0, max(-1.0, rho))


def shift_stats(
    ranks_a: Sequence[int],
    ranks_b: Sequence[int],
    percentiles_a: Sequence[float],
    percentiles_b: Sequence[float],
    shifters_only: bool = False,
) -> ComparisonReport:
    """Rank movement between two rankings of the same units.

    Averages run over all units by default; ``shifters_only`` averages over
    the units whose rank changed.
    """
    ra, rb = _paired(ranks_a, ranks_b)
    pa, pb = _paired(percentiles_a, percentiles_b)
    if len(pa) != len(ra):
        raise InvalidPairingError("percentile vectors do not match rank vectors")
    n = len(ra)
    d_rank = np.abs(ra - rb)
    d_pct = np.abs(pa - pb)
    moved = d_rank != 0
    n_moved = int(moved.sum())
    if shifters_only:
        avg_shift = float(d_rank[moved].mean()) if n_moved else 0.0
        avg_pct = float(d_pct[moved].mean()) if n_moved else 0.0
    else:
        avg_shift = float(d_rank.mean())
        avg_pct = float(d_pct.mean())
    return ComparisonReport(
        n_units=n,
        spearman_rho=spearman_rho(ra, rb),
        pct_shifting=100.0 * n_moved / n,
        avg_shift=avg_shift,
        max_shift=int(d_rank.max()),
        avg_percentile_shift=avg_pct,
        max_percentile_shift=float(d_pct.max()),
    )


def compare_tables(
    table_a: Sequence[ScoreRow], table_b: Sequence[ScoreRow], shifters_only: bool = False
) -> ComparisonReport:
    """``shift_stats`` on the units present in both league tables."""
    by_unit_b = {row.university_id: row for row in table_b}
    pairs = [(row, by_unit_b[row.university_id]) for row in table_a if row.university_id in by_unit_b]
    pairs.sort(key=lambda p: p[0].university_id)
    return shift_stats(
        [a.rank for a, _ in pairs],
        [b.rank for _, b in pairs],
        [a.rank_percentile for a, _ in pairs],
        [b.rank_percentile for _, b in pairs],
        shifters_only=shifters_only,
    )


class DistributionStats(NamedTuple):
    mean: float
    median: float
    skewness: float


def skewness(values: Sequence[float]) -> float:
    """Adjusted Fisher-Pearson sample skewness, ``sqrt(n(n-1))/(n-2) * m3/m2**1.5``."""
    x = np.asarray(values, dtype=float)
    n = len(x)
    if n < 3:
        raise TooFewValuesError(f"skewness needs at least 3 values, got {n}")
    if x.max() == x.min():
        raise DegenerateDistributionError("zero variance: skewness is undefined")
    dev = x - x.mean()
    m2 = (dev**2).mean()
    m3 = (dev**3).mean()
    return float(np.sqrt(n * (n - 1)) / (n - 2) * m3 / m2**1.5)


def distribution_stats(scores: Sequence[float]) -> DistributionStats:
    """Mean, median and skewness of a score column.

    With fewer than three values ``TooFewValuesError`` is raised; it still
    carries ``mean`` and ``median`` for any non-empty input.
    """
    x = np.asarray(scores, dtype=float)
    if len(x) == 0:
        raise TooFewValuesError("no values")
    mean, median = float(x.mean()), float(np.median(x))
    if len(x) < 3:
        raise TooFewValuesError(f"skewness needs at least 3 values, got {len(x)}", mean, median)
    return DistributionStats(mean, median, skewness(x))


def size_performance_correlation(
    staff_counts: Sequence[float], scores: Sequence[float], ties: str = "average"
) -> float:
    """Spearman correlation between unit size and score.

    ``ties="average"`` ranks tied values at their mean position (the usual
    Spearman convention); ``ties="min"`` uses competition ranks instead.
    """
    _paired(staff_counts, scores)
    if ties == "average":
        rank = average_rank
    elif ties == "min":
        rank = competition_rank
    else:
        raise ValueError(f"ties must be 'average' or 'min', got {ties!r}")
    return spearman_rho(rank(staff_counts), rank(scores))
