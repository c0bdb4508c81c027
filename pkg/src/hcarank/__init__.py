"""Rank research institutions by highly-cited articles per unit of labor cost."""

from .compare import distribution_stats, shift_stats, size_performance_correlation, spearman_rho
from .cost import staff_headcount, unit_cost
from .credit import fractional_weights, unit_fraction
from .hca import HcaSet, averaged_percentile, citation_percentile, detect_hcas
from .ingest import Corpus, filter_sds_coverage, load_corpus, read_config
from .model import (
    AssessmentConfig,
    AuthorSlot,
    ComparisonReport,
    Convention,
    CostMode,
    FieldTaxonomy,
    PublicationRecord,
    Researcher,
    SalarySchedule,
    Scope,
    ScoreRow,
    Window,
)
from .pipeline import AssessmentResult, compare_cost_modes, run_assessment
from .ranking import build_league_table, competition_rank, filter_eligible, rank_percentile
from .scoring import national_sds_average, score_overall, score_sds, score_uda

__version__ = "0.1.0"

__all__ = [
    "AssessmentConfig",
    "AssessmentResult",
    "AuthorSlot",
    "ComparisonReport",
    "Convention",
    "Corpus",
    "CostMode",
    "FieldTaxonomy",
    "HcaSet",
    "PublicationRecord",
    "Researcher",
    "SalarySchedule",
    "Scope",
    "ScoreRow",
    "Window",
    "averaged_percentile",
    "build_league_table",
    "citation_percentile",
    "compare_cost_modes",
    "competition_rank",
    "detect_hcas",
    "distribution_stats",
    "filter_eligible",
    "filter_sds_coverage",
    "fractional_weights",
    "load_corpus",
    "national_sds_average",
    "rank_percentile",
    "read_config",
    "run_assessment",
    "score_overall",
    "score_sds",
    "score_uda",
    "shift_stats",
    "size_performance_correlation",
    "spearman_rho",
    "staff_headcount",
    "unit_cost",
    "unit_fraction",
]
