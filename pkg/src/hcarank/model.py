"""Domain types shared by every stage of the assessment.

All types are frozen dataclasses. Each one validates its invariants on
construction and round-trips through plain ``dict`` payloads
(``to_dict`` / ``from_dict``) so it can be written to JSON unchanged.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

from .errors import (
    AuthorSlotError,
    BylineGapError,
    ConfigError,
    DuplicateCategoryError,
    EmptyBylineError,
    EmptyCategoriesError,
    EmptyEmploymentError,
    NegativeCitationsError,
    NonPositiveSalaryError,
    TaxonomyError,
    ValidationError,
)

OVERALL = "Overall"


class Convention(str, enum.Enum):
    """How a field orders its bylines."""

    ALPHABETICAL = "Alphabetical"
    POSITION_WEIGHTED = "PositionWeighted"

    @classmethod
    def parse(cls, text: str) -> Convention:
        key = text.strip().lower().replace("_", "").replace("-", "").replace(" ", "")
        for member in cls:
            if member.value.lower() == key:
                return member
        raise ValidationError(f"unknown byline convention {text!r}")


class CostMode(str, enum.Enum):
    SALARY = "Salary"
    YEARS_ONLY = "YearsOnly"

    @classmethod
    def parse(cls, text: str) -> CostMode:
        key = text.strip().lower().replace("_", "").replace("-", "")
        aliases = {"salary": cls.SALARY, "yearsonly": cls.YEARS_ONLY, "years": cls.YEARS_ONLY}
        try:
            return aliases[key]
        except KeyError:
            raise ConfigError(f"unknown cost mode {text!r}") from None


class Scope(str, enum.Enum):
    SDS = "SDS"
    UDA = "UDA"
    OVERALL = "Overall"


@dataclass(frozen=True, order=True)
class Window:
    """Inclusive range of calendar years."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.end < self.start:
            raise ConfigError(f"empty window {self.start}-{self.end}")

    def __contains__(self, year: object) -> bool:
        return isinstance(year, int) and self.start <= year <= self.end

    def __len__(self) -> int:
        return self.end - self.start + 1

    def __str__(self) -> str:
        return f"{self.start}-{self.end}"

    @classmethod
    def parse(cls, text: str) -> Window:
        parts = text.replace(":", "-").split("-")
        if len(parts) != 2:
            raise ConfigError(f"window must look like 2008-2012, got {text!r}")
        return cls(int(parts[0]), int(parts[1]))


@dataclass(frozen=True)
class AuthorSlot:
    position: int
    university_id: str | None = None
    researcher_id: str | None = None

    def __post_init__(self) -> None:
        if self.position < 1:
            raise AuthorSlotError(f"byline position must be >= 1, got {self.position}")
        if self.researcher_id is not None and self.university_id is None:
            raise AuthorSlotError(
                f"researcher {self.researcher_id!r} at position {self.position} has no university"
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "position": self.position,
            "university_id": self.university_id,
            "researcher_id": self.researcher_id,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> AuthorSlot:
        return cls(int(data["position"]), data.get("university_id"), data.get("researcher_id"))


@dataclass(frozen=True)
class PublicationRecord:
    pub_id: str
    year: int
    doc_type: str
    citations: int
    subject_categories: tuple[str, ...]
    byline: tuple[AuthorSlot, ...]

    def __post_init__(self) -> None:
        cats = tuple(self.subject_categories)
        if not cats:
            raise EmptyCategoriesError(f"publication {self.pub_id!r} has no subject category")
        if len(set(cats)) != len(cats):
            raise DuplicateCategoryError(f"publication {self.pub_id!r} repeats a subject category")
        if self.citations < 0:
            raise NegativeCitationsError(f"publication {self.pub_id!r} has negative citations")
        slots = tuple(sorted(self.byline, key=lambda s: s.position))
        if not slots:
            raise EmptyBylineError(f"publication {self.pub_id!r} has an empty byline")
        if [s.position for s in slots] != list(range(1, len(slots) + 1)):
            raise BylineGapError(
                f"publication {self.pub_id!r} byline positions "
                f"{[s.position for s in slots]} are not 1..{len(slots)}"
            )
        object.__setattr__(self, "subject_categories", cats)
        object.__setattr__(self, "byline", slots)

    @property
    def n_authors(self) -> int:
        return len(self.byline)

    def to_dict(self) -> dict[str, Any]:
        return {
            "pub_id": self.pub_id,
            "year": self.year,
            "doc_type": self.doc_type,
            "citations": self.citations,
            "subject_categories": list(self.subject_categories),
            "byline": [s.to_dict() for s in self.byline],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> PublicationRecord:
        return cls(
            pub_id=str(data["pub_id"]),
            year=int(data["year"]),
            doc_type=str(data["doc_type"]),
            citations=int(data["citations"]),
            subject_categories=tuple(data["subject_categories"]),
            byline=tuple(AuthorSlot.from_dict(s) for s in data["byline"]),
        )


@dataclass(frozen=True)
class Researcher:
    """One staff member. ``employment`` maps year to academic rank and is
    stored as a year-sorted tuple of pairs."""

    researcher_id: str
    university_id: str
    sds_code: str
    employment: tuple[tuple[int, str], ...]

    def __post_init__(self) -> None:
        emp = self.employment
        pairs = emp.items() if isinstance(emp, Mapping) else emp
        norm = tuple(sorted((int(y), str(r)) for y, r in pairs))
        if not norm:
            raise EmptyEmploymentError(f"researcher {self.researcher_id!r} has no employment years")
        years = [y for y, _ in norm]
        if len(set(years)) != len(years):
            raise ValidationError(f"researcher {self.researcher_id!r} lists a year twice")
        object.__setattr__(self, "employment", norm)

    def years_in(self, window: Window) -> list[tuple[int, str]]:
        return [(y, r) for y, r in self.employment if y in window]

    def is_active(self, window: Window) -> bool:
        return any(y in window for y, _ in self.employment)

    def to_dict(self) -> dict[str, Any]:
        return {
            "researcher_id": self.researcher_id,
            "university_id": self.university_id,
            "sds_code": self.sds_code,
            "employment": {str(y): r for y, r in self.employment},
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Researcher:
        return cls(
            researcher_id=str(data["researcher_id"]),
            university_id=str(data["university_id"]),
            sds_code=str(data["sds_code"]),
            employment=tuple((int(y), r) for y, r in dict(data["employment"]).items()),
        )


@dataclass(frozen=True)
class FieldTaxonomy:
    sds_to_uda: Mapping[str, str]
    byline_convention: Mapping[str, Convention]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sds_to_uda", dict(sorted(self.sds_to_uda.items())))
        conv = {k: Convention(v) for k, v in sorted(self.byline_convention.items())}
        object.__setattr__(self, "byline_convention", conv)
        missing = set(self.sds_to_uda) ^ set(conv)
        if missing:
            raise TaxonomyError(f"SDS codes without both a UDA and a convention: {sorted(missing)}")

    def uda_of(self, sds_code: str) -> str:
        try:
            return self.sds_to_uda[sds_code]
        except KeyError:
            raise TaxonomyError(f"SDS {sds_code!r} has no UDA") from None

    def convention_of(self, sds_code: str) -> Convention:
        try:
            return self.byline_convention[sds_code]
        except KeyError:
            raise TaxonomyError(f"SDS {sds_code!r} has no byline convention") from None

    def check_roster(self, roster: Iterable[Researcher]) -> None:
        missing = sorted({r.sds_code for r in roster} - set(self.sds_to_uda))
        if missing:
            raise TaxonomyError(f"researchers reference unknown SDS codes: {missing}")

    def udas(self) -> list[str]:
        return sorted(set(self.sds_to_uda.values()))

    def to_dict(self) -> dict[str, Any]:
        return {
            "sds_to_uda": dict(self.sds_to_uda),
            "byline_convention": {k: v.value for k, v in self.byline_convention.items()},
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> FieldTaxonomy:
        return cls(dict(data["sds_to_uda"]), dict(data["byline_convention"]))


@dataclass(frozen=True)
class SalarySchedule:
    """Average annual salary per academic rank."""

    salaries: Mapping[str, float]

    def __post_init__(self) -> None:
        for rank, value in self.salaries.items():
            if not (value > 0 and math.isfinite(value)):
                raise NonPositiveSalaryError(f"salary for rank {rank!r} must be > 0, got {value}")
        object.__setattr__(self, "salaries", {k: float(v) for k, v in sorted(self.salaries.items())})

    def __contains__(self, rank: object) -> bool:
        return rank in self.salaries

    def __getitem__(self, rank: str) -> float:
        return self.salaries[rank]

    def scaled(self, factor: float) -> SalarySchedule:
        return SalarySchedule({k: v * factor for k, v in self.salaries.items()})

    def to_dict(self) -> dict[str, Any]:
        return dict(self.salaries)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> SalarySchedule:
        return cls({str(k): float(v) for k, v in data.items()})


DEFAULT_DOC_TYPES = frozenset({"article", "review", "letter", "proceedings paper"})


@dataclass(frozen=True)
class AssessmentConfig:
    window: Window
    hca_top_fraction: float = 0.10
    multiplier: float = 100.0
    cost_mode: CostMode = CostMode.SALARY
    min_staff_sds: int = 2
    min_staff_uda: int = 10
    min_staff_overall: int = 30
    doc_type_whitelist: frozenset[str] = field(default=DEFAULT_DOC_TYPES)
    sds_coverage_min: float = 0.50

    def __post_init__(self) -> None:
        object.__setattr__(self, "cost_mode", CostMode(self.cost_mode))
        object.__setattr__(
            self, "doc_type_whitelist", frozenset(t.strip().lower() for t in self.doc_type_whitelist)
        )
        if not 0.0 < self.hca_top_fraction < 1.0:
            raise ConfigError(f"hca_top_fraction must lie in (0, 1), got {self.hca_top_fraction}")
        if not self.multiplier > 0:
            raise ConfigError(f"multiplier must be positive, got {self.multiplier}")
        for name in ("min_staff_sds", "min_staff_uda", "min_staff_overall"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if not 0.0 <= self.sds_coverage_min <= 1.0:
            raise ConfigError(f"sds_coverage_min must lie in [0, 1], got {self.sds_coverage_min}")
        if not self.doc_type_whitelist:
            raise ConfigError("doc_type_whitelist is empty")

    @property
    def hca_threshold(self) -> float:
        """Averaged percentile an article must reach to count as highly cited."""
        return 100.0 * (1.0 - self.hca_top_fraction)

    def min_staff(self, scope: Scope) -> int:
        return {
            Scope.SDS: self.min_staff_sds,
            Scope.UDA: self.min_staff_uda,
            Scope.OVERALL: self.min_staff_overall,
        }[Scope(scope)]

    def to_dict(self) -> dict[str, Any]:
        return {
            "window": str(self.window),
            "hca_top_fraction": self.hca_top_fraction,
            "multiplier": self.multiplier,
            "cost_mode": self.cost_mode.value,
            "min_staff_sds": self.min_staff_sds,
            "min_staff_uda": self.min_staff_uda,
            "min_staff_overall": self.min_staff_overall,
            "doc_type_whitelist": sorted(self.doc_type_whitelist),
            "sds_coverage_min": self.sds_coverage_min,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> AssessmentConfig:
        kwargs: dict[str, Any] = {"window": Window.parse(str(data["window"]))}
        for name, conv in (
            ("hca_top_fraction", float),
            ("multiplier", float),
            ("min_staff_sds", int),
            ("min_staff_uda", int),
            ("min_staff_overall", int),
            ("sds_coverage_min", float),
        ):
            if name in data:
                kwargs[name] = conv(data[name])
        if "cost_mode" in data:
            kwargs["cost_mode"] = CostMode.parse(str(data["cost_mode"]))
        if "doc_type_whitelist" in data:
            types = data["doc_type_whitelist"]
            if isinstance(types, str):
                types = [t for t in types.split(",") if t.strip()]
            kwargs["doc_type_whitelist"] = frozenset(types)
        return cls(**kwargs)


@dataclass(frozen=True)
class ScoreRow:
    """One line of a league table."""

    university_id: str
    scope: str
    staff_count: int
    cost_w: float
    score: float
    rank: int
    rank_percentile: int

    def __post_init__(self) -> None:
        if self.cost_w <= 0:
            raise ValidationError(f"{self.unit_id}: an eligible row needs cost_w > 0")
        if self.score < 0:
            raise ValidationError(f"{self.unit_id}: negative score")
        if self.rank < 1:
            raise ValidationError(f"{self.unit_id}: rank must be >= 1")
        if not 0 <= self.rank_percentile <= 100:
            raise ValidationError(f"{self.unit_id}: percentile outside 0..100")

    @property
    def unit_id(self) -> tuple[str, str]:
        return (self.university_id, self.scope)

    def to_dict(self) -> dict[str, Any]:
        return {
            "university_id": self.university_id,
            "scope": self.scope,
            "staff_count": self.staff_count,
            "cost_w": self.cost_w,
            "score": self.score,
            "rank": self.rank,
            "rank_percentile": self.rank_percentile,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> ScoreRow:
        return cls(
            university_id=str(data["university_id"]),
            scope=str(data["scope"]),
            staff_count=int(data["staff_count"]),
            cost_w=float(data["cost_w"]),
            score=float(data["score"]),
            rank=int(data["rank"]),
            rank_percentile=int(data["rank_percentile"]),
        )


@dataclass(frozen=True)
class ComparisonReport:
    n_units: int
    spearman_rho: float
    pct_shifting: float
    avg_shift: float
    max_shift: int
    avg_percentile_shift: float
    max_percentile_shift: float

    def __post_init__(self) -> None:
        if not -1.0 - 1e-12 <= self.spearman_rho <= 1.0 + 1e-12:
            raise ValidationError(f"spearman_rho {self.spearman_rho} outside [-1, 1]")
        if not 0.0 <= self.pct_shifting <= 100.0:
            raise ValidationError(f"pct_shifting {self.pct_shifting} outside [0, 100]")
        if self.avg_shift > self.max_shift + 1e-12:
            raise ValidationError("avg_shift exceeds max_shift")
        if self.avg_percentile_shift > self.max_percentile_shift + 1e-12:
            raise ValidationError("avg_percentile_shift exceeds max_percentile_shift")

    def to_dict(self) -> dict[str, Any]:
        return {
            "n_units": self.n_units,
            "spearman_rho": self.spearman_rho,
            "pct_shifting": self.pct_shifting,
            "avg_shift": self.avg_shift,
            "max_shift": self.max_shift,
            "avg_percentile_shift": self.avg_percentile_shift,
            "max_percentile_shift": self.max_percentile_shift,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> ComparisonReport:
        return cls(
            n_units=int(data["n_units"]),
            spearman_rho=float(data["spearman_rho"]),
            pct_shifting=float(data["pct_shifting"]),
            avg_shift=float(data["avg_shift"]),
            max_shift=int(data["max_shift"]),
            avg_percentile_shift=float(data["avg_percentile_shift"]),
            max_percentile_shift=float(data["max_percentile_shift"]),
        )
