"""Exception hierarchy.

Every error raised by the package derives from :class:`HcaRankError`.
Constructor-level invariant violations derive from :class:`ValidationError`
so callers (and the CLI) can tell bad data from bad files.
"""

from __future__ import annotations


class HcaRankError(Exception):
    """Base class for all package errors."""

    #: pipeline stage the error surfaced in, set by ``run_assessment``
    stage: str | None = None


# --- model invariants --------------------------------------------------------


class ValidationError(HcaRankError, ValueError):
    """A domain object violates one of its invariants."""


class EmptyBylineError(ValidationError):
    pass


class BylineGapError(ValidationError):
    """Byline positions are not exactly 1..n."""


class EmptyCategoriesError(ValidationError):
    pass


class DuplicateCategoryError(ValidationError):
    pass


class NegativeCitationsError(ValidationError):
    pass


class AuthorSlotError(ValidationError):
    """A researcher id without a university, or a non-positive position."""


class EmptyEmploymentError(ValidationError):
    pass


class TaxonomyError(ValidationError):
    """A researcher's SDS has no UDA or no byline convention."""


class NonPositiveSalaryError(ValidationError):
    pass


class ConfigError(ValidationError):
    pass


class ReferentialError(ValidationError):
    """A byline references a researcher that is not on the roster, or
    disagrees with the roster about the researcher's university."""


# --- operations ----------------------------------------------------------------


class MembershipError(HcaRankError, ValueError):
    pass


class EmptyCohortError(HcaRankError, ValueError):
    pass


class MissingCohortError(HcaRankError, KeyError):
    pass


class InvalidBylineError(HcaRankError, ValueError):
    pass


class MissingSalaryError(HcaRankError, KeyError):
    def __init__(self, rank: str, researcher_id: str) -> None:
        super().__init__(f"no salary for rank {rank!r} (researcher {researcher_id!r})")
        self.rank = rank
        self.researcher_id = researcher_id

    def __str__(self) -> str:
        return self.args[0]


class ZeroCostError(HcaRankError, ValueError):
    pass


class NoHcaInSdsError(HcaRankError, ValueError):
    pass


class InvalidRankError(HcaRankError, ValueError):
    pass


class InvalidPairingError(HcaRankError, ValueError):
    pass


class TooFewValuesError(HcaRankError, ValueError):
    def __init__(self, message: str, mean: float | None = None, median: float | None = None) -> None:
        super().__init__(message)
        self.mean = mean
        self.median = median


class DegenerateDistributionError(HcaRankError, ValueError):
    pass


# --- files --------------------------------------------------------------------


class ParseError(HcaRankError):
    def __init__(self, message: str, path: str | None = None, line: int | None = None) -> None:
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)
        self.path = path
        self.line = line


class IoError(HcaRankError, OSError):
    pass
