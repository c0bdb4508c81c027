"""Labor cost of a set of researchers over the assessment window."""

from __future__ import annotations

from collections.abc import Iterable

from .errors import MissingSalaryError
from .model import CostMode, Researcher, SalarySchedule, Window


def unit_cost(
    staff: Iterable[Researcher],
    window: Window,
    mode: CostMode,
    salaries: SalarySchedule | None = None,
) -> float:
    """Sum of salary(rank) over every researcher-year inside ``window``.

    In ``YearsOnly`` mode each researcher-year costs 1 and ``salaries`` is
    not consulted.
    """
    mode = CostMode(mode)
    total = 0.0
    for r in staff:
        for _, rank in r.years_in(window):
            if mode is CostMode.YEARS_ONLY:
                total += 1.0
                continue
            if salaries is None or rank not in salaries:
                raise MissingSalaryError(rank, r.researcher_id)
            total += salaries[rank]
    return total


def staff_headcount(staff: Iterable[Researcher], window: Window) -> int:
    return sum(1 for r in staff if r.is_active(window))
