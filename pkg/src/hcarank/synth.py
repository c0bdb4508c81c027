"""Seeded synthetic corpora for benchmarks and tests."""

from __future__ import annotations

import random

from .ingest import Corpus
from .model import AuthorSlot, Convention, FieldTaxonomy, PublicationRecord, Researcher, SalarySchedule, Window

RANKS = ("assistant", "associate", "full")
DEFAULT_SALARIES = {"assistant": 40_000.0, "associate": 55_000.0, "full": 75_000.0}


def generate_corpus(
    n_publications: int,
    n_universities: int = 10,
    n_sds: int = 6,
    n_udas: int = 3,
    n_categories: int = 8,
    staff_per_unit: tuple[int, int] = (1, 6),
    max_authors: int = 8,
    external_share: float = 0.3,
    window: Window = Window(2008, 2012),
    salaries: dict[str, float] | None = None,
    employment_margin: int = 0,
    seed: int = 0,
) -> Corpus:
    """Random corpus with every byline drawn from the roster plus externals.

    Every university gets a random head count in every SDS (possibly zero),
    researchers may join late or leave early, and citation counts follow a
    heavy-tailed distribution so that ties occur at the bottom of cohorts.
    ``employment_margin`` widens employment spans beyond the window, so some
    researchers have no window years at all.
    """
    rng = random.Random(seed)
    years = list(range(window.start, window.end + 1))
    emp_years = list(range(window.start - employment_margin, window.end + employment_margin + 1))
    sds_codes = [f"S{i:02d}" for i in range(1, n_sds + 1)]
    taxonomy = FieldTaxonomy(
        {s: f"U{(i % n_udas) + 1}" for i, s in enumerate(sds_codes)},
        {s: (Convention.POSITION_WEIGHTED if i % 2 else Convention.ALPHABETICAL)
         for i, s in enumerate(sds_codes)},
    )
    roster: dict[str, Researcher] = {}
    for u in range(1, n_universities + 1):
        uni = f"UNIV_{u:02d}"
        for s in sds_codes:
            for _ in range(rng.randint(*staff_per_unit)):
                rid = f"R{len(roster) + 1:06d}"
                first = rng.choice(emp_years)
                last = rng.choice(emp_years[emp_years.index(first):])
                rank_i = rng.randrange(len(RANKS))
                emp = {}
                for y in range(first, last + 1):
                    if rank_i < len(RANKS) - 1 and rng.random() < 0.1:
                        rank_i += 1
                    emp[y] = RANKS[rank_i]
                roster[rid] = Researcher(rid, uni, s, emp)
    ids = sorted(roster)
    categories = [f"C{i:02d}" for i in range(1, n_categories + 1)]

    pubs = []
    for i in range(n_publications):
        n = rng.randint(1, max_authors)
        slots = []
        for pos in range(1, n + 1):
            if rng.random() < external_share:
                uni = f"EXT_{rng.randint(1, 5)}" if rng.random() < 0.5 else None
                slots.append(AuthorSlot(pos, uni, None))
            else:
                r = roster[rng.choice(ids)]
                slots.append(AuthorSlot(pos, r.university_id, r.researcher_id))
        cites = int(rng.paretovariate(1.2)) - 1 if rng.random() < 0.9 else 0
        pubs.append(
            PublicationRecord(
                pub_id=f"P{i + 1:07d}",
                year=rng.choice(years),
                doc_type="article",
                citations=cites,
                subject_categories=tuple(rng.sample(categories, min(n_categories, rng.choice((1, 1, 1, 2, 3))))),
                byline=tuple(slots),
            )
        )
    return Corpus(tuple(pubs), roster, taxonomy, SalarySchedule(salaries or DEFAULT_SALARIES))
