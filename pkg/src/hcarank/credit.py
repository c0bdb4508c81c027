"""Fractional author credit from byline order.

Alphabetical fields split a publication evenly among its authors. Position-weighted
fields (the life sciences) reward the first and last authors:

* first and last author at the same university: 40% each, the other 20%
  split evenly among the remaining authors;
* otherwise: 30% to first and last, 15% to second and penultimate, the other
  10% split evenly among the rest.

Short bylines where roles coincide (one author is both second and
penultimate, or there is nobody left for the residual share) are handled by
summing the role shares per position and renormalising to 1.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping

from .errors import InvalidBylineError
from .model import Convention, FieldTaxonomy, PublicationRecord, Researcher

Unit = tuple[str, str]  # (university_id, sds_code)


def fractional_weights(n: int, convention: Convention, ends_same_university: bool = False) -> list[float]:
    if n < 1:
        raise InvalidBylineError(f"byline length must be >= 1, got {n}")
    if Convention(convention) is Convention.ALPHABETICAL or n == 1:
        return [1.0 / n] * n

    raw = [0.0] * n
    if ends_same_university:
        raw[0] += 0.40
        raw[-1] += 0.40
        inner = range(1, n - 1)
        residual = 0.20
    else:
        raw[0] += 0.30
        raw[-1] += 0.30
        raw[1] += 0.15
        raw[-2] += 0.15
        inner = range(2, n - 2)
        residual = 0.10
    if len(inner):
        share = residual / len(inner)
        for i in inner:
            raw[i] += share
        return raw
    # nobody left for the residual share; roles may also overlap (n <= 3)
    total = sum(raw)
    return [w / total for w in raw]


def ends_same_university(pub: PublicationRecord) -> bool:
    first, last = pub.byline[0].university_id, pub.byline[-1].university_id
    return first is not None and first == last


def _roster_index(roster: Mapping[str, Researcher] | Iterable[Researcher]) -> Mapping[str, Researcher]:
    if isinstance(roster, Mapping):
        return roster
    return {r.researcher_id: r for r in roster}


def unit_fraction(
    pub: PublicationRecord,
    university_id: str,
    sds_code: str,
    roster: Mapping[str, Researcher] | Iterable[Researcher],
    taxonomy: FieldTaxonomy,
) -> float:
    """Share of ``pub`` credited to the staff of one (university, SDS) unit."""
    index = _roster_index(roster)
    weights = fractional_weights(
        pub.n_authors, taxonomy.convention_of(sds_code), ends_same_university(pub)
    )
    total = 0.0
    for slot, w in zip(pub.byline, weights):
        r = index.get(slot.researcher_id) if slot.researcher_id is not None else None
        if r is not None and r.university_id == university_id and r.sds_code == sds_code:
            total += w
    return total


def unit_fractions(
    pub: PublicationRecord,
    roster: Mapping[str, Researcher],
    taxonomy: FieldTaxonomy,
) -> dict[Unit, float]:
    """``unit_fraction`` for every unit with a matched author on ``pub``."""
    matched: dict[Unit, list[int]] = defaultdict(list)
    for i, slot in enumerate(pub.byline):
        if slot.researcher_id is None:
            continue
        r = roster.get(slot.researcher_id)
        if r is not None:
            matched[(r.university_id, r.sds_code)].append(i)
    if not matched:
        return {}
    same_ends = ends_same_university(pub)
    cache: dict[Convention, list[float]] = {}
    out: dict[Unit, float] = {}
    for unit, positions in matched.items():
        conv = taxonomy.convention_of(unit[1])
        if conv not in cache:
            cache[conv] = fractional_weights(pub.n_authors, conv, same_ends)
        w = cache[conv]
        out[unit] = sum(w[i] for i in positions)
    return out
