import pytest
from hypothesis import given
from hypothesis import strategies as st

from hcarank.errors import NoHcaInSdsError, ZeroCostError
from hcarank.hca import HcaSet
from hcarank.model import AuthorSlot, Convention, FieldTaxonomy, PublicationRecord, Researcher
from hcarank.scoring import national_sds_average, score_overall, score_sds, score_uda

TAX = FieldTaxonomy({"S1": "U1", "S2": "U1", "S3": "U2"}, {k: Convention.ALPHABETICAL for k in ("S1", "S2", "S3")})
ROSTER = [Researcher("R1", "A", "S1", {2010: "full"}), Researcher("R2", "A", "S1", {2010: "full"})]


def pub(pid, authors):
    return PublicationRecord(pid, 2010, "article", 5, ("C",),
                             tuple(AuthorSlot(i + 1, u, r) for i, (u, r) in enumerate(authors)))


def test_score_sds_examples():
    pubs = [
        pub("p1", [("A", "R1")]),                       # f = 1
        pub("p2", [("A", "R2"), ("X", None)]),          # f = 0.5
        pub("p3", [("A", "R1")]),                       # not an HCA
    ]
    hcas = HcaSet({"p1": 95.0, "p2": 92.0, "p3": 10.0}, 90.0)
    assert score_sds("A", "S1", hcas, pubs, ROSTER, TAX, 500, 100) == pytest.approx(0.30)
    assert score_sds("A", "S1", hcas, pubs, ROSTER, TAX, 1000, 100) == pytest.approx(0.15)
    none = HcaSet({"p3": 10.0}, 90.0)
    assert score_sds("A", "S1", none, pubs, ROSTER, TAX, 500, 100) == 0
    with pytest.raises(ZeroCostError):
        score_sds("A", "S1", hcas, pubs, ROSTER, TAX, 0, 100)


def test_national_average_examples():
    assert national_sds_average([(100, 2.0)]) == 2
    assert national_sds_average([(100, 2.0), (300, 1.0)]) == pytest.approx(1.25)
    assert national_sds_average([(100, 2.0), (50, 0.0)]) == 2
    with pytest.raises(NoHcaInSdsError):
        national_sds_average([(100, 0.0), (50, 0.0)])


def test_score_uda_examples():
    assert score_uda("A", "U1", {"S1": 3.0}, {"S1": 10.0}, {"S1": 3.0}) == pytest.approx(1.0)
    got = score_uda("A", "U1", {"S1": 2.0, "S2": 0.5}, {"S1": 100, "S2": 300}, {"S1": 1.0, "S2": 1.0})
    assert got == pytest.approx(2.0 * 0.25 + 0.5 * 0.75) == pytest.approx(0.875)
    assert score_uda("A", "U1", {"S1": 0.0, "S2": 0.0}, {"S1": 1, "S2": 1}, {"S1": 2.0, "S2": 1.0}) == 0
    with pytest.raises(ZeroCostError):
        score_uda("A", "U1", {}, {}, {})


def test_score_uda_restricts_by_taxonomy():
    scores = {"S1": 2.0, "S2": 1.0, "S3": 9.0}
    costs = {"S1": 1.0, "S2": 1.0, "S3": 1.0}
    avgs = {"S1": 1.0, "S2": 1.0, "S3": 1.0}
    assert score_uda("A", "U1", scores, costs, avgs, TAX) == pytest.approx(1.5)


def test_undefined_average_keeps_cost():
    # S2 has no HCA nationally: its cost dilutes but adds no output
    got = score_uda("A", "U1", {"S1": 2.0, "S2": 0.0}, {"S1": 100, "S2": 100}, {"S1": 2.0, "S2": None})
    assert got == pytest.approx(0.5)


def test_score_overall_examples():
    scores = {"S1": 2.0, "S2": 0.5}
    costs = {"S1": 100.0, "S2": 300.0}
    avgs = {"S1": 1.0, "S2": 1.0}
    assert score_overall("A", scores, costs, avgs) == score_uda("A", "U1", scores, costs, avgs)
    # two UDAs each scoring 1.0 -> 1.0 overall whatever the costs
    scores = {"S1": 4.0, "S3": 0.5}
    avgs = {"S1": 4.0, "S3": 0.5}
    assert score_overall("A", scores, {"S1": 7.0, "S3": 300.0}, avgs) == pytest.approx(1.0)
    assert score_overall("A", {"S1": 0.0}, {"S1": 5.0}, {"S1": None}) == 0


@given(
    st.lists(st.tuples(st.floats(0.1, 1e4), st.just(0.0) | st.floats(0.01, 50)), min_size=1, max_size=6),
    st.floats(0.01, 100),
)
def test_scale_invariance_of_ratios(rows, lam):
    # rescaling costs by lam rescales scores by 1/lam
    if all(p == 0 for _, p in rows):
        return
    costs = {f"S{i}": w for i, (w, _) in enumerate(rows)}
    scores = {f"S{i}": p for i, (_, p) in enumerate(rows)}
    avgs = {k: (scores[k] if scores[k] > 0 else None) for k in scores}
    base = score_overall("A", scores, costs, avgs)
    scaled = score_overall(
        "A",
        {k: v / lam for k, v in scores.items()},
        {k: v * lam for k, v in costs.items()},
        {k: (v / lam if v is not None else None) for k, v in avgs.items()},
    )
    assert scaled == pytest.approx(base, rel=1e-9, abs=1e-12)


@given(st.lists(st.floats(0.1, 1e4), min_size=1, max_size=8))
def test_weight_closure_and_fixed_point(costs):
    # every field at its national average -> weights sum to 1 -> score 1
    c = {f"S{i}": w for i, w in enumerate(costs)}
    s = {k: 3.0 for k in c}
    assert score_uda("A", "U", s, c, dict(s)) == pytest.approx(1.0, abs=1e-12)
