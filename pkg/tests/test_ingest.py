import pytest

from hcarank.errors import IoError, ParseError, ReferentialError, ValidationError
from hcarank.ingest import (
    DOC_TYPE_EXCLUDED,
    EMPTY_CORPUS,
    EMPTY_SDS,
    NO_BYLINE,
    OUT_OF_WINDOW,
    SDS_BELOW_COVERAGE,
    SINGLETON_COHORT,
    ValidationReport,
    filter_sds_coverage,
    load_corpus,
    read_config,
    write_corpus,
)
from hcarank.model import AssessmentConfig, AuthorSlot, Convention, CostMode, PublicationRecord, Researcher, Window

from conftest import write_dir

CFG = AssessmentConfig(window=Window(2008, 2012))
BASE = {
    "researchers": ["r1,A,S1,2010,full", "r2,B,S1,2010,full"],
    "taxonomy": ["S1,01,"],
    "salaries": ["full,1"],
}


def corpus_with(tmp_path, pubs, auth, **extra):
    files = dict(BASE, publications=pubs, authorship=auth, **extra)
    return load_corpus(write_dir(tmp_path / "c", **files), CFG)


def test_drops_editorial_and_out_of_window(tmp_path):
    c = corpus_with(
        tmp_path,
        ["p1,2010,Article,3,K", "p2,2010,Editorial Material,9,K", "p3,2005,Article,4,K",
         "p4,2010,Review,1,K"],
        ["p1,1,A,r1", "p2,1,A,r1", "p3,1,B,r2", "p4,1,B,r2"],
    )
    assert [p.pub_id for p in c.publications] == ["p1", "p4"]
    codes = {i.record_id: i.code for i in c.report.dropped}
    assert codes == {"p2": DOC_TYPE_EXCLUDED, "p3": OUT_OF_WINDOW}


def test_every_dropped_record_has_a_reason(tmp_path):
    c = corpus_with(
        tmp_path,
        ["p1,2010,Meeting Abstract,3,K", "p2,2020,Article,9,K", "p3,2010,Article,4,K"],
        ["p1,1,A,r1", "p2,1,A,r1"],
    )
    assert c.publications == ()
    assert sorted((i.record_id, i.code) for i in c.report.dropped) == [
        ("p1", DOC_TYPE_EXCLUDED), ("p2", OUT_OF_WINDOW), ("p3", NO_BYLINE),
    ]
    assert all(i.file and i.line for i in c.report.dropped)


def test_empty_publications_give_empty_corpus_with_warning(tmp_path):
    c = corpus_with(tmp_path, [], [])
    assert c.publications == ()
    assert [w.code for w in c.report.warnings] == [EMPTY_CORPUS]


def test_singleton_cohorts_warn(tmp_path):
    c = corpus_with(tmp_path, ["p1,2010,Article,3,K", "p2,2011,Article,3,K;Q", "p3,2011,Article,5,K"],
                    ["p1,1,A,r1", "p2,1,A,r1", "p3,1,B,r2"])
    singles = sorted(w.message for w in c.report.warnings if w.code == SINGLETON_COHORT)
    assert len(singles) == 2  # (2010, K) and (2011, Q)


def test_parse_error_carries_file_and_line(tmp_path):
    with pytest.raises(ParseError) as info:
        corpus_with(tmp_path, ["p1,2010,Article,3,K", "p2,2010,Article,many,K"], ["p1,1,A,r1"])
    assert info.value.path.endswith("publications.csv") and info.value.line == 3
    with pytest.raises(ParseError):
        corpus_with(tmp_path, ["p1,2010,Article,3,K,extra"], [])


def test_missing_column_is_parse_error(tmp_path):
    root = write_dir(tmp_path / "c", **BASE)
    (root / "publications.csv").write_text("pub_id,year\np1,2010\n")
    with pytest.raises(ParseError):
        load_corpus(root, CFG)


def test_dangling_researcher_is_referential_error(tmp_path):
    with pytest.raises(ReferentialError):
        corpus_with(tmp_path, ["p1,2010,Article,3,K"], ["p1,1,A,ghost"])
    with pytest.raises(ReferentialError):
        corpus_with(tmp_path, ["p1,2010,Article,3,K"], ["p1,1,B,r1"])


def test_invalid_records_are_validation_errors(tmp_path):
    with pytest.raises(ValidationError):
        corpus_with(tmp_path, ["p1,2010,Article,-2,K"], ["p1,1,A,r1"])
    with pytest.raises(ValidationError):
        corpus_with(tmp_path, ["p1,2010,Article,2,K"], ["p1,1,A,r1", "p1,3,B,r2"])
    with pytest.raises(ValidationError):
        corpus_with(tmp_path, ["p1,2010,Article,2,K"], ["p1,1,A,r1"], salaries=["full,0"])


def test_missing_directory_is_io_error(tmp_path):
    with pytest.raises(IoError):
        load_corpus(tmp_path / "nowhere", CFG)


def test_taxonomy_convention_defaults(tmp_path):
    c = corpus_with(tmp_path, [], [], taxonomy=["S1,01,", "S2,06,", "S3,02,PositionWeighted"])
    conv = c.taxonomy.byline_convention
    assert conv == {"S1": Convention.ALPHABETICAL, "S2": Convention.POSITION_WEIGHTED,
                    "S3": Convention.POSITION_WEIGHTED}


def _coverage(n_staff, n_publishing, extra_inactive=0):
    roster = [Researcher(f"r{i}", "A", "S", {2010: "full"}) for i in range(n_staff)]
    roster += [Researcher(f"old{i}", "A", "S", {1999: "full"}) for i in range(extra_inactive)]
    pubs = [
        PublicationRecord(f"p{i}", 2010, "article", 1, ("K",), (AuthorSlot(1, "A", f"r{i}"),))
        for i in range(n_publishing)
    ]
    report = ValidationReport()
    return filter_sds_coverage(roster, pubs, CFG, report), report


def test_coverage_boundary_inclusive():
    assert _coverage(4, 2)[0] == {"S"}
    got, report = _coverage(3, 1)
    assert got == set() and report.warnings[0].code == SDS_BELOW_COVERAGE
    # inactive researchers do not enter the denominator
    assert _coverage(2, 1, extra_inactive=5)[0] == {"S"}


def test_coverage_empty_sds_warns():
    got, report = _coverage(0, 0, extra_inactive=2)
    assert got == set()
    assert [w.code for w in report.warnings] == [EMPTY_SDS]


def test_read_config(tmp_path):
    path = tmp_path / "a.cfg"
    path.write_text(
        "window = 2008-2012\nhca_top_fraction = 0.05\ncost_mode = years\n"
        "doc_type_whitelist = article, review\nmin_staff_uda = 5\n"
    )
    cfg = read_config(path)
    assert cfg.window == Window(2008, 2012)
    assert cfg.hca_top_fraction == 0.05 and cfg.cost_mode is CostMode.YEARS_ONLY
    assert cfg.doc_type_whitelist == frozenset({"article", "review"})
    assert cfg.min_staff_uda == 5 and cfg.min_staff_sds == 2
    assert read_config(path, cost_mode="salary").cost_mode is CostMode.SALARY


def test_read_config_errors(tmp_path):
    with pytest.raises(IoError):
        read_config(tmp_path / "missing.cfg")
    bad = tmp_path / "bad.cfg"
    bad.write_text("hca_top_fraction = 0.1\n")
    with pytest.raises(ParseError):
        read_config(bad)
    bad.write_text("window = 2008-2012\nhca_top_fraction = 1.5\n")
    with pytest.raises(ValidationError):
        read_config(bad)


def test_write_then_load_round_trips(desk_dir, tmp_path):
    c = load_corpus(desk_dir, CFG)
    write_corpus(c, tmp_path / "copy")
    again = load_corpus(tmp_path / "copy", CFG)
    assert again.publications == c.publications
    assert dict(again.roster) == dict(c.roster)
    assert again.taxonomy == c.taxonomy and again.salaries == c.salaries
