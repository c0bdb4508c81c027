from pathlib import Path

import pytest

HEADERS = {
    "publications": "pub_id,year,doc_type,citations,categories",
    "authorship": "pub_id,position,university_id,researcher_id",
    "researchers": "researcher_id,university_id,sds,year,rank",
    "taxonomy": "sds,uda,convention",
    "salaries": "rank,avg_salary",
}


def write_dir(root: Path, **files: list[str]) -> Path:
    """Write a corpus directory; each keyword is a list of data lines."""
    root.mkdir(parents=True, exist_ok=True)
    for name, header in HEADERS.items():
        lines = files.get(name, [])
        (root / f"{name}.csv").write_text("\n".join([header, *lines]) + "\n", encoding="utf-8")
    return root


def _employ(rid, uni, sds, rank="full", years=range(2008, 2013)):
    return [f"{rid},{uni},{sds},{y},{rank}" for y in years]


def desk_files():
    """Three universities, two SDSs, twelve publications."""
    researchers = (
        _employ("a1", "A", "S1") + _employ("a2", "A", "S1", "associate")
        + _employ("a3", "A", "S2")
        + _employ("b1", "B", "S1", "associate") + _employ("b2", "B", "S2", years=range(2010, 2013))
        + _employ("b3", "B", "S2", "associate")
        + _employ("c1", "C", "S1") + _employ("c2", "C", "S2", "associate", range(2008, 2011))
    )
    pubs, auth = [], []
    bylines = [
        ["A:a1", "B:b1"], ["A:a2"], ["C:c1", "X:", "A:a1"], ["B:b2", "B:b3"],
        ["A:a3", "C:c2", ":", "A:a3"], ["B:b3"], ["C:c2", "B:b2"], ["A:a1", "A:a2", "C:c1"],
        ["X:", "B:b1"], ["C:c1"], ["A:a3", "B:b3", "C:c2", "X:", "B:b2"], ["A:a2", "C:c1"],
    ]
    # the last author slot repeats a3 in p5 deliberately (two slots, one person)
    cites = [40, 3, 12, 25, 7, 0, 18, 9, 31, 2, 14, 5]
    for i, (names, c) in enumerate(zip(bylines, cites), start=1):
        year = 2008 + i % 2
        cat = "K1" if i % 3 else "K1;K2"
        pubs.append(f"p{i:02d},{year},Article,{c},{cat}")
        for pos, slot in enumerate(names, start=1):
            uni, rid = slot.split(":")
            auth.append(f"p{i:02d},{pos},{uni},{rid}")
    return {
        "publications": pubs,
        "authorship": auth,
        "researchers": researchers,
        "taxonomy": ["S1,01,Alphabetical", "S2,06,"],
        "salaries": ["associate,50000", "full,80000"],
    }


@pytest.fixture
def desk_dir(tmp_path):
    return write_dir(tmp_path / "desk", **desk_files())


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    def check(number: int, name: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'}  [{number}] {name}" + (f": {detail}" if detail else "")
        lines.append(line)
        print(line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
