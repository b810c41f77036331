"""Fixture corpus: stated properties and stored files."""

from pathlib import Path

import pytest

from posmat import parse_any, parse_graph
from posmat.errors import RangeError
from posmat.fixtures import FIXTURES, check_fixture, fixture_paths, fixture_texts, get_fixture

CORPUS = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.mark.parametrize("fid", sorted(FIXTURES))
def test_manifest_entries_hold(fid):
    bad = [row for row in check_fixture(fid) if not row[4]]
    assert not bad, bad


@pytest.mark.parametrize("fid", sorted(FIXTURES))
def test_stored_files_match_payload(fid):
    fx = get_fixture(fid)
    paths = fixture_paths(fx, CORPUS)
    assert all(p.exists() for p in paths)
    for path, text in zip(paths, fixture_texts(fx)):
        stored = path.read_text()
        if fx.kind == "graph":
            assert parse_graph(stored) == fx.payload
        else:
            assert parse_any(stored) == parse_any(text)


def test_unknown_fixture_raises():
    with pytest.raises(RangeError):
        get_fixture("nope")


def test_every_fixture_states_something_or_is_a_plain_example():
    plain = {fid for fid, fx in FIXTURES.items() if not fx.manifest}
    assert plain <= {"reducible-with-offdiagonals-4", "complete-4"}
