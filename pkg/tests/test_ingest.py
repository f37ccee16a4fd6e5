import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from gendered_terms.ingest import (
    ACCEPTED,
    Comment,
    FileUnreadable,
    IngestStats,
    MalformedRecord,
    filter_comment,
    ingest_file_stats,
    parse_record,
    stream_corpus,
)

DATA = Path(__file__).parent / "data"


def _c(body):
    return Comment("x", "a", "s", 0, body)


def test_parse_well_formed():
    rec = parse_record('{"id":"a1","author":"Mike33","subreddit":"Gaming","created_utc":1517443200,"body":"nice"}')
    assert rec == Comment("a1", "Mike33", "Gaming", 1517443200, "nice")


def test_parse_missing_body():
    assert isinstance(parse_record('{"id":"a2","author":"x"}'), MalformedRecord)


def test_parse_ignores_extra_fields():
    rec = parse_record('{"id":"a1","author":"A","subreddit":"S","created_utc":5,"body":"hi","score":5}')
    assert rec == Comment("a1", "A", "S", 5, "hi")


@pytest.mark.parametrize("line", [
    "not json",
    "[1, 2]",
    '{"id":1,"author":"A","subreddit":"S","created_utc":5,"body":"hi"}',
    '{"id":"1","author":"","subreddit":"S","created_utc":5,"body":"hi"}',
    '{"id":"1","author":"A","subreddit":"S","created_utc":"5","body":"hi"}',
    '{"id":"1","author":"A","subreddit":"S","created_utc":true,"body":"hi"}',
    '{"id":"1","author":"A","subreddit":"S","created_utc":5,"body":null}',
    "",
])
def test_parse_malformed(line):
    assert isinstance(parse_record(line), MalformedRecord)


@pytest.mark.parametrize("body,expected", [
    ("[deleted]", "deleted"),
    ("[removed]", "deleted"),
    ("  [deleted] ", "deleted"),
    ("https://example.com/x", "url_only"),
    ("http://example.com", "url_only"),
    ("www.example.com/page", "url_only"),
    ("  ", "empty"),
    ("", "empty"),
    ("great point", ACCEPTED),
    ("see https://example.com/x", ACCEPTED),
    ("https://example.com/x is great", ACCEPTED),
])
def test_filter_comment(body, expected):
    assert filter_comment(_c(body)) == expected


def test_stream_fixture_counts():
    stats = IngestStats()
    out = list(stream_corpus([DATA / "mixed.ndjson"], stats))
    assert [c.id for c in out] == ["a1"]
    assert stats.to_dict() == {
        "records_read": 3, "records_accepted": 1, "rejected_malformed": 1,
        "rejected_deleted": 1, "rejected_empty": 0, "rejected_url_only": 0,
    }


def test_empty_file(tmp_path):
    p = tmp_path / "empty.ndjson"
    p.write_text("")
    stats = IngestStats()
    assert list(stream_corpus([p], stats)) == []
    assert stats == IngestStats()


def test_missing_file_aborts_with_path(tmp_path):
    bad = tmp_path / "nope.ndjson"
    with pytest.raises(FileUnreadable, match="nope.ndjson"):
        list(stream_corpus([DATA / "mixed.ndjson", bad]))


def test_split_files_merge_to_same_stats(tmp_path):
    lines = (DATA / "mixed.ndjson").read_text().splitlines()
    a, b = tmp_path / "a.ndjson", tmp_path / "b.ndjson"
    a.write_text("\n".join(lines[:2]) + "\n")
    b.write_text(lines[2] + "\n")
    whole = ingest_file_stats(DATA / "mixed.ndjson")
    assert ingest_file_stats(a) + ingest_file_stats(b) == whole
    assert ingest_file_stats(b) + ingest_file_stats(a) == whole
    s1, s2 = IngestStats(), IngestStats()
    ids1 = sorted(c.id for c in stream_corpus([a, b], s1))
    ids2 = sorted(c.id for c in stream_corpus([b, a], s2))
    assert ids1 == ids2 and s1 == s2 == whole


_bodies = st.one_of(
    st.text(max_size=30),
    st.sampled_from(["[deleted]", "[removed]", "", "   ", "https://x.org", "www.y.com z"]),
)
_lines = st.one_of(
    _bodies.map(lambda b: json.dumps({"id": "i", "author": "a", "subreddit": "s", "created_utc": 1, "body": b})),
    st.text(max_size=20),
)


@given(st.lists(_lines, max_size=40))
def test_exhaustive_accounting(tmp_path_factory, lines):
    lines = [ln.replace("\n", " ").replace("\r", " ") for ln in lines]
    p = tmp_path_factory.mktemp("acc") / "f.ndjson"
    p.write_text("".join(ln + "\n" for ln in lines), encoding="utf-8")
    stats = IngestStats()
    n = sum(1 for _ in stream_corpus([p], stats))
    assert stats.records_read == len(lines)
    assert stats.records_accepted == n
    assert stats.records_accepted + stats.rejected == stats.records_read


@given(st.text(max_size=40))
def test_filter_depends_on_body_only(body):
    assert filter_comment(Comment("1", "a", "s", 0, body)) == filter_comment(Comment("2", "b", "t", 99, body))
