import random
from collections import Counter
from datetime import datetime, timezone

import pytest
from hypothesis import given, settings, strategies as st

from gendered_terms.ingest import Comment
from gendered_terms.sampler import (
    SITE,
    SUBREDDIT,
    SampleKey,
    SampleReducer,
    month_key,
    read_samples,
    sample_key,
    select_samples,
    write_samples,
)


def _oracle_month(ts):
    d = datetime.fromtimestamp(ts, tz=timezone.utc)
    return f"{d.year:04d}-{d.month:02d}"


@pytest.mark.parametrize("ts,expected", [
    (0, "1970-01"),
    (1517443200, "2018-02"),   # 2018-02-01T00:00:00Z
    (1519862399, "2018-02"),   # 2018-02-28T23:59:59Z
    (1519862400, "2018-03"),
    (1517443199, "2018-01"),
])
def test_month_key(ts, expected):
    assert month_key(ts) == expected == _oracle_month(ts)


@given(st.integers(min_value=0, max_value=4_102_444_800))
def test_month_key_matches_datetime(ts):
    assert month_key(ts) == _oracle_month(ts)


def _fixture(n=200, authors=12, subs=3, seed=0):
    rng = random.Random(seed)
    out = []
    for i in range(n):
        out.append((
            Comment(f"id{i:05d}", f"user{rng.randrange(authors)}", f"sub{rng.randrange(subs)}",
                    1514764800 + rng.randrange(0, 90 * 86400), "text"),
            rng.choice("FM"),
        ))
    # gender is a property of the author
    gmap = {}
    return [(c, gmap.setdefault(c.author, g)) for c, g in out]


def test_singleton_retained():
    c = Comment("a", "Mike1", "Gaming", 1517443200, "hi")
    out = select_samples([(c, "M")], SUBREDDIT, 1)
    assert [s.comment for s in out] == [c]
    assert out[0].key == SampleKey("Mike1", "Gaming", "2018-02")


def test_three_same_key_one_retained():
    cs = [(Comment(f"c{i}", "Mike1", "Gaming", 1517443200 + i, "hi"), "M") for i in range(3)]
    out = select_samples(cs, SUBREDDIT, 5)
    assert len(out) == 1 and out[0].comment.id in {"c0", "c1", "c2"}


def test_site_mode_collapses_subreddits():
    cs = [(Comment(f"c{i}", "Mike1", f"s{i}", 1517443200, "hi"), "M") for i in range(4)]
    assert len(select_samples(cs, SUBREDDIT, 0)) == 4
    out = select_samples(cs, SITE, 0)
    assert len(out) == 1 and out[0].key.subreddit is None


def test_ungendered_rejected():
    red = SampleReducer()
    with pytest.raises(ValueError):
        red.add(Comment("a", "b", "c", 0, "d"), "U")


def test_bad_mode():
    with pytest.raises(ValueError):
        SampleReducer("weekly")


@pytest.mark.parametrize("mode", [SUBREDDIT, SITE])
def test_one_per_key_and_permutation_invariance(mode):
    data = _fixture()
    keys = {sample_key(c, mode) for c, _ in data}
    base = select_samples(data, mode, 42)
    assert sorted(s.key for s in base) == sorted(keys)
    ids = {s.comment.id for s in base}
    rng = random.Random(1)
    for _ in range(5):
        shuffled = data[:]
        rng.shuffle(shuffled)
        assert {s.comment.id for s in select_samples(shuffled, mode, 42)} == ids


def test_sharded_merge_equals_whole():
    data = _fixture(seed=3)
    whole = {s.comment.id for s in select_samples(data, SUBREDDIT, 9)}
    a, b = SampleReducer(SUBREDDIT, 9), SampleReducer(SUBREDDIT, 9)
    for i, (c, g) in enumerate(data):
        (a if i % 3 else b).add(c, g)
    assert {s.comment.id for s in b.merge(a).results()} == whole


def test_seed_changes_selection_not_keys():
    data = _fixture(seed=4)
    s1 = select_samples(data, SUBREDDIT, 1)
    s2 = select_samples(data, SUBREDDIT, 2)
    assert [s.key for s in s1] == [s.key for s in s2]
    assert {s.comment.id for s in s1} != {s.comment.id for s in s2}


def test_uniform_selection_over_seeds():
    k = 4
    cs = [(Comment(f"c{i}", "Mike1", "Gaming", 1517443200, "hi"), "M") for i in range(k)]
    seeds = 4000
    counts = Counter(select_samples(cs, SUBREDDIT, s)[0].comment.id for s in range(seeds))
    p = 1 / k
    sigma = (seeds * p * (1 - p)) ** 0.5
    for i in range(k):
        assert abs(counts[f"c{i}"] - seeds * p) <= 4 * sigma


@settings(max_examples=50)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 2), st.integers(0, 3)), min_size=1, max_size=40),
       st.integers(0, 2**64 - 1))
def test_at_most_one_per_key(rows, seed):
    data = [(Comment(f"i{n}", f"u{a}", f"s{s}", m * 31 * 86400, "x"), "F") for n, (a, s, m) in enumerate(rows)]
    out = select_samples(data, SUBREDDIT, seed)
    keys = [s.key for s in out]
    assert len(keys) == len(set(keys)) == len({sample_key(c, SUBREDDIT) for c, _ in data})


def test_ndjson_round_trip(tmp_path):
    data = _fixture(n=30)
    out = select_samples(data, SUBREDDIT, 0)
    p = tmp_path / "s.ndjson"
    write_samples(out, p)
    back = list(read_samples(p))
    assert back == out
