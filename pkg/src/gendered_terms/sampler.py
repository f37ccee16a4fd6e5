"""One-comment-per-key deduplication with seed-keyed hash selection.

The retained comment for each (author, subreddit, month) key -- or
(author, month) in whole-site mode -- is the one with the smallest keyed
64-bit BLAKE2b hash. A per-key minimum is an associative, commutative
reduction, so the result does not depend on arrival order or sharding.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from hashlib import blake2b
from typing import Iterable, Iterator, NamedTuple

from .genderlex import FEMALE, MALE
from .ingest import Comment

SUBREDDIT = "subreddit"
SITE = "site"
MODES = (SUBREDDIT, SITE)

_MASK64 = (1 << 64) - 1


class SampleKey(NamedTuple):
    author: str
    subreddit: str | None
    month: str


@dataclass(frozen=True, slots=True)
class SampledComment:
    comment: Comment
    gender: str
    key: SampleKey

    def to_dict(self) -> dict:
        d = self.comment.to_dict()
        d["gender"] = self.gender
        d["month"] = self.key.month
        return d

    @classmethod
    def from_dict(cls, d: dict, mode: str = SUBREDDIT) -> "SampledComment":
        c = Comment(d["id"], d["author"], d["subreddit"], int(d["created_utc"]), d["body"])
        return cls(c, d["gender"], sample_key(c, mode))


def month_key(created_utc: int) -> str:
    """UTC calendar month as ``YYYY-MM``."""
    t = time.gmtime(created_utc)
    return f"{t.tm_year:04d}-{t.tm_mon:02d}"


def sample_key(c: Comment, mode: str) -> SampleKey:
    sub = c.subreddit if mode == SUBREDDIT else None
    return SampleKey(c.author, sub, month_key(c.created_utc))


def _seed_bytes(seed: int) -> bytes:
    return (int(seed) & _MASK64).to_bytes(8, "little")


def selection_hash(seed: int | bytes, key: SampleKey, comment_id: str) -> int:
    """Keyed 64-bit hash of (seed, author, subreddit-or-blank, month, id)."""
    k = seed if isinstance(seed, bytes) else _seed_bytes(seed)
    msg = "\x1f".join((key.author, key.subreddit or "", key.month, comment_id))
    return int.from_bytes(blake2b(msg.encode("utf-8"), digest_size=8, key=k).digest(), "little")


class SampleReducer:
    """Streaming per-key minimum; shards can be reduced apart and merged."""

    def __init__(self, mode: str = SUBREDDIT, seed: int = 0):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        self.mode = mode
        self.seed = int(seed)
        self._key = _seed_bytes(seed)
        self._best: dict[SampleKey, tuple[int, str, Comment, str]] = {}
        self.seen = 0

    def add(self, c: Comment, gender: str) -> None:
        if gender not in (FEMALE, MALE):
            raise ValueError(f"only gendered comments can be sampled, got {gender!r}")
        self.seen += 1
        key = sample_key(c, self.mode)
        h = selection_hash(self._key, key, c.id)
        cur = self._best.get(key)
        if cur is None or h < cur[0] or (h == cur[0] and c.id < cur[1]):
            self._best[key] = (h, c.id, c, gender)

    def merge(self, other: "SampleReducer") -> "SampleReducer":
        if (other.mode, other.seed) != (self.mode, self.seed):
            raise ValueError("cannot merge reducers with different mode or seed")
        for key, cand in other._best.items():
            cur = self._best.get(key)
            if cur is None or cand[:2] < cur[:2]:
                self._best[key] = cand
        self.seen += other.seen
        return self

    def __len__(self) -> int:
        return len(self._best)

    def results(self) -> list[SampledComment]:
        """Selected comments, ordered by key for reproducible output."""
        return [
            SampledComment(v[2], v[3], k)
            for k, v in sorted(self._best.items(), key=lambda kv: (kv[0].author, kv[0].subreddit or "", kv[0].month))
        ]


def select_samples(stream: Iterable[tuple[Comment, str]], mode: str = SUBREDDIT,
                   seed: int = 0) -> list[SampledComment]:
    red = SampleReducer(mode, seed)
    for c, g in stream:
        red.add(c, g)
    return red.results()


def write_samples(samples: Iterable[SampledComment], path) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for s in samples:
            fh.write(json.dumps(s.to_dict(), ensure_ascii=False, sort_keys=True))
            fh.write("\n")
            n += 1
    return n


def read_samples(path, mode: str = SUBREDDIT) -> Iterator[SampledComment]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield SampledComment.from_dict(json.loads(line), mode)
