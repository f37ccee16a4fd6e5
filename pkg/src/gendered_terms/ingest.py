"""Parse NDJSON comment dumps and apply comment-level filters."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Iterator

log = logging.getLogger(__name__)

DELETED_SENTINELS = frozenset({"[deleted]", "[removed]"})
URL_PREFIXES = ("http://", "https://", "www.")

REQUIRED_FIELDS = ("id", "author", "subreddit", "created_utc", "body")

# filter outcomes
ACCEPTED = "accepted"
EMPTY = "empty"
DELETED = "deleted"
URL_ONLY = "url_only"


class FileUnreadable(OSError):
    """An input path is missing or cannot be read."""


@dataclass(frozen=True, slots=True)
class Comment:
    id: str
    author: str
    subreddit: str
    created_utc: int
    body: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "author": self.author,
            "subreddit": self.subreddit,
            "created_utc": self.created_utc,
            "body": self.body,
        }


@dataclass(frozen=True, slots=True)
class MalformedRecord:
    line: str
    reason: str


@dataclass
class IngestStats:
    """Funnel counters; merging is commutative and associative."""

    records_read: int = 0
    records_accepted: int = 0
    rejected_malformed: int = 0
    rejected_deleted: int = 0
    rejected_empty: int = 0
    rejected_url_only: int = 0

    def __add__(self, other: "IngestStats") -> "IngestStats":
        return IngestStats(
            **{f.name: getattr(self, f.name) + getattr(other, f.name) for f in fields(self)}
        )

    @property
    def rejected(self) -> int:
        return (
            self.rejected_malformed
            + self.rejected_deleted
            + self.rejected_empty
            + self.rejected_url_only
        )

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def record(self, outcome: str) -> None:
        self.records_read += 1
        if outcome == ACCEPTED:
            self.records_accepted += 1
        elif outcome == DELETED:
            self.rejected_deleted += 1
        elif outcome == EMPTY:
            self.rejected_empty += 1
        elif outcome == URL_ONLY:
            self.rejected_url_only += 1
        else:
            self.rejected_malformed += 1


def parse_record(line: str) -> Comment | MalformedRecord:
    """Parse one NDJSON line; never raises."""
    try:
        obj = json.loads(line)
    except (ValueError, TypeError):
        return MalformedRecord(line, "invalid json")
    if not isinstance(obj, dict):
        return MalformedRecord(line, "not an object")
    try:
        cid = obj["id"]
        author = obj["author"]
        subreddit = obj["subreddit"]
        created = obj["created_utc"]
        body = obj["body"]
    except KeyError as exc:
        return MalformedRecord(line, f"missing field {exc.args[0]}")
    if not (isinstance(cid, str) and isinstance(author, str) and isinstance(subreddit, str)):
        return MalformedRecord(line, "id/author/subreddit must be strings")
    if not (cid and author and subreddit):
        return MalformedRecord(line, "empty id/author/subreddit")
    # bool is an int subclass
    if not isinstance(created, int) or isinstance(created, bool) or created < 0:
        return MalformedRecord(line, "created_utc must be a non-negative integer")
    if not isinstance(body, str):
        return MalformedRecord(line, "body must be a string")
    return Comment(cid, author, subreddit, created, body)


def classify_body(body: str) -> str:
    text = body.strip()
    if not text:
        return EMPTY
    if text in DELETED_SENTINELS:
        return DELETED
    if text.startswith(URL_PREFIXES) and len(text.split()) == 1:
        return URL_ONLY
    return ACCEPTED


def filter_comment(c: Comment) -> str:
    """Return ``"accepted"`` or the rejection reason for a parsed comment.

    Depends on the body alone.
    """
    return classify_body(c.body)


def _iter_lines(path: Path) -> Iterator[str]:
    try:
        fh = open(path, "r", encoding="utf-8", errors="replace")
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc.strerror}") from exc
    with fh:
        for line in fh:
            if line.endswith("\n"):
                line = line[:-1]
            if line.endswith("\r"):
                line = line[:-1]
            yield line


def stream_file(path: str | Path, stats: IngestStats) -> Iterator[Comment]:
    """Yield accepted comments from one NDJSON file, updating ``stats``."""
    path = Path(path)
    if not path.is_file():
        raise FileUnreadable(f"cannot read {path}: not a file")
    for line in _iter_lines(path):
        rec = parse_record(line)
        if isinstance(rec, MalformedRecord):
            stats.record("malformed")
            continue
        outcome = classify_body(rec.body)
        stats.record(outcome)
        if outcome == ACCEPTED:
            yield rec


def stream_corpus(paths: Iterable[str | Path], stats: IngestStats | None = None) -> Iterator[Comment]:
    """Yield accepted comments from each path in turn.

    Pass an ``IngestStats`` to collect the funnel counters; it is complete
    once the generator is exhausted. Every path is checked up front so a bad
    path aborts before any record is produced.
    """
    paths = [Path(p) for p in paths]
    for p in paths:
        if not p.is_file():
            raise FileUnreadable(f"cannot read {p}: not a file")
    if stats is None:
        stats = IngestStats()
    for p in paths:
        before = stats.records_read
        yield from stream_file(p, stats)
        log.debug("read %d records from %s", stats.records_read - before, p)


def ingest_file_stats(path: str | Path) -> IngestStats:
    """Counters for a single file; usable from parallel workers and summed."""
    stats = IngestStats()
    for _ in stream_file(path, stats):
        pass
    return stats
