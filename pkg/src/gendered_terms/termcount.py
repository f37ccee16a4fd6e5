"""Tokenizer and per-subreddit, per-gender term presence tables."""

from __future__ import annotations

import csv
import warnings
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import regex

from .genderlex import FEMALE, MALE

# letter runs (combining marks included) joined by single interior
# apostrophes or hyphens; digits, underscores and numeric symbols split
_TOKEN_RE = regex.compile(r"\p{L}[\p{L}\p{M}]*(?:['’\-][\p{L}\p{M}]+)*")

TERMS_CSV = "terms.csv"
TOTALS_CSV = "totals.csv"
SITE_TABLE = "ALL"


class KTooLarge(UserWarning):
    pass


def tokenize(body: str) -> list[str]:
    """Lowercased terms: letter runs with interior ``'`` or ``-`` kept."""
    toks = _TOKEN_RE.findall(body.lower())
    if "’" in body:
        toks = [t.replace("’", "'") for t in toks]
    return toks


@dataclass
class TermTable:
    subreddit: str
    female_total: int = 0
    male_total: int = 0
    f_with: Counter = field(default_factory=Counter)
    m_with: Counter = field(default_factory=Counter)

    def add(self, gender: str, body: str) -> None:
        terms = set(tokenize(body))
        if gender == FEMALE:
            self.female_total += 1
            self.f_with.update(terms)
        elif gender == MALE:
            self.male_total += 1
            self.m_with.update(terms)
        else:
            raise ValueError(f"ungendered comment in term table: {gender!r}")

    @property
    def total(self) -> int:
        return self.female_total + self.male_total

    @property
    def female_share(self) -> float:
        return self.female_total / self.total if self.total else float("nan")

    @property
    def presence(self) -> dict[str, tuple[int, int]]:
        """term -> (female comments containing it, male comments containing it)."""
        f, m = self.f_with, self.m_with
        return {t: (f.get(t, 0), m.get(t, 0)) for t in sorted(f.keys() | m.keys())}

    def merge(self, other: "TermTable") -> "TermTable":
        if other.subreddit != self.subreddit:
            raise ValueError("cannot merge tables for different subreddits")
        return TermTable(
            self.subreddit,
            self.female_total + other.female_total,
            self.male_total + other.male_total,
            self.f_with + other.f_with,
            self.m_with + other.m_with,
        )

    def __eq__(self, other):
        if not isinstance(other, TermTable):
            return NotImplemented
        return (
            self.subreddit == other.subreddit
            and self.female_total == other.female_total
            and self.male_total == other.male_total
            and self.presence == other.presence
        )


@dataclass(frozen=True)
class SubredditStats:
    subreddit: str
    female_total: int
    male_total: int

    @property
    def sampled_comments(self) -> int:
        return self.female_total + self.male_total

    @property
    def female_share(self) -> float:
        return self.female_total / self.sampled_comments


def count_terms(samples: Iterable, *, by_subreddit: bool = True) -> dict[str, TermTable]:
    """Build presence tables from sampled comments.

    With ``by_subreddit=False`` every comment goes into one site-wide table
    named ``ALL``.
    """
    tables: dict[str, TermTable] = {}
    for s in samples:
        name = s.comment.subreddit if by_subreddit else SITE_TABLE
        tab = tables.get(name)
        if tab is None:
            tab = tables[name] = TermTable(name)
        tab.add(s.gender, s.comment.body)
    return tables


def merge_tables(*shards: Mapping[str, TermTable]) -> dict[str, TermTable]:
    out: dict[str, TermTable] = {}
    for shard in shards:
        for name, tab in shard.items():
            out[name] = out[name].merge(tab) if name in out else tab.merge(TermTable(name))
    return out


def subreddit_stats(tables: Mapping[str, TermTable]) -> list[SubredditStats]:
    return [
        SubredditStats(t.subreddit, t.female_total, t.male_total)
        for t in tables.values()
        if t.total > 0
    ]


def top_subreddits(stats: Iterable[SubredditStats], k: int) -> list[str]:
    ordered = sorted(stats, key=lambda s: (-s.sampled_comments, s.subreddit))
    if k > len(ordered):
        warnings.warn(f"asked for top {k} of only {len(ordered)} subreddits", KTooLarge, stacklevel=2)
    return [s.subreddit for s in ordered[:k]]


def write_tables(tables: Mapping[str, TermTable], out_dir: str | Path) -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / TERMS_CSV, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["subreddit", "term", "f_with", "m_with"])
        for name in sorted(tables):
            for term, (f, m) in tables[name].presence.items():
                w.writerow([name, term, f, m])
    write_totals(tables.values(), out_dir / TOTALS_CSV)


def write_totals(tables: Iterable, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["subreddit", "female_total", "male_total"])
        for t in sorted(tables, key=lambda t: t.subreddit):
            w.writerow([t.subreddit, t.female_total, t.male_total])


def read_totals(path: str | Path) -> list[SubredditStats]:
    with open(path, newline="", encoding="utf-8") as fh:
        return [
            SubredditStats(r["subreddit"], int(r["female_total"]), int(r["male_total"]))
            for r in csv.DictReader(fh)
        ]


def read_tables(in_dir: str | Path) -> dict[str, TermTable]:
    in_dir = Path(in_dir)
    tables = {
        s.subreddit: TermTable(s.subreddit, s.female_total, s.male_total)
        for s in read_totals(in_dir / TOTALS_CSV)
    }
    with open(in_dir / TERMS_CSV, newline="", encoding="utf-8") as fh:
        for r in csv.DictReader(fh):
            tab = tables.get(r["subreddit"])
            if tab is None:
                raise ValueError(f"term row for unknown subreddit {r['subreddit']!r}")
            f, m = int(r["f_with"]), int(r["m_with"])
            if f:
                tab.f_with[r["term"]] = f
            if m:
                tab.m_with[r["term"]] = m
    return tables
