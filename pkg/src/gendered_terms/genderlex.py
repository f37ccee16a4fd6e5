"""First-name gender lexicon from the 1990 US census name files."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

FEMALE = "F"
MALE = "M"
UNGENDERED = "U"

DOMINANCE_THRESHOLD = 0.90
POPULARITY_CUTOFF = 10_000
REFERENCE_SIZE = 4772  # lexicon size reported for the original study


class MalformedLexiconRow(ValueError):
    pass


class BadFrequency(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class LexiconEntry:
    gender: str
    dominance: float
    rank: int


@dataclass(frozen=True, slots=True)
class InferredGender:
    value: str
    matched_name: str | None = None


class GenderLexicon:
    """Immutable lowercase-name -> LexiconEntry mapping."""

    def __init__(self, entries: Mapping[str, LexiconEntry]):
        self._entries = dict(entries)

    @property
    def entries(self) -> Mapping[str, LexiconEntry]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, name: object) -> bool:
        return name in self._entries

    def get(self, name: str) -> LexiconEntry | None:
        return self._entries.get(name)

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(self.to_csv_text())

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "gender", "dominance", "rank"])
        for name, e in sorted(self._entries.items(), key=lambda kv: (kv[1].rank, kv[0])):
            w.writerow([name, e.gender, f"{e.dominance:.6f}", e.rank])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, path: str | Path) -> "GenderLexicon":
        entries = {}
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                entries[row["name"]] = LexiconEntry(
                    row["gender"], float(row["dominance"]), int(row["rank"])
                )
        return cls(entries)


def read_census_file(path_or_lines: str | Path | Iterable[str]) -> dict[str, float]:
    """Read NAME FREQ CUMFREQ RANK rows into name -> percentage frequency."""
    if isinstance(path_or_lines, (str, Path)):
        with open(path_or_lines, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    else:
        lines = list(path_or_lines)
    freqs: dict[str, float] = {}
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 4 or not parts[0].isalpha() or not parts[3].isdigit():
            raise MalformedLexiconRow(f"line {lineno}: {line!r}")
        try:
            freq = float(parts[1])
        except ValueError:
            raise BadFrequency(f"line {lineno}: {parts[1]!r}") from None
        if not freq >= 0.0:  # also catches nan
            raise BadFrequency(f"line {lineno}: {parts[1]!r}")
        name = parts[0].lower()
        freqs[name] = freqs.get(name, 0.0) + freq
    return freqs


def build_lexicon(male_file, female_file, *, top: int = POPULARITY_CUTOFF,
                  threshold: float = DOMINANCE_THRESHOLD) -> GenderLexicon:
    """Combine male and female census tables into a gender lexicon.

    Names are ranked by summed male+female frequency (ties alphabetical),
    the ``top`` most popular are kept, and of those only names at least
    ``threshold`` dominated by one gender survive.
    """
    male = read_census_file(male_file)
    female = read_census_file(female_file)
    names = set(male) | set(female)
    scored = sorted(names, key=lambda n: (-(male.get(n, 0.0) + female.get(n, 0.0)), n))
    entries = {}
    for rank, name in enumerate(scored[:top], 1):
        fm = male.get(name, 0.0)
        ff = female.get(name, 0.0)
        total = fm + ff
        if total <= 0.0:
            continue
        dominance = max(fm, ff) / total
        if dominance >= threshold:
            entries[name] = LexiconEntry(MALE if fm > ff else FEMALE, dominance, rank)
    return GenderLexicon(entries)


def bundled_census_paths() -> tuple[Path, Path]:
    """Paths of the packaged 1990 census male and female first-name files."""
    base = resources.files("gendered_terms") / "data"
    return Path(str(base / "dist.male.first")), Path(str(base / "dist.female.first"))


def default_lexicon() -> GenderLexicon:
    male, female = bundled_census_paths()
    return build_lexicon(male, female)


def extract_first_name(username: str) -> str | None:
    """Leading letter run of a username, cut at a camel-case boundary.

    ``MikeTheWall`` and ``Mike33`` both give ``mike``. Consecutive capitals
    count as one word, so ``MIKE42`` gives ``mike``.
    """
    end = 0
    prev_lower = False
    for ch in username:
        if not ch.isalpha():
            break
        if prev_lower and ch.isupper():
            break
        prev_lower = ch.islower()
        end += 1
    if end == 0:
        return None
    return username[:end].lower()


def infer_gender(username: str, lex: GenderLexicon) -> InferredGender:
    name = extract_first_name(username)
    if name is not None:
        entry = lex.get(name)
        if entry is not None:
            return InferredGender(entry.gender, name)
    return InferredGender(UNGENDERED)


class GenderCache:
    """Memoised username -> gender code lookups for streaming use."""

    def __init__(self, lex: GenderLexicon):
        self.lex = lex
        self._cache: dict[str, str] = {}

    def __call__(self, username: str) -> str:
        g = self._cache.get(username)
        if g is None:
            g = infer_gender(username, self.lex).value
            self._cache[username] = g
        return g
