"""Seed-deterministic synthetic comment corpora with planted gendered terms.

Every comment body is the filler token followed by the vocabulary terms
drawn present for it. Term presences are independent Bernoulli draws at
``logistic(logit(rate) + shift)`` where ``shift`` is non-zero only for
female-authored comments in the subreddit of a planted effect.
"""

from __future__ import annotations

import calendar
import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Mapping

import numpy as np

from .genderlex import FEMALE, MALE, GenderLexicon, extract_first_name
from .termcount import tokenize

DEFAULT_NAME_POOLS = {
    FEMALE: ["Sarah", "Jennifer", "Emily", "Jessica", "Ashley", "Amanda", "Megan", "Laura"],
    MALE: ["Mike", "John", "Robert", "David", "James", "Kevin", "Steven", "Brian"],
}

_CHUNK = 2048


class InvalidConfig(ValueError):
    pass


@dataclass
class SubredditSpec:
    name: str
    female_weight: float = 1.0
    male_weight: float = 1.0


@dataclass
class PlantedEffect:
    term: str
    subreddit: str
    shift: float


@dataclass
class SynthConfig:
    n_female_users: int
    n_male_users: int
    subreddits: list[SubredditSpec]
    vocabulary: dict[str, float]
    comments_per_user_per_month: float = 1.0
    months: int = 1
    start_month: str = "2018-01"
    planted_effects: list[PlantedEffect] = field(default_factory=list)
    name_pools: dict[str, list[str]] = field(default_factory=lambda: {k: list(v) for k, v in DEFAULT_NAME_POOLS.items()})
    n_ungendered_users: int = 0
    filler: str = "comment"
    seed: int = 0

    @classmethod
    def from_dict(cls, d: Mapping) -> "SynthConfig":
        d = dict(d)
        d["subreddits"] = [
            SubredditSpec(s) if isinstance(s, str) else SubredditSpec(**s) for s in d["subreddits"]
        ]
        vocab = d["vocabulary"]
        if isinstance(vocab, Mapping) and "n_terms" in vocab:
            vocab = make_vocabulary(int(vocab["n_terms"]), float(vocab["rate_min"]),
                                    float(vocab["rate_max"]), int(vocab.get("seed", 0)))
        elif isinstance(vocab, list):
            vocab = {v["term"]: float(v["rate"]) for v in vocab}
        d["vocabulary"] = dict(vocab)
        d["planted_effects"] = [PlantedEffect(**p) for p in d.get("planted_effects", [])]
        if "name_pools" in d:
            d["name_pools"] = {_gender_code(k): list(v) for k, v in d["name_pools"].items()}
        return cls(**d)

    @classmethod
    def from_json(cls, path) -> "SynthConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_dict(self) -> dict:
        return asdict(self)


def _gender_code(k: str) -> str:
    k = k.strip().lower()
    if k in ("f", "female"):
        return FEMALE
    if k in ("m", "male"):
        return MALE
    raise InvalidConfig(f"unknown gender key in name_pools: {k!r}")


@dataclass
class GroundTruth:
    gendered: set[tuple[str, str, str]]
    author_gender: dict[str, str]

    def write(self, out_dir) -> None:
        out_dir = Path(out_dir)
        with open(out_dir / "truth.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["subreddit", "term", "direction"])
            w.writerows(sorted(self.gendered))
        with open(out_dir / "authors.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["author", "gender"])
            w.writerows(sorted(self.author_gender.items()))


_ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "gr", "pl", "st", "tr"]
_VOWELS = ["a", "e", "i", "o", "u"]


def make_vocabulary(n_terms: int, rate_min: float, rate_max: float, seed: int = 0) -> dict[str, float]:
    """``n_terms`` distinct made-up words with log-uniform presence rates."""
    rng = np.random.default_rng(seed)
    words: list[str] = []
    seen = set()
    n_syl = 2
    while len(words) < n_terms:
        parts = [_ONSETS[rng.integers(len(_ONSETS))] + _VOWELS[rng.integers(len(_VOWELS))] for _ in range(n_syl)]
        w = "".join(parts) + "x"
        if w not in seen:
            seen.add(w)
            words.append(w)
        if len(seen) > 0.5 * (len(_ONSETS) * len(_VOWELS)) ** n_syl:
            n_syl += 1
    rates = np.exp(rng.uniform(math.log(rate_min), math.log(rate_max), size=n_terms))
    return {w: float(r) for w, r in zip(words, rates)}


def _logistic(x):
    return 1.0 / (1.0 + np.exp(-x))


def _logit(p):
    return np.log(p) - np.log1p(-p)


def validate(cfg: SynthConfig, lex: GenderLexicon | None = None) -> None:
    if cfg.n_female_users < 0 or cfg.n_male_users < 0 or cfg.n_ungendered_users < 0:
        raise InvalidConfig("user counts must be non-negative")
    if cfg.months < 1:
        raise InvalidConfig("months must be >= 1")
    if not cfg.subreddits:
        raise InvalidConfig("no subreddits")
    if cfg.comments_per_user_per_month < 0:
        raise InvalidConfig("comments_per_user_per_month must be >= 0")
    for s in cfg.subreddits:
        if s.female_weight < 0 or s.male_weight < 0:
            raise InvalidConfig(f"negative participation weight for {s.name}")
    if sum(s.female_weight for s in cfg.subreddits) <= 0 and cfg.n_female_users:
        raise InvalidConfig("female participation weights are all zero")
    if sum(s.male_weight for s in cfg.subreddits) <= 0 and cfg.n_male_users:
        raise InvalidConfig("male participation weights are all zero")
    if not cfg.vocabulary:
        raise InvalidConfig("empty vocabulary")
    for term, rate in cfg.vocabulary.items():
        if not 0.0 < rate < 1.0:
            raise InvalidConfig(f"presence rate for {term!r} outside (0,1): {rate}")
        if tokenize(term) != [term]:
            raise InvalidConfig(f"vocabulary term {term!r} is not a single lowercase token")
    if cfg.filler in cfg.vocabulary or tokenize(cfg.filler) != [cfg.filler]:
        raise InvalidConfig("filler must be a single token outside the vocabulary")
    sub_names = {s.name for s in cfg.subreddits}
    for p in cfg.planted_effects:
        if p.term not in cfg.vocabulary:
            raise InvalidConfig(f"planted term {p.term!r} not in vocabulary")
        if p.subreddit not in sub_names:
            raise InvalidConfig(f"planted subreddit {p.subreddit!r} not configured")
    for g in (FEMALE, MALE):
        pool = cfg.name_pools.get(g, [])
        if not pool:
            raise InvalidConfig(f"empty name pool for {g}")
        for stem in pool:
            name = extract_first_name(stem)
            if name is None or name != stem.lower():
                raise InvalidConfig(f"name stem {stem!r} does not round-trip through name extraction")
            if lex is not None:
                entry = lex.get(name)
                if entry is None or entry.gender != g:
                    raise InvalidConfig(f"name stem {stem!r} does not resolve to {g} in the lexicon")


def ground_truth_effects(cfg: SynthConfig) -> set[tuple[str, str, str]]:
    return {
        (p.subreddit, p.term, FEMALE if p.shift > 0 else MALE)
        for p in cfg.planted_effects
        if p.shift != 0
    }


def _month_bounds(start_month: str, months: int) -> list[tuple[int, int]]:
    year, month = (int(x) for x in start_month.split("-"))
    out = []
    for _ in range(months):
        start = calendar.timegm((year, month, 1, 0, 0, 0))
        length = calendar.monthrange(year, month)[1] * 86400
        out.append((start, length))
        month += 1
        if month > 12:
            year, month = year + 1, 1
    return out


def _users(cfg: SynthConfig, rng) -> tuple[list[str], np.ndarray]:
    names: list[str] = []
    genders: list[int] = []  # 0 female, 1 male, 2 ungendered
    idx = 0
    for g, code, n in ((FEMALE, 0, cfg.n_female_users), (MALE, 1, cfg.n_male_users)):
        pool = cfg.name_pools[g]
        picks = rng.integers(len(pool), size=n)
        for p in picks:
            names.append(f"{pool[p]}{1000 + idx}")
            genders.append(code)
            idx += 1
    for _ in range(cfg.n_ungendered_users):
        names.append(f"xq_user{1000 + idx}")
        genders.append(2)
        idx += 1
    return names, np.array(genders, dtype=np.int8)


def iter_records(cfg: SynthConfig, lex: GenderLexicon | None = None) -> Iterator[dict]:
    """Yield comment records in a fixed order; a pure function of ``cfg``."""
    validate(cfg, lex)
    rng = np.random.default_rng(cfg.seed)
    users, ugender = _users(cfg, rng)
    terms = list(cfg.vocabulary)
    base = np.array([cfg.vocabulary[t] for t in terms])
    term_idx = {t: i for i, t in enumerate(terms)}
    sub_names = [s.name for s in cfg.subreddits]
    sub_idx = {s: i for i, s in enumerate(sub_names)}

    # per-subreddit female presence rates with planted shifts applied
    shift = np.zeros((len(sub_names), len(terms)))
    for p in cfg.planted_effects:
        shift[sub_idx[p.subreddit], term_idx[p.term]] += p.shift
    female_rates = _logistic(_logit(base)[None, :] + shift)

    fw = np.array([s.female_weight for s in cfg.subreddits], dtype=float)
    mw = np.array([s.male_weight for s in cfg.subreddits], dtype=float)
    uw = fw + mw
    probs = [w / w.sum() if w.sum() > 0 else None for w in (fw, mw, uw)]

    serial = 0
    for start, length in _month_bounds(cfg.start_month, cfg.months):
        n_per_user = rng.poisson(cfg.comments_per_user_per_month, size=len(users))
        author = np.repeat(np.arange(len(users)), n_per_user)
        n = author.size
        if n == 0:
            continue
        gen = ugender[author]
        sub = np.empty(n, dtype=np.int64)
        for code in (0, 1, 2):
            mask = gen == code
            if mask.any():
                sub[mask] = rng.choice(len(sub_names), size=int(mask.sum()), p=probs[code])
        ts = start + rng.integers(0, length, size=n)
        for lo in range(0, n, _CHUNK):
            hi = min(n, lo + _CHUNK)
            rates = np.broadcast_to(base, (hi - lo, len(terms))).copy()
            fem = np.flatnonzero(gen[lo:hi] == 0)
            rates[fem] = female_rates[sub[lo + fem]]
            present = rng.random(rates.shape) < rates
            for j in range(hi - lo):
                i = lo + j
                words = [terms[t] for t in np.flatnonzero(present[j])]
                yield {
                    "id": f"c{serial:x}",
                    "author": users[author[i]],
                    "subreddit": sub_names[sub[i]],
                    "created_utc": int(ts[i]),
                    "body": " ".join([cfg.filler] + words),
                }
                serial += 1


def generate_corpus(cfg: SynthConfig, lex: GenderLexicon | None = None) -> tuple[list[dict], GroundTruth]:
    records = list(iter_records(cfg, lex))
    return records, ground_truth(cfg)


def ground_truth(cfg: SynthConfig) -> GroundTruth:
    rng = np.random.default_rng(cfg.seed)
    users, ugender = _users(cfg, rng)
    codes = {0: FEMALE, 1: MALE}
    authors = {u: codes[int(g)] for u, g in zip(users, ugender) if int(g) in codes}
    return GroundTruth(ground_truth_effects(cfg), authors)


def write_corpus(cfg: SynthConfig, out_dir, lex: GenderLexicon | None = None,
                 filename: str = "corpus.ndjson") -> GroundTruth:
    """Write the NDJSON corpus plus ``truth.csv`` and ``authors.csv``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / filename, "w", encoding="utf-8") as fh:
        for rec in iter_records(cfg, lex):
            fh.write(json.dumps(rec, ensure_ascii=False))
            fh.write("\n")
    truth = ground_truth(cfg)
    truth.write(out_dir)
    return truth


def discoveries(runs: Mapping) -> set[tuple[str, str, str]]:
    return {
        (name, r.term, r.direction)
        for name, run in runs.items()
        for r in run.results
        if r.significant
    }


def empirical_fdr(runs: Mapping, truth: GroundTruth) -> tuple[float, float]:
    """(false discoveries / max(1, discoveries), planted pairs found / planted pairs)."""
    found = discoveries(runs)
    false = len(found - truth.gendered)
    fdr = false / max(1, len(found))
    recall = len(found & truth.gendered) / len(truth.gendered) if truth.gendered else 0.0
    return fdr, recall
