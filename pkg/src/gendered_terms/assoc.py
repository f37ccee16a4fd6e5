"""Per-subreddit gendered term detection.

Pipeline for one term table: drop terms too rare to ever reach uncorrected
significance, compute the Pearson 2x2 chi-squared statistic and its df=1
p-value for the rest, and select significant terms with the
Benjamini-Hochberg step-up procedure.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import erfcinv

from . import kernels
from .genderlex import FEMALE, MALE
from .termcount import TermTable

log = logging.getLogger(__name__)

DEFAULT_ALPHA = 0.05

BH_CAVEAT = (
    "Caveat: Benjamini-Hochberg selection here is a heuristic. Term presences "
    "are not independent (repeat posters across months, quoting and imitation, "
    "replies to a shared parent), so the nominal false discovery rate is approximate."
)

CSV_FIELDS = ["term", "direction", "f_with", "f_total", "m_with", "m_total", "chi2", "p", "significant"]


class EmptyGender(ValueError):
    """A term table has no comments for one gender, so no test is defined."""


def chi_squared(a, b, c, d) -> float:
    """Pearson chi-squared (no continuity correction) for a 2x2 table.

    Rows are genders, columns term present/absent. Returns 0 when any
    margin is empty.
    """
    r1, r2, c1, c2 = a + b, c + d, a + c, b + d
    denom = r1 * r2 * c1 * c2
    if denom <= 0:
        return 0.0
    diff = a * d - b * c
    return (a + b + c + d) * diff * diff / denom


def chi_sq_p(chi2: float) -> float:
    """Upper-tail probability of the chi-squared distribution, df=1."""
    return math.erfc(math.sqrt(max(chi2, 0.0) / 2.0))


def critical_value(alpha: float) -> float:
    """The chi-squared statistic (df=1) whose upper-tail probability is ``alpha``."""
    return 2.0 * float(erfcinv(alpha)) ** 2


def max_attainable_chi(t: int, female_total: int, male_total: int) -> float:
    """Largest chi-squared over every gender split of ``t`` presences.

    When the term fits entirely inside the smaller group this is the split
    with every presence given to that group.
    """
    lo = max(0, t - male_total)
    hi = min(t, female_total)
    if hi < lo:
        return 0.0
    f, m = female_total, male_total
    return max(
        chi_squared(lo, f - lo, t - lo, m - (t - lo)),
        chi_squared(hi, f - hi, t - hi, m - (t - hi)),
    )


def prune_terms(table: TermTable, critical: float) -> list[str]:
    """Terms whose best possible split reaches ``critical``, in sorted order."""
    terms, fw, mw = _arrays(table)
    keep = kernels.max_chi2_many(fw + mw, table.female_total, table.male_total) >= critical
    return [t for t, k in zip(terms, keep) if k]


def bh_select(pvalues: Iterable[tuple[str, float]], alpha: float = DEFAULT_ALPHA) -> set[str]:
    """Benjamini-Hochberg step-up selection; ties in p are ordered by term."""
    ordered = sorted(pvalues, key=lambda tp: (tp[1], tp[0]))
    if not ordered:
        return set()
    k = kernels.bh_count(np.array([p for _, p in ordered]), alpha)
    return {t for t, _ in ordered[:k]}


@dataclass(frozen=True, slots=True)
class TermAssociation:
    term: str
    a: int
    b: int
    c: int
    d: int
    chi2: float
    p: float
    significant: bool
    direction: str

    @property
    def f_total(self) -> int:
        return self.a + self.b

    @property
    def m_total(self) -> int:
        return self.c + self.d

    @property
    def f_rate(self) -> float:
        return self.a / self.f_total

    @property
    def m_rate(self) -> float:
        return self.c / self.m_total


@dataclass
class AssociationRun:
    subreddit: str
    alpha: float
    m: int
    critical: float
    results: list[TermAssociation] = field(default_factory=list)
    female_total: int = 0
    male_total: int = 0

    @property
    def significant(self) -> list[TermAssociation]:
        return [r for r in self.results if r.significant]

    @property
    def n_significant(self) -> int:
        return sum(r.significant for r in self.results)


def _arrays(table: TermTable):
    pres = table.presence
    terms = list(pres)
    fw = np.fromiter((v[0] for v in pres.values()), dtype=np.float64, count=len(terms))
    mw = np.fromiter((v[1] for v in pres.values()), dtype=np.float64, count=len(terms))
    return terms, fw, mw


def associate(table: TermTable, alpha: float = DEFAULT_ALPHA) -> AssociationRun:
    F, M = table.female_total, table.male_total
    if F == 0 or M == 0:
        raise EmptyGender(f"{table.subreddit}: female_total={F}, male_total={M}")
    crit = critical_value(alpha)
    terms, fw, mw = _arrays(table)
    keep = kernels.max_chi2_many(fw + mw, F, M) >= crit
    idx = np.flatnonzero(keep)
    cand = [terms[i] for i in idx]
    a, c = fw[idx], mw[idx]
    b, d = F - a, M - c
    chi2 = kernels.chi2_many(a, b, c, d)
    p = kernels.chi2_sf_many(chi2)

    # BH on (p, term) order
    order = sorted(range(len(cand)), key=lambda i: (p[i], cand[i]))
    k = kernels.bh_count(p[order], alpha) if order else 0
    sig = np.zeros(len(cand), dtype=bool)
    sig[order[:k]] = True

    female_more = a * M > c * F  # a/F > c/M without division
    results = [
        TermAssociation(
            cand[i], int(a[i]), int(b[i]), int(c[i]), int(d[i]),
            float(chi2[i]), float(p[i]), bool(sig[i]),
            FEMALE if female_more[i] else MALE,
        )
        for i in range(len(cand))
    ]
    results.sort(key=lambda r: (-r.chi2, r.term))
    return AssociationRun(table.subreddit, alpha, len(cand), crit, results, F, M)


def associate_all(tables: Mapping[str, TermTable], alpha: float = DEFAULT_ALPHA,
                  subreddits: Sequence[str] | None = None) -> dict[str, AssociationRun]:
    """Run ``associate`` per subreddit, skipping (with a warning) one-gender tables."""
    names = list(subreddits) if subreddits is not None else sorted(tables)
    runs = {}
    for name in names:
        try:
            runs[name] = associate(tables[name], alpha)
        except EmptyGender as exc:
            warnings.warn(f"skipping association run: {exc}", stacklevel=2)
    return runs


def _fmt_float(x: float) -> str:
    return repr(float(x))


def run_rows(run: AssociationRun) -> list[list]:
    return [
        [r.term, r.direction, r.a, r.f_total, r.c, r.m_total,
         _fmt_float(r.chi2), _fmt_float(r.p), "true" if r.significant else "false"]
        for r in run.results
    ]


def write_run_csv(run: AssociationRun, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        w.writerows(run_rows(run))


def run_filename(subreddit: str) -> str:
    safe = "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in subreddit)
    return f"{safe}.csv"


def write_runs(runs: Mapping[str, AssociationRun], out_dir: str | Path) -> None:
    """One CSV per subreddit plus a ``runs.json`` index of run metadata."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    index = []
    for name in sorted(runs):
        run = runs[name]
        fname = run_filename(name)
        write_run_csv(run, out_dir / fname)
        index.append({
            "subreddit": name, "file": fname, "alpha": run.alpha, "m": run.m,
            "critical": run.critical, "female_total": run.female_total,
            "male_total": run.male_total, "n_significant": run.n_significant,
        })
    (out_dir / "runs.json").write_text(json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_runs(in_dir: str | Path) -> dict[str, AssociationRun]:
    in_dir = Path(in_dir)
    index = json.loads((in_dir / "runs.json").read_text(encoding="utf-8"))
    runs = {}
    for meta in index:
        results = []
        with open(in_dir / meta["file"], newline="", encoding="utf-8") as fh:
            for r in csv.DictReader(fh):
                a, ft, c, mt = int(r["f_with"]), int(r["f_total"]), int(r["m_with"]), int(r["m_total"])
                results.append(TermAssociation(
                    r["term"], a, ft - a, c, mt - c, float(r["chi2"]), float(r["p"]),
                    r["significant"] == "true", r["direction"],
                ))
        runs[meta["subreddit"]] = AssociationRun(
            meta["subreddit"], meta["alpha"], meta["m"], meta["critical"], results,
            meta["female_total"], meta["male_total"],
        )
    return runs
