"""Female-share tables, per-subreddit term reports and run summaries."""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Mapping

from .assoc import BH_CAVEAT, AssociationRun
from .genderlex import FEMALE, REFERENCE_SIZE
from .termcount import SubredditStats

UNTHEMED = "Unthemed"


class MissingRun(UserWarning):
    pass


def percent(num: int, den: int, places: int = 1) -> str:
    """``num/den`` as a percentage, rounded half up, e.g. ``27.2%``."""
    if den <= 0:
        return ""
    scale = 10 ** places
    q = (2 * 100 * scale * num + den) // (2 * den)
    whole, frac = divmod(q, scale)
    return f"{whole}.{frac:0{places}d}%" if places else f"{whole}%"


def percent_of(share: float, places: int = 1) -> str:
    """Round-half-up rendering of a fraction given as a float (``0.2649`` -> ``26.5%``)."""
    d = (Decimal(repr(float(share))) * 100).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)
    return f"{d}%"


def _md_escape(s: str) -> str:
    return s.replace("|", "\\|")


def _csv_text(header: list[str], rows: Iterable[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _md_table(header: list[str], rows: Iterable[list]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for r in rows:
        lines.append("| " + " | ".join(_md_escape(str(x)) for x in r) + " |")
    return "\n".join(lines) + "\n"


@dataclass
class SubredditReportRow:
    rank: int
    subreddit: str
    comments: int
    female_comments: int
    n_significant: int | None
    example_terms: list[str]
    theme: str | None = None

    @property
    def female_share(self) -> str:
        return percent(self.female_comments, self.comments)


def female_share_table(stats: Iterable[SubredditStats], runs: Mapping[str, AssociationRun],
                       themes: Mapping[str, str] | None = None, k: int = 3) -> list[SubredditReportRow]:
    """One row per subreddit, ordered by increasing female share.

    With ``themes``, rows are grouped by theme (groups in order of their
    best-ranked subreddit) and ordered by share within each group.
    """
    stats = [s for s in stats if s.sampled_comments > 0]
    by_size = sorted(stats, key=lambda s: (-s.sampled_comments, s.subreddit))
    rows = []
    for rank, s in enumerate(by_size, 1):
        run = runs.get(s.subreddit)
        if run is None:
            warnings.warn(f"no association run for {s.subreddit}", MissingRun, stacklevel=2)
            n_sig, examples = None, []
        else:
            sig = run.significant
            n_sig = len(sig)
            examples = [r.term for r in sorted(sig, key=lambda r: (-r.chi2, r.term))[:k]]
        theme = None
        if themes is not None:
            theme = themes.get(s.subreddit, UNTHEMED)
        rows.append(SubredditReportRow(rank, s.subreddit, s.sampled_comments, s.female_total,
                                       n_sig, examples, theme))

    def share_key(r):
        # exact comparison of female_comments / comments
        return (_Ratio(r.female_comments, r.comments), r.rank)

    if themes is None:
        return sorted(rows, key=share_key)
    best_rank: dict[str, int] = {}
    for r in rows:
        best_rank[r.theme] = min(best_rank.get(r.theme, r.rank), r.rank)
    return sorted(rows, key=lambda r: (r.theme == UNTHEMED, best_rank[r.theme], r.theme) + share_key(r))


class _Ratio:
    __slots__ = ("n", "d")

    def __init__(self, n, d):
        self.n, self.d = n, d

    def __lt__(self, other):
        return self.n * other.d < other.n * self.d

    def __eq__(self, other):
        return self.n * other.d == other.n * self.d


SHARE_HEADER = ["Rank", "Subreddit", "Comm.", "Fem.", "Gendered terms", "Example terms", "Label"]


def _share_cells(r: SubredditReportRow) -> list:
    n = "" if r.n_significant is None else r.n_significant
    return [r.rank, r.subreddit, r.comments, r.female_share, n, " ".join(r.example_terms), ""]


def share_table_markdown(rows: list[SubredditReportRow]) -> str:
    themed = any(r.theme is not None for r in rows)
    if not themed:
        return _md_table(SHARE_HEADER, (_share_cells(r) for r in rows))
    parts = []
    theme = object()
    block: list[SubredditReportRow] = []
    for r in rows + [None]:
        if r is None or r.theme != theme:
            if block:
                parts.append(f"### {block[0].theme}\n\n" + _md_table(SHARE_HEADER, (_share_cells(b) for b in block)))
            block = []
            if r is not None:
                theme = r.theme
        if r is not None:
            block.append(r)
    return "\n".join(parts)


def share_table_csv(rows: list[SubredditReportRow]) -> str:
    header = ["rank", "subreddit", "comments", "female_share", "n_significant", "example_terms", "theme", "label"]
    return _csv_text(header, (
        [r.rank, r.subreddit, r.comments, r.female_share,
         "" if r.n_significant is None else r.n_significant,
         " ".join(r.example_terms), r.theme or "", ""]
        for r in rows
    ))


def female_share_report(rows: list[SubredditReportRow]) -> str:
    return (
        "# Female share by subreddit\n\n"
        "Gendered comments (max. one per user per subreddit per month) and the share "
        "that are female-authored, ordered by increasing female share. The Label "
        "column is left blank for analyst topic/style coding.\n\n"
        + share_table_markdown(rows)
        + "\n" + BH_CAVEAT + "\n"
    )


@dataclass
class TermReport:
    markdown: str
    csv: str


TERM_HEADER = ["Term", "Direction", "Female with", "Female %", "Male with", "Male %", "chi2", "p", "Label"]
TERM_CSV_HEADER = ["term", "direction", "f_with", "f_total", "f_pct", "m_with", "m_total", "m_pct",
                   "chi2", "p", "label"]


def _direction_word(d: str) -> str:
    return "female" if d == FEMALE else "male"


def term_report(run: AssociationRun, k: int = 20) -> TermReport:
    """Significant terms of one run, strongest first; Markdown shows the top ``k``."""
    sig = sorted(run.significant, key=lambda r: (-r.chi2, r.term))
    md_rows = [
        [r.term, _direction_word(r.direction), r.a, percent(r.a, r.f_total, 2),
         r.c, percent(r.c, r.m_total, 2), f"{r.chi2:.1f}", f"{r.p:.3g}", ""]
        for r in sig[:k]
    ]
    shown = f" (top {k} shown)" if len(sig) > k else ""
    md = (
        f"## r/{run.subreddit}\n\n"
        f"Comments: {run.female_total} female, {run.male_total} male. "
        f"Candidate terms after pruning: {run.m}. Alpha: {run.alpha}.\n\n"
        f"Significant terms: {len(sig)}{shown}\n\n"
        + _md_table(TERM_HEADER, md_rows)
        + "\n" + BH_CAVEAT + "\n"
    )
    csv_text = _csv_text(TERM_CSV_HEADER, (
        [r.term, _direction_word(r.direction), r.a, r.f_total, percent(r.a, r.f_total, 2),
         r.c, r.m_total, percent(r.c, r.m_total, 2), repr(r.chi2), repr(r.p), ""]
        for r in sig
    ))
    return TermReport(md, csv_text)


@dataclass
class SampleCounts:
    gendered: int
    sampled: int
    sampled_female: int
    sampled_male: int


def run_summary(ingest, counts: SampleCounts, lexicon_size: int, config: Mapping | None = None) -> dict:
    """Funnel totals and configuration echo as a JSON-ready dict."""
    return {
        "funnel": {
            "read": ingest.records_read,
            "accepted": ingest.records_accepted,
            "gendered": counts.gendered,
            "sampled": counts.sampled,
        },
        "rejections": {
            "malformed": ingest.rejected_malformed,
            "deleted": ingest.rejected_deleted,
            "empty": ingest.rejected_empty,
            "url_only": ingest.rejected_url_only,
        },
        "sampled_female": counts.sampled_female,
        "sampled_male": counts.sampled_male,
        "female_share": percent(counts.sampled_female, counts.sampled_female + counts.sampled_male),
        "lexicon_size": lexicon_size,
        "lexicon_reference_size": REFERENCE_SIZE,
        "config": dict(config or {}),
    }


def summary_markdown(summary: dict) -> str:
    f = summary["funnel"]
    rej = summary["rejections"]
    lines = [
        "# Run summary",
        "",
        "| Stage | Comments |",
        "|---|---|",
        f"| Read | {f['read']} |",
        f"| Accepted (non-empty, non-deleted, not URL-only) | {f['accepted']} |",
        f"| Gendered author | {f['gendered']} |",
        f"| Sampled (one per key) | {f['sampled']} |",
        "",
        f"Rejected: {rej['malformed']} malformed, {rej['deleted']} deleted, "
        f"{rej['empty']} empty, {rej['url_only']} URL-only.",
        "",
        f"Female share of sampled comments: {summary['female_share']} "
        f"({summary['sampled_female']} female, {summary['sampled_male']} male).",
        "",
        f"Name lexicon: {summary['lexicon_size']} names "
        f"(reference lexicon size: {summary['lexicon_reference_size']}).",
        "",
        "## Configuration",
        "",
        "```json",
        json.dumps(summary["config"], indent=2, sort_keys=True),
        "```",
        "",
        BH_CAVEAT,
        "",
    ]
    return "\n".join(lines)


def read_themes(path) -> dict[str, str]:
    with open(path, newline="", encoding="utf-8") as fh:
        return {r["subreddit"]: r["theme"] for r in csv.DictReader(fh)}
