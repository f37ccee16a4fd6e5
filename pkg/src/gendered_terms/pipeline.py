"""End-to-end pipeline: ingest, gender, sample, count, associate, report."""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from . import assoc, report, simil, termcount
from .genderlex import FEMALE, MALE, GenderCache, GenderLexicon, build_lexicon, bundled_census_paths
from .ingest import Comment, IngestStats, stream_corpus
from .sampler import SUBREDDIT, SampleReducer

log = logging.getLogger(__name__)


@dataclass
class RunConfig:
    inputs: list[str]
    out: str
    lexicon: str | None = None
    male_names: str | None = None
    female_names: str | None = None
    seed: int = 0
    alpha: float = assoc.DEFAULT_ALPHA
    mode: str = SUBREDDIT
    top_n: int = 100
    report_k: int = 20
    themes: str | None = None
    similarity: bool = False
    write_samples: bool = False

    @classmethod
    def from_dict(cls, d: Mapping, base: Path | None = None) -> "RunConfig":
        d = dict(d)
        if isinstance(d.get("inputs"), str):
            d["inputs"] = [d["inputs"]]
        if base is not None:
            for key in ("out", "lexicon", "male_names", "female_names", "themes"):
                if d.get(key):
                    d[key] = str(base / d[key])
            d["inputs"] = [str(base / p) for p in d["inputs"]]
        return cls(**d)

    @classmethod
    def from_json(cls, path) -> "RunConfig":
        path = Path(path)
        return cls.from_dict(json.loads(path.read_text(encoding="utf-8")), base=path.parent)

    def echo(self) -> dict:
        """Config values worth recording in the summary (no filesystem paths)."""
        return {
            "seed": self.seed, "alpha": self.alpha, "mode": self.mode,
            "top_n": self.top_n, "report_k": self.report_k,
            "n_inputs": len(self.inputs), "similarity": self.similarity,
        }


@dataclass
class AnalysisResult:
    tables: dict[str, termcount.TermTable]
    selected: list[str]
    runs: dict[str, assoc.AssociationRun]
    counts: report.SampleCounts
    samples: list = field(default_factory=list)


def load_lexicon(cfg: RunConfig) -> GenderLexicon:
    if cfg.lexicon:
        return GenderLexicon.from_csv(cfg.lexicon)
    if cfg.male_names or cfg.female_names:
        return build_lexicon(cfg.male_names, cfg.female_names)
    return build_lexicon(*bundled_census_paths())


def analyze(comments: Iterable[Comment], lex: GenderLexicon, *, mode: str = SUBREDDIT,
            seed: int = 0, alpha: float = assoc.DEFAULT_ALPHA, top_n: int | None = 100,
            keep_samples: bool = False) -> AnalysisResult:
    """Run gender inference through association on an accepted-comment stream."""
    genders = GenderCache(lex)
    reducer = SampleReducer(mode, seed)
    gendered = 0
    for c in comments:
        g = genders(c.author)
        if g == FEMALE or g == MALE:
            gendered += 1
            reducer.add(c, g)
    samples = reducer.results()
    tables = termcount.count_terms(samples, by_subreddit=(mode == SUBREDDIT))
    stats = termcount.subreddit_stats(tables)
    if top_n is None:
        selected = sorted(tables)
    else:
        selected = termcount.top_subreddits(stats, min(top_n, len(stats))) if stats else []
    runs = assoc.associate_all(tables, alpha, selected)
    n_f = sum(1 for s in samples if s.gender == FEMALE)
    counts = report.SampleCounts(gendered, len(samples), n_f, len(samples) - n_f)
    return AnalysisResult(tables, selected, runs, counts, samples if keep_samples else [])


def run(cfg: RunConfig) -> dict:
    """Execute the whole pipeline and write every output under ``cfg.out``."""
    t0 = time.perf_counter()
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    lex = load_lexicon(cfg)
    lex.to_csv(out / "lexicon.csv")

    stats = IngestStats()
    res = analyze(stream_corpus(cfg.inputs, stats), lex, mode=cfg.mode, seed=cfg.seed,
                  alpha=cfg.alpha, top_n=cfg.top_n, keep_samples=cfg.write_samples)
    log.info("analysed %d records in %.1fs", stats.records_read, time.perf_counter() - t0)

    if cfg.write_samples:
        from .sampler import write_samples
        write_samples(res.samples, out / "samples.ndjson")
    selected_tables = {name: res.tables[name] for name in res.selected}
    termcount.write_tables(selected_tables, out / "tables")
    termcount.write_totals(res.tables.values(), out / "tables" / "all_totals.csv")
    assoc.write_runs(res.runs, out / "assoc")

    write_reports(
        [termcount.SubredditStats(t.subreddit, t.female_total, t.male_total) for t in selected_tables.values()],
        res.runs,
        out / "report",
        themes=report.read_themes(cfg.themes) if cfg.themes else None,
        k=cfg.report_k,
    )

    if cfg.similarity and len(selected_tables) >= 2:
        write_similarity(selected_tables, out / "simil", with_cluster=True)

    summary = report.run_summary(stats, res.counts, len(lex), cfg.echo())
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    (out / "summary.md").write_text(report.summary_markdown(summary), encoding="utf-8")
    return summary


def write_reports(stats, runs, out_dir, themes=None, k: int = 20) -> None:
    out_dir = Path(out_dir)
    (out_dir / "terms").mkdir(parents=True, exist_ok=True)
    rows = report.female_share_table(stats, runs, themes)
    (out_dir / "female_share.md").write_text(report.female_share_report(rows), encoding="utf-8")
    (out_dir / "female_share.csv").write_text(report.share_table_csv(rows), encoding="utf-8", newline="")
    for name in sorted(runs):
        tr = report.term_report(runs[name], k)
        stem = assoc.run_filename(name)[:-4]
        (out_dir / "terms" / f"{stem}.md").write_text(tr.markdown, encoding="utf-8")
        (out_dir / "terms" / f"{stem}.csv").write_text(tr.csv, encoding="utf-8", newline="")


def write_similarity(tables, out_dir, with_cluster: bool = False, idf: str = "log") -> None:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    vecs = simil.tfidf_vectors(tables, idf=idf)
    names, S = simil.similarity_matrix(vecs)
    simil.write_similarity_csv(names, S, out_dir / "similarity.csv")
    if with_cluster:
        dendro = simil.average_linkage(names, 1.0 - S)
        (out_dir / "dendrogram.json").write_text(dendro.to_json(), encoding="utf-8")
