"""Command line entry point: ``gendered-terms <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import assoc, pipeline, report, termcount
from .genderlex import GenderCache, GenderLexicon, build_lexicon, bundled_census_paths
from .ingest import FileUnreadable, IngestStats, stream_corpus
from .sampler import MODES, SUBREDDIT, SampleReducer, read_samples, write_samples

log = logging.getLogger("gendered_terms")


def cmd_build_lexicon(args) -> int:
    male, female = bundled_census_paths()
    lex = build_lexicon(args.male or male, args.female or female)
    lex.to_csv(args.out)
    print(f"{len(lex)} names written to {args.out}")
    return 0


def cmd_sample(args) -> int:
    lex = GenderLexicon.from_csv(args.lexicon) if args.lexicon else build_lexicon(*bundled_census_paths())
    genders = GenderCache(lex)
    stats = IngestStats()
    red = SampleReducer(args.mode, args.seed)
    gendered = 0
    for c in stream_corpus(args.inputs, stats):
        g = genders(c.author)
        if g in ("F", "M"):
            gendered += 1
            red.add(c, g)
    n = write_samples(red.results(), args.out)
    print(json.dumps({"ingest": stats.to_dict(), "gendered": gendered, "sampled": n}, sort_keys=True))
    return 0


def cmd_count(args) -> int:
    tables = termcount.count_terms(read_samples(args.inp, args.mode), by_subreddit=(args.mode == SUBREDDIT))
    termcount.write_tables(tables, args.out)
    print(f"{len(tables)} term tables written to {args.out}")
    return 0


def cmd_assoc(args) -> int:
    tables = termcount.read_tables(args.tables)
    names = None
    if args.top:
        names = termcount.top_subreddits(termcount.subreddit_stats(tables), args.top)
    runs = assoc.associate_all(tables, args.alpha, names)
    assoc.write_runs(runs, args.out)
    for name in sorted(runs):
        r = runs[name]
        print(f"{name}\tcandidates={r.m}\tsignificant={r.n_significant}")
    return 0


def cmd_simil(args) -> int:
    tables = termcount.read_tables(args.tables)
    pipeline.write_similarity(tables, args.out, with_cluster=args.cluster, idf=args.idf)
    print(f"similarity for {len(tables)} subreddits written to {args.out}")
    return 0


def cmd_report(args) -> int:
    stats = termcount.read_totals(args.stats)
    runs = assoc.read_runs(args.assoc)
    themes = report.read_themes(args.themes) if args.themes else None
    if args.all is False:
        stats = [s for s in stats if s.subreddit in runs]
    pipeline.write_reports(stats, runs, args.out, themes=themes, k=args.k)
    print(f"reports written to {args.out}")
    return 0


def cmd_run(args) -> int:
    cfg = pipeline.RunConfig.from_json(args.config)
    summary = pipeline.run(cfg)
    print(json.dumps(summary["funnel"], sort_keys=True))
    return 0


def cmd_synth(args) -> int:
    from .synth import SynthConfig, write_corpus

    cfg = SynthConfig.from_json(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    truth = write_corpus(cfg, args.out)
    print(f"corpus written to {Path(args.out) / 'corpus.ndjson'}; {len(truth.gendered)} planted effects")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gendered-terms", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("build-lexicon", help="build the first-name gender lexicon CSV")
    s.add_argument("--male", help="census male first-name file (default: bundled 1990 file)")
    s.add_argument("--female", help="census female first-name file (default: bundled 1990 file)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_build_lexicon)

    s = sub.add_parser("sample", help="gender and deduplicate NDJSON comment dumps")
    s.add_argument("inputs", nargs="+", help="NDJSON comment files")
    s.add_argument("--mode", choices=MODES, default=SUBREDDIT)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--lexicon", help="lexicon CSV (default: built from bundled census files)")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("count", help="build term presence tables from samples")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--mode", choices=MODES, default=SUBREDDIT)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("assoc", help="chi-squared + Benjamini-Hochberg per subreddit")
    s.add_argument("--tables", required=True)
    s.add_argument("--alpha", type=float, default=assoc.DEFAULT_ALPHA)
    s.add_argument("--top", type=int, default=0, help="only the N subreddits with most comments")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_assoc)

    s = sub.add_parser("simil", help="TF-IDF cosine similarity between subreddits")
    s.add_argument("--tables", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--cluster", action="store_true")
    s.add_argument("--idf", choices=("log", "none"), default="log")
    s.set_defaults(func=cmd_simil)

    s = sub.add_parser("report", help="female-share and term reports")
    s.add_argument("--stats", required=True, help="totals CSV: subreddit,female_total,male_total")
    s.add_argument("--assoc", required=True)
    s.add_argument("--themes", help="CSV subreddit,theme")
    s.add_argument("--k", type=int, default=20)
    s.add_argument("--all", action="store_true", help="include subreddits without a run")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("run", help="full pipeline from a JSON config")
    s.add_argument("--config", required=True)
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("synth", help="generate a synthetic corpus with planted effects")
    s.add_argument("--config", required=True)
    s.add_argument("--seed", type=int)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_synth)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FileUnreadable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
