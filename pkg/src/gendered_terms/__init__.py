"""Detect gender-associated terms in large comment dumps.

Stages: NDJSON ingest and filtering, username-based gender inference from
census first names, one-comment-per-key sampling, per-subreddit term
presence tables, chi-squared association with power pruning and
Benjamini-Hochberg selection, TF-IDF similarity, and report generation.
"""

from .assoc import associate, bh_select, chi_sq_p, chi_squared, max_attainable_chi, prune_terms
from .genderlex import build_lexicon, extract_first_name, infer_gender
from .ingest import filter_comment, parse_record, stream_corpus
from .sampler import month_key, select_samples
from .termcount import count_terms, tokenize, top_subreddits

__version__ = "0.1.0"
