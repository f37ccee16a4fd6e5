"""TF-IDF subreddit vectors, cosine similarity and average-linkage clustering."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np
from scipy import sparse


class TooFewDocuments(ValueError):
    pass


@dataclass
class SubredditVector:
    subreddit: str
    weights: dict[str, float]


def tfidf_vectors(tables: Mapping, idf: str = "log") -> dict[str, SubredditVector]:
    """Weight = presence * ln(N / df) over the given set of subreddit tables.

    ``idf="none"`` switches the idf factor off (plain presence vectors), for
    sensitivity checks.
    """
    if len(tables) < 2:
        raise TooFewDocuments(f"need at least 2 subreddits, got {len(tables)}")
    n = len(tables)
    presence = {}
    df: dict[str, int] = {}
    for name, tab in tables.items():
        pres = {t: f + m for t, (f, m) in tab.presence.items() if f + m > 0}
        presence[name] = pres
        for t in pres:
            df[t] = df.get(t, 0) + 1
    if idf == "log":
        idf_w = {t: math.log(n / k) for t, k in df.items()}
    elif idf == "none":
        idf_w = dict.fromkeys(df, 1.0)
    else:
        raise ValueError(f"unknown idf variant {idf!r}")
    return {
        name: SubredditVector(name, {t: tf * idf_w[t] for t, tf in pres.items()})
        for name, pres in presence.items()
    }


def cosine(u: SubredditVector, v: SubredditVector) -> float:
    if len(u.weights) > len(v.weights):
        u, v = v, u
    dot = sum(w * v.weights.get(t, 0.0) for t, w in u.weights.items())
    nu = math.sqrt(sum(w * w for w in u.weights.values()))
    nv = math.sqrt(sum(w * w for w in v.weights.values()))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return min(1.0, max(0.0, dot / (nu * nv)))


def similarity_matrix(vectors: Mapping[str, SubredditVector]) -> tuple[list[str], np.ndarray]:
    """All pairwise cosines via one sparse product; names sorted."""
    names = sorted(vectors)
    vocab: dict[str, int] = {}
    rows, cols, vals = [], [], []
    for i, name in enumerate(names):
        for t, w in vectors[name].weights.items():
            if w != 0.0:
                rows.append(i)
                cols.append(vocab.setdefault(t, len(vocab)))
                vals.append(w)
    X = sparse.csr_matrix((vals, (rows, cols)), shape=(len(names), max(len(vocab), 1)))
    norms = np.sqrt(np.asarray(X.multiply(X).sum(axis=1)).ravel())
    G = (X @ X.T).toarray()
    with np.errstate(divide="ignore", invalid="ignore"):
        S = G / np.outer(norms, norms)
    S[~np.isfinite(S)] = 0.0
    np.clip(S, 0.0, 1.0, out=S)
    for i in range(len(names)):
        S[i, i] = 1.0 if norms[i] > 0 else 0.0
    return names, S


@dataclass(frozen=True)
class Merge:
    left: tuple[str, ...]
    right: tuple[str, ...]
    height: float

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(sorted(self.left + self.right))


@dataclass
class Dendrogram:
    leaves: list[str]
    merges: list[Merge]

    def to_tree(self) -> dict:
        nodes: dict[tuple[str, ...], dict] = {(n,): {"name": n} for n in self.leaves}
        root = None
        for mg in self.merges:
            root = {
                "height": mg.height,
                "size": len(mg.members),
                "children": [nodes.pop(mg.left), nodes.pop(mg.right)],
            }
            nodes[mg.members] = root
        return root if root is not None else next(iter(nodes.values()))

    def to_json(self) -> str:
        doc = {
            "linkage": "average",
            "distance": "1 - cosine",
            "leaves": self.leaves,
            "merges": [
                {"left": list(m.left), "right": list(m.right), "height": m.height}
                for m in self.merges
            ],
            "tree": self.to_tree(),
        }
        return json.dumps(doc, indent=2) + "\n"


def cluster(vectors: Mapping[str, SubredditVector]) -> Dendrogram:
    if len(vectors) < 2:
        raise TooFewDocuments(f"need at least 2 subreddits, got {len(vectors)}")
    names, S = similarity_matrix(vectors)
    return average_linkage(names, 1.0 - S)


def average_linkage(names: list[str], dist: np.ndarray) -> Dendrogram:
    """UPGMA on a square distance matrix.

    Equal distances are resolved by the lexicographically smallest pair of
    cluster labels, a cluster's label being its smallest member.
    """
    n = len(names)
    D = np.array(dist, dtype=np.float64)
    np.fill_diagonal(D, np.inf)
    active = list(range(n))
    members: dict[int, tuple[str, ...]] = {i: (names[i],) for i in range(n)}
    sizes = {i: 1 for i in range(n)}
    merges = []
    while len(active) > 1:
        sub = D[np.ix_(active, active)]
        best = sub.min()
        ii, jj = np.nonzero(sub == best)
        pairs = []
        for x, y in zip(ii, jj):
            if x < y:
                p, q = active[x], active[y]
                lp, lq = members[p][0], members[q][0]
                pairs.append(((min(lp, lq), max(lp, lq)), p, q))
        _, p, q = min(pairs)
        left, right = sorted((members[p], members[q]))
        merges.append(Merge(left, right, float(best)))
        # Lance-Williams update for average linkage, stored in row p
        sp, sq = sizes[p], sizes[q]
        for r in active:
            if r not in (p, q):
                D[p, r] = D[r, p] = (sp * D[p, r] + sq * D[q, r]) / (sp + sq)
        D[q, :] = D[:, q] = np.inf
        members[p] = tuple(sorted(members[p] + members[q]))
        sizes[p] = sp + sq
        active.remove(q)
    return Dendrogram(sorted(names), merges)


def write_similarity_csv(names: list[str], S: np.ndarray, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([""] + names)
        for name, row in zip(names, S):
            w.writerow([name] + [f"{x:.6f}" for x in row])
