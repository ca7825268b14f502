"""Exact answers used as ground truth: brute-force MaxInt over an inverted
index, and the any-match / prefix-containment existence predicates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Collection, Document, MatchResult, lcp_length, score
from .errors import EmptyCollection, InvalidPrefixLength

_EMPTY = np.zeros(0, dtype=np.int64)


@dataclass(frozen=True)
class InvertedIndex:
    """term rank -> ascending array of indices of documents containing it."""

    postings: dict
    n_docs: int

    def get(self, term: int) -> np.ndarray:
        return self.postings.get(term, _EMPTY)

    def total_postings(self) -> int:
        return sum(len(p) for p in self.postings.values())

    def as_lists(self) -> dict[int, list[int]]:
        return {t: p.tolist() for t, p in self.postings.items()}


def build_inverted_index(c: Collection) -> InvertedIndex:
    lengths = np.fromiter((len(d) for d in c.docs), dtype=np.int64, count=c.n)
    total = int(lengths.sum())
    terms = np.fromiter((t for d in c.docs for t in d), dtype=np.int64, count=total)
    doc_ids = np.repeat(np.arange(c.n, dtype=np.int64), lengths)
    # Stable sort keeps doc ids ascending within each term.
    perm = np.argsort(terms, kind="stable")
    terms, doc_ids = terms[perm], doc_ids[perm]
    keys, starts = np.unique(terms, return_index=True)
    bounds = list(starts[1:]) + [total]
    postings = {
        int(t): doc_ids[s:e] for t, s, e in zip(keys.tolist(), starts.tolist(), bounds)
    }
    return InvertedIndex(postings, c.n)


def intersection_counts(inv: InvertedIndex, query: Document) -> np.ndarray:
    """Per-document |query & d|, touching documents only through postings."""
    counts = np.zeros(inv.n_docs, dtype=np.int32)
    for t in query:
        counts[inv.get(t)] += 1
    return counts


def oracle_max_intersection(
    c: Collection, query: Document, inverted: InvertedIndex | None = None
) -> MatchResult:
    """Exact argmax of |query & d|, lowest document index on ties.

    A query sharing no term with any document yields document 0.
    """
    if c.n == 0:
        raise EmptyCollection("cannot query an empty collection")
    inv = inverted if inverted is not None else build_inverted_index(c)
    counts = intersection_counts(inv, query)
    best = int(np.argmax(counts))
    return score(best, query, c.docs[best])


def max_containment_prefix(inv: InvertedIndex, query: Document) -> int:
    """Largest p such that some document contains the first p query terms."""
    if inv.n_docs == 0:
        return 0
    alive = None
    for p, t in enumerate(query):
        post = inv.get(t)
        alive = post if alive is None else np.intersect1d(alive, post, assume_unique=True)
        if len(alive) == 0:
            return p
    return len(query)


def exists_any_match(
    c: Collection, query: Document, q: int, inverted: InvertedIndex | None = None
) -> bool:
    if q < 0:
        raise ValueError("q must be >= 0")
    return oracle_max_intersection(c, query, inverted).intersection >= q


def exists_prefix_containment(
    c: Collection, query: Document, q: int, inverted: InvertedIndex | None = None
) -> bool:
    if not 0 <= q <= len(query):
        raise InvalidPrefixLength(f"prefix length {q} outside [0, {len(query)}]")
    if c.n == 0:
        raise EmptyCollection("cannot query an empty collection")
    if q == 0:
        return True
    inv = inverted if inverted is not None else build_inverted_index(c)
    return max_containment_prefix(inv, query[:q]) >= q


def scan_max_lcp(c: Collection, query: Document) -> int:
    """max over all documents of lcp_length, by exhaustive scan."""
    return max((lcp_length(query, d) for d in c.docs), default=0)
