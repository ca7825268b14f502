"""Approximate MaxInt by maximal common prefix.

Documents are sorted lexicographically by their ascending term-rank lists.
A query is located by binary search; the document sharing the longest prefix
with the query is always one of the two neighbours of its insertion point.

The same index serves the hierarchical scheme: term ids grow with level and
encode the cell, so lexicographic order on term lists is the cell-path order
(leftmost path first, equal paths ordered by their term lists).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Collection, Document, MatchResult, score
from .errors import EmptyCollection


@dataclass(frozen=True)
class QueryStats:
    sequence_comparisons: int
    term_comparisons: int


@dataclass(frozen=True)
class PrefixIndex:
    collection: Collection
    order: tuple[int, ...]

    def __len__(self):
        return len(self.order)

    def sorted_docs(self):
        docs = self.collection.docs
        return [docs[i] for i in self.order]

    def query(self, query: Document) -> tuple[MatchResult, QueryStats]:
        return query_max_lcp(self, query)


def build_prefix_index(c: Collection) -> PrefixIndex:
    docs = c.docs
    # sorted() is stable, so equal documents keep their original order.
    order = sorted(range(len(docs)), key=docs.__getitem__)
    return PrefixIndex(c, tuple(order))


def _compare(query: Document, doc: Document) -> tuple[int, int, int]:
    """Three-way compare query against doc.

    Returns (sign, lcp, term comparisons) where sign > 0 means doc < query.
    """
    n = min(len(query), len(doc))
    i = 0
    while i < n:
        a, b = query[i], doc[i]
        if a != b:
            return (1 if a > b else -1), i, i + 1
        i += 1
    # One more comparison decides by length.
    return (len(query) > len(doc)) - (len(query) < len(doc)), i, n + 1


def query_max_lcp(idx: PrefixIndex, query: Document) -> tuple[MatchResult, QueryStats]:
    """Document with the longest common prefix with `query`.

    Binary search for the leftmost position whose document is >= query.
    Every move of `lo` or `hi` follows a comparison against the element that
    ends up adjacent to the final position, so the LCPs of both neighbours
    are known once the search ends and no extra comparison is needed.
    Ties between the two neighbours go to the lower original document index.
    """
    n = len(idx.order)
    if n == 0:
        raise EmptyCollection("cannot query an empty collection")
    docs = idx.collection.docs
    order = idx.order

    lo, hi = 0, n
    pred = succ = None  # (original index, lcp)
    seq = terms = 0
    while lo < hi:
        mid = (lo + hi) // 2
        j = order[mid]
        sign, lcp, tc = _compare(query, docs[j])
        seq += 1
        terms += tc
        if sign > 0:
            lo = mid + 1
            pred = (j, lcp)
        else:
            hi = mid
            succ = (j, lcp)

    candidates = [c for c in (pred, succ) if c is not None]
    best, _ = max(candidates, key=lambda c: (c[1], -c[0]))
    return score(best, query, docs[best]), QueryStats(seq, terms)
