"""Documents, collections and the set/ordering primitives on them.

A document is a tuple of strictly increasing 1-based term ranks (rank 1 is
the most frequent term).  Plain tuples are used on purpose: Python's tuple
ordering is exactly the lexicographic order the prefix index relies on, and
tuples are hashable and immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidMaxCardinality, InvalidTermRank

Document = tuple[int, ...]

MODELS = ("zipf", "hier", "external")


def canonicalize(raw_terms: Iterable[int]) -> Document:
    """Sort ascending and drop duplicates.

    Raises InvalidTermRank for any rank below 1.
    """
    terms = set()
    for t in raw_terms:
        if isinstance(t, bool) or int(t) != t or t < 1:
            raise InvalidTermRank(f"term rank must be a positive integer, got {t!r}")
        terms.add(int(t))
    return tuple(sorted(terms))


def is_canonical(doc: Sequence[int]) -> bool:
    return all(0 < a < b for a, b in zip(doc, doc[1:])) and (not doc or doc[0] >= 1)


def intersection_size(a: Document, b: Document) -> int:
    """|a & b| by a linear merge of the two sorted sequences."""
    i = j = count = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x == y:
            count += 1
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return count


def lcp_length(a: Document, b: Document) -> int:
    n = min(len(a), len(b))
    i = 0
    while i < n and a[i] == b[i]:
        i += 1
    return i


def containment_prefix_len(query: Document, d: Document) -> int:
    """Largest p such that the first p terms of `query` all occur in `d`.

    The terms need not form a prefix of `d`; both sequences are sorted, so
    a single forward scan over `d` suffices.
    """
    j = 0
    nd = len(d)
    for p, t in enumerate(query):
        while j < nd and d[j] < t:
            j += 1
        if j == nd or d[j] != t:
            return p
        j += 1
    return len(query)


def reverse_order_metric(a: Document, b: Document, max_cardinality: int) -> Fraction:
    """Distance (2M - 2|a&b|) / (2M - |a&b|) with M the maximal document size.

    This is the Jaccard distance after padding both documents to size M with
    private dummy terms, so it is a metric and reverses the intersection order.
    """
    M = max_cardinality
    if M < 1 or M < max(len(a), len(b)):
        raise InvalidMaxCardinality(
            f"max cardinality {M} is below document sizes {len(a)}, {len(b)}"
        )
    s = intersection_size(a, b)
    return Fraction(2 * M - 2 * s, 2 * M - s)


def compare_lex(a: Document, b: Document) -> int:
    """Three-way lexicographic comparison: -1, 0 or 1."""
    return (a > b) - (a < b)


@dataclass(frozen=True)
class Collection:
    """An ordered family of documents plus the parameters that produced it.

    `m` is the size of the term universe (for the hierarchical scheme that is
    (2^k - 1) * k); `k` is 0 unless the model is "hier".
    """

    docs: tuple[Document, ...]
    model: str = "external"
    m: int = 0
    k: int = 0
    seed: int = 0
    max_cardinality: int = field(init=False)

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        object.__setattr__(self, "docs", tuple(tuple(d) for d in self.docs))
        object.__setattr__(
            self, "max_cardinality", max((len(d) for d in self.docs), default=0)
        )

    @property
    def n(self) -> int:
        return len(self.docs)

    def __len__(self) -> int:
        return len(self.docs)

    def __getitem__(self, i: int) -> Document:
        return self.docs[i]

    def __iter__(self):
        return iter(self.docs)


@dataclass(frozen=True)
class MatchResult:
    """A chosen document and its three match scores against the query.

    lcp <= containment_prefix <= intersection always holds.
    """

    doc_index: int
    lcp: int
    containment_prefix: int
    intersection: int


def score(doc_index: int, query: Document, doc: Document) -> MatchResult:
    return MatchResult(
        doc_index=doc_index,
        lcp=lcp_length(query, doc),
        containment_prefix=containment_prefix_len(query, doc),
        intersection=intersection_size(query, doc),
    )
