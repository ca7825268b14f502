import numpy as np
import pytest
from hypothesis import strategies as st


def naive_zipf_matrix(m, count, seed):
    """Per-term independent Bernoulli(1/i) draws; rows are documents."""
    rng = np.random.default_rng(seed)
    probs = 1.0 / np.arange(1, m + 1)
    return rng.random((count, m)) < probs


def pairwise_max_intersection(docs, query):
    """Doubly naive: compare every term pair of every document."""
    best, best_i = -1, 0
    for i, d in enumerate(docs):
        s = sum(1 for a in query for b in d if a == b)
        if s > best:
            best, best_i = s, i
    return best_i, best


def literal_lcp(a, b):
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


documents = st.lists(st.integers(1, 40), max_size=12).map(lambda xs: tuple(sorted(set(xs))))


@pytest.fixture
def report(capsys):
    """Print one PASS/FAIL line per acceptance criterion, then assert it."""

    def _report(name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, f"{name}: {detail}"

    return _report
