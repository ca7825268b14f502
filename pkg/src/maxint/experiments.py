"""Monte-Carlo estimates of match probabilities and related statistics.

Every trial is a pure function of its derived seed and the (immutable)
shared data, so trials can run on a thread pool and be summed in any order.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .core import Collection, Document
from .index import PrefixIndex, build_prefix_index, query_max_lcp
from .models import (
    HierParams,
    ModelConfig,
    ZipfThresholdParams,
    extend_with_missing_prefix_terms,
    gen_hier_collection,
    gen_zipf_document,
    has_dense_prefix,
    hier_zipf_law_product,
    is_delta_n_generic,
)
from .oracle import (
    InvertedIndex,
    build_inverted_index,
    intersection_counts,
    max_containment_prefix,
)
from .rng import COLLECTION_SALT, QUERY_SALT, derive_seed, derive_stream, mix64

MODES = ("shared", "fresh_per_trial")
CROSSOVER_LEVEL = 0.5


def thread_count(threads: Optional[int] = None) -> int:
    """Explicit argument, else MAXINT_THREADS, else 1."""
    if threads is None:
        raw = os.environ.get("MAXINT_THREADS", "").strip()
        threads = int(raw) if raw else 1
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    return threads


def _map(fn: Callable, items: Sequence, threads: int) -> list:
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def query_seed(seed: int) -> int:
    return mix64(seed ^ QUERY_SALT)


def trial_query(config: ModelConfig, seed: int, trial: int) -> Document:
    return config.document(derive_stream(query_seed(seed), trial))


def trial_collection_seed(seed: int, trial: int) -> int:
    return derive_seed(seed ^ COLLECTION_SALT, trial)


@dataclass(frozen=True)
class TrialMaxima:
    intersection: int
    containment_prefix: int
    lcp: int


def trial_maxima(
    query: Document, idx: PrefixIndex, inv: InvertedIndex
) -> TrialMaxima:
    """Best any-match, prefix-containment and literal-LCP scores over the
    whole collection for one query."""
    best_int = int(intersection_counts(inv, query).max(initial=0))
    best_prefix = max_containment_prefix(inv, query)
    match, _ = query_max_lcp(idx, query)
    return TrialMaxima(best_int, best_prefix, match.lcp)


@dataclass(frozen=True)
class CurveData:
    """Survival counts of per-trial maxima: hits_*[i] is the number of trials
    whose maximum is >= q_values[i]."""

    config: ModelConfig
    q_values: tuple[int, ...]
    hits_any: tuple[int, ...]
    hits_prefix: tuple[int, ...]
    hits_lcp: tuple[int, ...]
    trials: int
    mode: str = "shared"
    seed: int = 0

    @property
    def p_any(self) -> list[float]:
        return [h / self.trials for h in self.hits_any]

    @property
    def p_prefix(self) -> list[float]:
        return [h / self.trials for h in self.hits_prefix]

    @property
    def p_lcp(self) -> list[float]:
        return [h / self.trials for h in self.hits_lcp]

    def p_at(self, q: int, which: str = "any") -> float:
        return getattr(self, "p_" + which)[self.q_values.index(q)]


def curves_from_maxima(
    config: ModelConfig,
    maxima: Iterable[TrialMaxima],
    q_values: Sequence[int],
    mode: str,
    seed: int,
) -> CurveData:
    maxima = list(maxima)

    def hits(attr):
        vals = [getattr(t, attr) for t in maxima]
        return tuple(sum(v >= q for v in vals) for q in q_values)

    return CurveData(
        config=config,
        q_values=tuple(q_values),
        hits_any=hits("intersection"),
        hits_prefix=hits("containment_prefix"),
        hits_lcp=hits("lcp"),
        trials=len(maxima),
        mode=mode,
        seed=seed,
    )


def estimate_curves(
    config: ModelConfig,
    q_range: tuple[int, int],
    trials: int,
    mode: str = "shared",
    seed: int = 0,
    threads: Optional[int] = None,
    collection: Optional[Collection] = None,
) -> CurveData:
    """Empirical any-match, prefix-containment and literal-LCP curves.

    In shared mode one collection (generated with `seed`, or supplied) serves
    every trial; in fresh_per_trial mode each trial draws its own collection.
    Each trial draws a fresh query from the model.
    """
    q_min, q_max = q_range
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if q_min > q_max:
        raise ValueError("empty q range")
    if mode not in MODES:
        raise ValueError(f"unknown collection mode {mode!r}")
    threads = thread_count(threads)

    if mode == "shared":
        c = collection if collection is not None else config.collection(seed)
        idx, inv = build_prefix_index(c), build_inverted_index(c)

        def run(t):
            return trial_maxima(trial_query(config, seed, t), idx, inv)

    else:

        def run(t):
            c = config.collection(trial_collection_seed(seed, t))
            q = trial_query(config, seed, t)
            return trial_maxima(q, build_prefix_index(c), build_inverted_index(c))

    maxima = _map(run, range(trials), threads)
    return curves_from_maxima(config, maxima, range(q_min, q_max + 1), mode, seed)


def find_crossover(curve: Iterable[tuple[int, float]], level: float = CROSSOVER_LEVEL):
    """Smallest q with p(q) < level, or None."""
    for q, p in curve:
        if p < level:
            return q
    return None


@dataclass(frozen=True)
class CrossoverReport:
    q_any_star: Optional[int]
    q_prefix_star: Optional[int]
    gap: Optional[int]
    theory_q: float


def crossover_report(cd: CurveData) -> CrossoverReport:
    qa = find_crossover(zip(cd.q_values, cd.p_any))
    qp = find_crossover(zip(cd.q_values, cd.p_prefix))
    gap = qa - qp if qa is not None and qp is not None else None
    return CrossoverReport(qa, qp, gap, cd.config.matching_level())


@dataclass(frozen=True)
class GenericityRow:
    n: int
    rate: float
    extended_rate: float
    dense_prefix_rate: float
    bound: float
    inserted: int


def genericity_rate(
    delta: float, n_grid: Sequence[int], m: int, samples: int, seed: int = 0
) -> list[GenericityRow]:
    """Fraction of Zipf documents that are delta-n-generic, per n.

    `extended_rate` re-checks after inserting the ceil(delta*sqrt(2 ln n))
    smallest missing ranks; `dense_prefix_rate` checks the stronger
    "i terms below e^i" condition on the extended document.  `bound` is the
    analytic lower bound, reported as-is even when negative.
    """
    params = ZipfThresholdParams(delta)
    docs = [gen_zipf_document(m, derive_stream(seed, i)) for i in range(samples)]
    rows = []
    for n in n_grid:
        inserted = math.ceil(delta * math.sqrt(2.0 * math.log(n)))
        plain = ext = dense = 0
        for d in docs:
            e = extend_with_missing_prefix_terms(d, inserted)
            plain += is_delta_n_generic(d, delta, n)
            ext += is_delta_n_generic(e, delta, n)
            dense += has_dense_prefix(e, n)
        rows.append(
            GenericityRow(
                n=n,
                rate=plain / samples,
                extended_rate=ext / samples,
                dense_prefix_rate=dense / samples,
                bound=params.generic_bound(n),
                inserted=inserted,
            )
        )
    return rows


@dataclass(frozen=True)
class AccuracySummary:
    trials: int
    mean: float
    quantiles: dict
    exact_fraction: float
    ratios: tuple[float, ...]


def accuracy_experiment(
    config: ModelConfig, trials: int, seed: int = 0, threads: Optional[int] = None
) -> AccuracySummary:
    """Ratio of the index answer's intersection to the exact optimum."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    c = config.collection(seed)
    idx, inv = build_prefix_index(c), build_inverted_index(c)

    def run(t):
        q = trial_query(config, seed, t)
        best = int(intersection_counts(inv, q).max(initial=0))
        match, _ = query_max_lcp(idx, q)
        return match.intersection, best

    pairs = _map(run, range(trials), thread_count(threads))
    ratios = np.array([got / max(1, best) for got, best in pairs])
    qs = (0.0, 0.25, 0.5, 0.75, 1.0)
    return AccuracySummary(
        trials=trials,
        mean=float(ratios.mean()),
        quantiles={q: float(v) for q, v in zip(qs, np.quantile(ratios, qs))},
        exact_fraction=sum(got == best for got, best in pairs) / trials,
        ratios=tuple(ratios.tolist()),
    )


@dataclass(frozen=True)
class LevelReport:
    level: int
    analytic: float
    empirical: float
    deviation: float


def zipf_law_check(
    k: int, n: Optional[int] = None, seed: int = 0, collection: Optional[Collection] = None
) -> list[LevelReport]:
    """Per level: mean document frequency of its terms times their mean
    frequency rank, divided by the collection size, against the analytic value.

    Frequency ranks are 1-based positions after sorting all (2^k - 1) * k
    terms by descending document count, ties by term id.
    """
    c = collection if collection is not None else gen_hier_collection(HierParams(k, n, seed))
    universe = (2 ** k - 1) * k
    counts = np.zeros(universe + 1, dtype=np.int64)
    flat = np.fromiter((t for d in c.docs for t in d), dtype=np.int64)
    np.add.at(counts, flat, 1)
    counts = counts[1:]
    order = np.lexsort((np.arange(universe), -counts))
    rank = np.empty(universe, dtype=np.int64)
    rank[order] = np.arange(1, universe + 1)
    reports = []
    for level in range(1, k + 1):
        lo = (2 ** (level - 1) - 1) * k
        hi = (2 ** level - 1) * k
        emp = counts[lo:hi].mean() * rank[lo:hi].mean() / c.n
        ana = hier_zipf_law_product(level, k)
        reports.append(LevelReport(level, ana, float(emp), abs(float(emp) - ana)))
    return reports


def theory_bounds_hier(k: int, gamma: float) -> tuple[float, float]:
    """(prefix-match lower bound, any-match upper bound) for the hierarchical
    scheme at slack gamma: 1 - 2^-(2k)^gamma and 2 / k^(gamma-1)."""
    return 1.0 - 2.0 ** (-((2.0 * k) ** gamma)), 2.0 / k ** (gamma - 1.0)
