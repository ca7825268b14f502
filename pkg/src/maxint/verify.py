"""Self-check suites behind `maxint verify`.

Each suite returns a list of Check records; the CLI prints one line per
check and exits nonzero if any failed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import containment_prefix_len, intersection_size, lcp_length
from .experiments import (
    crossover_report,
    estimate_curves,
    genericity_rate,
    zipf_law_check,
)
from .formats import decode_collection, encode_collection, render_curve_svg, write_curve_csv
from .index import build_prefix_index, query_max_lcp
from .models import (
    HierParams,
    ModelConfig,
    gen_hier_collection,
    hier_matching_levels,
    is_valid_hier_document,
    zipf_matching_level,
)
from .oracle import oracle_max_intersection, scan_max_lcp
from .rng import SplitMix64


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def random_instance(rng: SplitMix64, max_n: int = 512):
    """A small random collection from either model plus a query from the same model."""
    n = 1 + rng.randbelow(max_n)
    if rng.randbelow(2):
        config = ModelConfig("zipf", n=n, m=1 + rng.randbelow(5000))
    else:
        config = ModelConfig("hier", n=n, k=2 + rng.randbelow(11))
    c = config.collection(rng.next_u64())
    if rng.randbelow(4) == 0:
        query = c.docs[rng.randbelow(c.n)]
    else:
        query = config.document(rng)
    return c, query


def suite_oracle(instances: int = 200, seed: int = 2024) -> list[Check]:
    rng = SplitMix64(seed)
    lcp_bad = int_bad = chain_bad = 0
    for _ in range(instances):
        c, query = random_instance(rng)
        match, _ = query_max_lcp(build_prefix_index(c), query)
        lcp_bad += match.lcp != scan_max_lcp(c, query)
        best = max(intersection_size(query, d) for d in c.docs)
        exact = oracle_max_intersection(c, query)
        int_bad += exact.intersection != best or match.intersection > best
        for d in c.docs:
            a, b, s = lcp_length(query, d), containment_prefix_len(query, d), intersection_size(query, d)
            chain_bad += not a <= b <= s
    return [
        Check("index-vs-scan max LCP", lcp_bad == 0, f"{lcp_bad} mismatches in {instances} instances"),
        Check("oracle-vs-scan max intersection", int_bad == 0, f"{int_bad} mismatches"),
        Check("lcp <= containment <= intersection", chain_bad == 0, f"{chain_bad} violations"),
    ]


def suite_thresholds(seed: int = 42, trials: int = 300) -> list[Check]:
    checks = []
    zipf = ModelConfig("zipf", n=50000)
    qn = zipf_matching_level(50000)
    q_top = math.ceil(3 * qn)
    cd = estimate_curves(zipf, (1, q_top), trials, seed=seed)
    rep = crossover_report(cd)
    checks.append(Check("zipf p_any(1) == 1", cd.p_at(1) == 1.0, f"{cd.p_at(1):.6f}"))
    in_range = [
        s is not None and 1 <= s <= 3 * qn for s in (rep.q_any_star, rep.q_prefix_star)
    ]
    checks.append(
        Check(
            "zipf crossovers in [1, 3 q_n]",
            all(in_range),
            f"any={rep.q_any_star} prefix={rep.q_prefix_star} 3q_n={3 * qn:.3f}",
        )
    )
    checks.append(
        Check("zipf crossover gap <= 4", rep.gap is not None and abs(rep.gap) <= 4, f"gap={rep.gap}")
    )
    p_top = cd.p_at(q_top)
    checks.append(Check(f"zipf p_any({q_top}) <= 0.05", p_top <= 0.05, f"{p_top:.6f}"))

    k = 16
    q, q_prime = hier_matching_levels(k)
    prefix_len = math.floor(q - 2)
    any_len = math.ceil(q_prime + 3)
    cd = estimate_curves(ModelConfig("hier", k=k), (1, k), trials, seed=seed)
    p_pref = cd.p_at(prefix_len, "prefix")
    p_any = cd.p_at(any_len, "any")
    checks.append(Check(f"hier P(prefix >= {prefix_len}) >= 0.99", p_pref >= 0.99, f"{p_pref:.6f}"))
    checks.append(Check(f"hier P(any >= {any_len}) <= 0.05", p_any <= 0.05, f"{p_any:.6f}"))
    return checks


def suite_genericity(seed: int = 11) -> list[Check]:
    rows = genericity_rate(0.5, [10**3, 10**4, 10**5], 10**5, 2000, seed=seed)
    checks = []
    for r in rows:
        checks.append(
            Check(
                f"genericity n={r.n}",
                r.extended_rate >= r.rate and 0 <= r.rate <= 1,
                f"rate={r.rate:.4f} extended={r.extended_rate:.4f} "
                f"dense_prefix={r.dense_prefix_rate:.4f} bound={r.bound:.4f}",
            )
        )
    return checks


def suite_zipflaw(seed: int = 3) -> list[Check]:
    k = 16
    checks = []
    for r in zipf_law_check(k, 2 ** k, seed):
        in_interval = 0.5 <= r.analytic < 1.5
        ok = in_interval and (r.level > 8 or r.deviation <= 0.2)
        checks.append(
            Check(
                f"zipf law level {r.level}",
                ok,
                f"analytic={r.analytic:.6f} empirical={r.empirical:.6f} dev={r.deviation:.4f}",
            )
        )
    return checks


def suite_hierarchy(seed: int = 5) -> list[Check]:
    k = 12
    c = gen_hier_collection(HierParams(k, None, seed))
    bad = sum(not is_valid_hier_document(d, k) for d in c.docs)
    return [Check("hier cell paths k=12", bad == 0 and c.n == 4096, f"{bad} invalid of {c.n}")]


def suite_determinism(seed: int = 99) -> list[Check]:
    config = ModelConfig("zipf", n=2000)
    a = encode_collection(config.collection(seed))
    b = encode_collection(config.collection(seed))
    roundtrip = encode_collection(decode_collection(a)) == a
    serial = estimate_curves(config, (1, 10), 60, seed=seed, threads=1)
    threaded = estimate_curves(config, (1, 10), 60, seed=seed, threads=8)
    return [
        Check("collection bytes reproducible", a == b, f"{len(a)} bytes"),
        Check("collection round-trip", roundtrip),
        Check(
            "curve csv serial == threaded",
            write_curve_csv(serial) == write_curve_csv(threaded),
        ),
        Check(
            "curve svg reproducible",
            render_curve_svg(serial) == render_curve_svg(threaded),
        ),
    ]


SUITES = {
    "oracle": suite_oracle,
    "thresholds": suite_thresholds,
    "genericity": suite_genericity,
    "zipflaw": suite_zipflaw,
    "hierarchy": suite_hierarchy,
    "determinism": suite_determinism,
}


def run_suites(names) -> list[Check]:
    checks = []
    for name in names:
        checks.extend(SUITES[name]())
    return checks
