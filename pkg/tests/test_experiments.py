import math

import pytest

from maxint.experiments import (
    TrialMaxima,
    accuracy_experiment,
    crossover_report,
    curves_from_maxima,
    estimate_curves,
    find_crossover,
    genericity_rate,
    theory_bounds_hier,
    zipf_law_check,
)
from maxint.models import ModelConfig


def test_find_crossover_examples():
    assert find_crossover([(1, 1.0), (2, 1.0), (3, 0.8), (4, 0.3)]) == 4
    assert find_crossover([(1, 1.0), (2, 0.5)]) is None
    assert find_crossover([(1, 0.2)]) == 1


def test_curves_from_maxima_counts():
    maxima = [TrialMaxima(3, 2, 1), TrialMaxima(5, 5, 4), TrialMaxima(1, 0, 0)]
    cd = curves_from_maxima(ModelConfig("zipf", n=10), maxima, range(0, 7), "shared", 0)
    assert cd.hits_any == (3, 3, 2, 2, 1, 1, 0)
    assert cd.hits_prefix == (3, 2, 2, 1, 1, 1, 0)
    assert cd.hits_lcp == (3, 2, 1, 1, 1, 0, 0)
    assert cd.p_any[2] == pytest.approx(2 / 3)


@pytest.mark.parametrize("mode", ["shared", "fresh_per_trial"])
def test_curve_invariants_zipf(mode):
    cd = estimate_curves(ModelConfig("zipf", n=2000), (1, 12), 60, mode=mode, seed=3)
    assert cd.p_any[0] == 1.0
    for ps in (cd.p_any, cd.p_prefix, cd.p_lcp):
        assert list(ps) == sorted(ps, reverse=True)
        assert all(0 <= p <= 1 for p in ps)
    assert all(l <= p <= a for a, p, l in zip(cd.p_any, cd.p_prefix, cd.p_lcp))
    assert cd.mode == mode


def test_curve_zero_beyond_k_hier():
    k = 6
    cd = estimate_curves(ModelConfig("hier", k=k), (1, k + 3), 40, seed=1)
    assert cd.p_any[k:] == [0.0, 0.0, 0.0]
    # 64 documents each hit a given level-1 term with prob 1/6
    assert cd.p_prefix[0] >= 0.9


def test_curve_deterministic_and_thread_independent():
    cfg = ModelConfig("hier", k=8)
    a = estimate_curves(cfg, (1, 8), 50, seed=5, threads=1)
    b = estimate_curves(cfg, (1, 8), 50, seed=5, threads=4)
    assert a == b
    assert estimate_curves(cfg, (1, 8), 50, seed=6) != a


def test_curve_regression_zipf_50000():
    # Pinned from the first run: n = m = 50000, shared collection, 300 trials, seed 42.
    cd = estimate_curves(ModelConfig("zipf", n=50000), (1, 14), 300, seed=42)
    assert cd.hits_any == (300, 300, 299, 282, 185, 93, 17, 1, 0, 0, 0, 0, 0, 0)
    assert cd.hits_prefix == (300, 300, 299, 275, 170, 68, 8, 0, 0, 0, 0, 0, 0, 0)
    assert cd.hits_lcp == (300, 299, 288, 214, 102, 23, 2, 0, 0, 0, 0, 0, 0, 0)
    assert cd.p_at(14) == 0.0
    rep = crossover_report(cd)
    assert (rep.q_any_star, rep.q_prefix_star, rep.gap) == (6, 6, 0)
    assert rep.theory_q == pytest.approx(math.sqrt(2 * math.log(50000)))


def test_accuracy_experiment():
    s = accuracy_experiment(ModelConfig("zipf", n=10**4), 200, seed=7)
    assert all(0 < r <= 1 for r in s.ratios)
    # Pinned from the first run.
    assert s.mean == pytest.approx(0.8168095238095238, abs=1e-12)
    assert s.exact_fraction == pytest.approx(0.3)
    assert s.quantiles[0.0] <= s.quantiles[0.5] <= s.quantiles[1.0] == 1.0


def test_accuracy_exact_for_stored_queries():
    cfg = ModelConfig("zipf", n=300)
    c = cfg.collection(1)
    from maxint.index import build_prefix_index, query_max_lcp

    idx = build_prefix_index(c)
    for d in c.docs[:50]:
        match, _ = query_max_lcp(idx, d)
        assert match.intersection == len(d)


def test_genericity_rate():
    rows = genericity_rate(0.5, [10**3, 10**5], 10**5, 300, seed=1)
    for r in rows:
        assert 0 <= r.rate <= r.extended_rate <= 1
        assert 0 <= r.dense_prefix_rate <= 1
    # Same bound value as the mpmath evaluation in test_models.
    assert rows[1].bound == pytest.approx(-5.32428472457494400, rel=1e-12)
    assert rows[1].inserted == math.ceil(0.5 * math.sqrt(2 * math.log(10**5)))


def test_zipf_law_check_small():
    reports = zipf_law_check(8, seed=2)
    assert [r.level for r in reports] == list(range(1, 9))
    assert reports[0].analytic == 0.5
    assert all(0.5 <= r.analytic < 1.5 for r in reports)
    assert all(r.deviation == pytest.approx(abs(r.empirical - r.analytic)) for r in reports)


def test_zipf_law_level_one_exact():
    # Level-1 terms are found in every document once, so their mean count is
    # n / k and their ranks are 1..k: the product is (k + 1) / (2k).
    k = 10
    r = zipf_law_check(k, n=3000, seed=4)[0]
    assert r.empirical == pytest.approx((k + 1) / (2 * k))


def test_theory_bounds_hier():
    pre, anyb = theory_bounds_hier(16, 2)
    assert pre == 1.0  # 1 - 2^-1024 rounds to one
    assert anyb == pytest.approx(2 / 16)
    assert theory_bounds_hier(16, 3)[1] == pytest.approx(2 / 256)
