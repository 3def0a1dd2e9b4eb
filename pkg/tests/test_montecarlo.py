import numpy as np
import pytest

from chances.combinatorics import DomainError
from chances.distribution_summaries import bienayme_series_limit
from chances.montecarlo import (SimulationConfig, coverage, simulate_scheme, simulate_values,
                                strategy_invariance)


def test_seed_determinism():
    cfg = SimulationConfig(5, 70_000, "binomial", {"m": 100, "p": 0.3})
    assert np.array_equal(simulate_values(cfg), simulate_values(cfg))


def test_worker_count_independence():
    cfg = SimulationConfig(11, 300_000, "sphere", {"angle": "theta"})
    assert simulate_scheme(cfg, 1) == simulate_scheme(cfg, 8)


def test_strategy_worker_independence():
    assert strategy_invariance(3, 150_000, "first_win", workers=1) == \
        strategy_invariance(3, 150_000, "first_win", workers=8)


def test_urn_each_trial_rate():
    r = simulate_scheme(SimulationConfig(1, 200, "urn_each_trial",
                                         {"ps": (0.4, 0.6), "ks": (0.5, 0.5), "m": 1_000_000}))
    assert abs(r.mean - 0.5) <= 3 * r.sd


def test_series_urn_median_matches_analytic_limit():
    ps, ks = (0.4, 0.6), (0.5, 0.5)
    r = simulate_scheme(SimulationConfig(79, 200_000, "urn_series",
                                         {"ps": ps, "ks": ks, "m": 10_000, "m1": 100}))
    assert r.median_abs_dev == pytest.approx(bienayme_series_limit(ps, ks, 10_000, 100, 0.5),
                                             rel=0.03)


def test_jury_rates_forward():
    r = simulate_scheme(SimulationConfig(12, 2_000_000, "jury12", {"k1": 0.653, "v1": 0.816}))
    assert r.extra["c1"] == pytest.approx(0.619, abs=2e-3)
    assert r.extra["c2"] == pytest.approx(0.026, abs=1e-3)


def test_sphere_mean():
    r = simulate_scheme(SimulationConfig(151, 1_000_000, "sphere", {"angle": "t1"}))
    assert r.mean == pytest.approx(np.degrees(1.0), abs=0.05)


def test_ruin_simulation():
    r = simulate_scheme(SimulationConfig(4, 20_000, "ruin", {"alpha": 50, "n": 1000}))
    assert r.mean == pytest.approx(0.1138, abs=3 * r.se)


def test_coverage_of_binomial_window():
    from fractions import Fraction
    from chances.repetition_laws import RepeatedTrial, deviation_limit
    w = deviation_limit(RepeatedTrial(10_000, Fraction(1, 2)), P=0.9)
    cfg = SimulationConfig(8, 100_000, "binomial", {"m": 10_000, "p": 0.5})
    # continuous window on a lattice: compare with the exact lattice mass
    from chances.repetition_laws import binomial_tail
    import math
    P = float(binomial_tail(RepeatedTrial(10_000, 0.5), math.ceil(w.lo), math.floor(w.hi)))
    assert coverage(cfg, w.lo, w.hi, P)["ok"]


@pytest.mark.parametrize("rule", ["first_win", "martingale"])
def test_strategies_are_fair(rule):
    r = strategy_invariance(21, 400_000, rule)
    assert abs(r.mean) <= 3 * r.se


def test_immediate_stop_is_exactly_zero():
    r = strategy_invariance(1, 1000, "immediate")
    assert r.mean == 0.0 and r.se == 0.0


def test_sketch_above_exact_limit_agrees(monkeypatch):
    import chances.montecarlo as mc
    cfg = SimulationConfig(9, 200_000, "sphere", {"angle": "theta"})
    exact = simulate_scheme(cfg)
    monkeypatch.setattr(mc, "EXACT_LIMIT", 1000)
    sketch = simulate_scheme(cfg)
    assert not sketch.exact_order_stats
    assert sketch.mean == pytest.approx(exact.mean, rel=1e-9)
    assert sketch.quantiles["0.5"] == pytest.approx(exact.quantiles["0.5"], abs=0.01)


def test_unknown_scheme_rejected():
    with pytest.raises(DomainError):
        SimulationConfig(1, 10, "nope")
    with pytest.raises(DomainError):
        strategy_invariance(1, 10, "nope")
