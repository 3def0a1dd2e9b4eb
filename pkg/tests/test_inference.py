import math
from fractions import Fraction

import numpy as np
import pytest

from chances.combinatorics import DomainError
from chances.inference import (BinomialSeries, EmpiricalSeries, SmallSampleWarning,
                               bayes_discrete, chance_interval, chance_interval_probability,
                               compare_categories, compare_mean_with_total, compare_two_means,
                               compare_two_series, compare_with_fixed, empirical_modulus,
                               partial_vs_total, predict_future_ratio, probability_table,
                               solidarity_test, succession_rule, trimmed_usual_value,
                               weight_of_chance)

FRANCE = BinomialSeries(23_215_333, 11_962_811, "France")


def test_weight_of_large_series():
    assert weight_of_chance(FRANCE) == pytest.approx(6817.197, abs=1e-3)


def test_chance_interval_round_trip():
    s = BinomialSeries(5000, 2600)
    l = chance_interval(s, 0.9)
    t, P = chance_interval_probability(s, l)
    assert P == pytest.approx(0.9, abs=1e-12)


def test_future_series_ratio_root_two():
    s = BinomialSeries(20_000, 9_000)
    assert predict_future_ratio(s, s.m, 0.5) / chance_interval(s, 0.5) == pytest.approx(
        math.sqrt(2), rel=1e-12)


def test_future_series_limit_tends_to_current_interval():
    s = BinomialSeries(20_000, 9_000)
    assert predict_future_ratio(s, 10**12, 0.5) == pytest.approx(chance_interval(s, 0.5), rel=1e-6)


def test_two_series_comparison_birth_records():
    r = compare_two_series(BinomialSeries(22_263_015, 11_473_437),
                           BinomialSeries(952_318, 489_374))
    assert r.t == pytest.approx(2.003632, abs=1e-6)
    assert r.P == pytest.approx(0.995397, abs=1e-6)
    assert r.Pi == pytest.approx((1 + r.P) / 2)


def test_comparison_sign_and_caveat():
    r = compare_two_series(BinomialSeries(1000, 400), BinomialSeries(1000, 500))
    assert r.delta < 0 and r.Pi == pytest.approx((1 - r.P) / 2)
    assert "before looking" in r.caveat


def test_comparison_warns_on_small_counts():
    with pytest.warns(SmallSampleWarning):
        r = compare_two_series(BinomialSeries(50, 20), BinomialSeries(60, 30))
    assert r.warnings


def test_degenerate_series_rejected():
    with pytest.raises(DomainError):
        chance_interval(BinomialSeries(100, 0), 0.5)


def test_compare_categories_is_symmetric():
    a, b = BinomialSeries(3000, 1600), BinomialSeries(5000, 2500)
    assert compare_categories(a, b).t == pytest.approx(compare_categories(b, a).t)


def test_compare_with_fixed_limit():
    s = BinomialSeries(10_000, 5_150)
    fixed = compare_with_fixed(s, 0.5)
    big = compare_two_series(s, BinomialSeries(10**12, 5 * 10**11))
    assert fixed.t == pytest.approx(big.t, rel=1e-5)


def test_partial_vs_total_shrinks_to_zero_as_part_grows():
    total = BinomialSeries(100_000, 51_000)
    widths = [partial_vs_total(BinomialSeries(m1, 0), total, 0.5) for m1 in (1000, 50_000, 99_000)]
    assert widths[0] > widths[1] > widths[2]


def test_empirical_modulus_forms_agree():
    x = np.random.default_rng(0).normal(size=200)
    e = empirical_modulus(x)
    assert np.allclose(e.forms, e.gamma, rtol=1e-9)
    assert e.weight == pytest.approx(e.gamma * math.sqrt(200))


def test_empirical_modulus_constant_series():
    e = empirical_modulus([1.0, 1.0, 1.0])
    assert e.infinite


def test_compare_two_means_printed_form_equal_sizes():
    a = EmpiricalSeries([1.0, 2.0, 3.0, 4.0])
    b = EmpiricalSeries([2.0, 2.5, 3.5, 5.0])
    assert compare_two_means(a, b).t == pytest.approx(compare_two_means(a, b, True).t)


def test_compare_two_means_unequal_sizes_differ():
    a = EmpiricalSeries([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    b = EmpiricalSeries([2.0, 2.2, 2.9])
    assert compare_two_means(a, b).t != pytest.approx(compare_two_means(a, b, True).t)


def test_mean_with_total():
    total = EmpiricalSeries(np.arange(100.0))
    part = EmpiricalSeries(np.arange(10.0))
    assert compare_mean_with_total(part, total, 0.5) > 0


def test_bayes_and_succession():
    post = bayes_discrete([Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 3), Fraction(2, 3)])
    assert post == [Fraction(1, 3), Fraction(2, 3)]
    s = succession_rule(10, 10)
    assert s.mean == Fraction(11, 12)


def test_trimmed_value_and_probability_table():
    x = [1, 2, 3, 4, 100]
    assert trimmed_usual_value(x, 1) == pytest.approx(3.0)
    tab = probability_table(np.linspace(0, 1, 101), 4)
    assert sum(tab.counts) == 101


def test_solidarity_flags_trend():
    trend = np.linspace(0, 1, 200) + np.random.default_rng(3).normal(0, 0.05, 200)
    noise = np.random.default_rng(3).normal(size=200)
    assert solidarity_test(trend, seed=1).verdict == "solidarity suspected"
    assert solidarity_test(noise, seed=1).verdict == "no solidarity detected"
