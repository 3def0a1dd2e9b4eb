from fractions import Fraction as F

import pytest

from chances.combinatorics import DomainError
from chances.repetition_laws import (RepeatedTrial, SmallSampleWarning, UrnWithoutReplacement,
                                     binomial_pmf, binomial_tail, central_mass,
                                     corrected_interval_probability, deviation_limit,
                                     hypergeometric_pmf, hypergeometric_tail,
                                     interval_probability_exact, largest_term_index,
                                     repeat_until_even_odds)


def test_two_or_more_in_four():
    assert binomial_tail(RepeatedTrial(4, F(1, 6)), 2, exact=True) == F(171, 1296)


def test_even_odds_for_double_six():
    m, bet = repeat_until_even_odds(1 / 36)
    assert m == pytest.approx(24.6, abs=0.05)
    assert bet == 25


def test_central_masses_exact():
    assert float(central_mass(RepeatedTrial(90, F(2, 3)), 2, exact=True)) == pytest.approx(
        0.423571, abs=1e-6)
    assert float(central_mass(RepeatedTrial(100, F(1, 2)), 3, exact=True)) == pytest.approx(
        0.5158816, abs=1e-7)


def test_pmf_sums_to_one_exactly():
    trial = RepeatedTrial(30, F(2, 7))
    assert sum(binomial_pmf(trial, n, exact=True) for n in range(31)) == 1


def test_largest_term_tie_when_mp_plus_p_integral():
    assert largest_term_index(RepeatedTrial(5, F(1, 2))) == (2, True)
    assert largest_term_index(RepeatedTrial(90, F(2, 3)))[0] == 60


def test_window_forty_to_sixty():
    exact = float(binomial_tail(RepeatedTrial(100, F(1, 2)), 40, 60, exact=True))
    assert exact == pytest.approx(0.9648, abs=1e-4)


def test_hypergeometric_examples():
    assert float(hypergeometric_tail(UrnWithoutReplacement(240, 219, 30), 26)) == pytest.approx(
        0.000049547, abs=1e-9)
    assert float(hypergeometric_pmf(UrnWithoutReplacement(30, 6, 12), 12)) == pytest.approx(
        0.069102, abs=1e-6)


def test_hypergeometric_infeasible_is_zero():
    assert hypergeometric_pmf(UrnWithoutReplacement(3, 2, 4), 0) == 0


@pytest.mark.parametrize("m, kw, lo, hi", [
    (9000, {"P": 0.5}, 5970, 6030),
    (9_000_000, {"P": 0.5}, 5_999_047, 6_000_953),
    (9_000_000, {"t": 2.0}, 5_996_000, 6_004_000),
    (9_000_000, {"t": 2.87}, 5_994_260, 6_005_740),
])
def test_count_windows(m, kw, lo, hi):
    w = deviation_limit(RepeatedTrial(m, F(2, 3)), **kw)
    assert w.lo == pytest.approx(lo, abs=2)
    assert w.hi == pytest.approx(hi, abs=2)


def test_deviation_limit_needs_one_argument():
    with pytest.raises(DomainError):
        deviation_limit(RepeatedTrial(1000, 0.5))


def test_small_sample_warns():
    with pytest.warns(SmallSampleWarning):
        deviation_limit(RepeatedTrial(20, 0.5), P=0.5)


def test_corrected_probability_close_to_exact():
    trial = RepeatedTrial(2000, F(1, 2))
    main, corr = corrected_interval_probability(trial, 0.02)
    exact = float(interval_probability_exact(trial, 0.02))
    assert abs(corr - exact) < abs(main - exact)
