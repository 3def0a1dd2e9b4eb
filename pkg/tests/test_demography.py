import math

import numpy as np
import pytest

from chances.combinatorics import DomainError
from chances.demography import (LifeTable, combine_causes, deaths_by_age, delete_cause,
                                exponential_table, mean_life, probable_life, sex_ratio_report,
                                standard_ages, stationary_population, synthetic_life_table,
                                yearly_danger)
from chances.inference import BinomialSeries

SCHEMATIC = LifeTable.from_counts([0, 21, 22, 65], [10_000, 6_000, 5_900, 3_000])


def test_exponential_table():
    t = exponential_table(0.01)
    assert mean_life(t) == pytest.approx(100.0, rel=1e-6)
    assert probable_life(t) == pytest.approx(math.log(2) / 0.01, rel=1e-6)
    assert yearly_danger(t, 30) == pytest.approx(1 - math.exp(-0.01), rel=1e-9)


def test_schematic_counts():
    assert yearly_danger(SCHEMATIC, 21) == pytest.approx(100 / 6000, abs=1e-15)
    assert probable_life(SCHEMATIC, 21) == pytest.approx(44.0, abs=1e-9)


def test_linear_survival():
    t = LifeTable([0, 100], [1, 0])
    assert mean_life(t) == pytest.approx(50.0, abs=0.01)
    assert probable_life(t) == pytest.approx(50.0, abs=1e-9)


def test_remaining_life_peaks_in_childhood():
    t = synthetic_life_table()
    grid = np.arange(0, 15, 0.01)
    best = grid[np.argmax([mean_life(t, x) for x in grid])]
    assert 5.0 <= best <= 6.0


def test_grid_is_monthly_then_yearly():
    a = standard_ages()
    assert a[1] == pytest.approx(1 / 12)
    assert np.allclose(np.diff(a[a >= 1]), 1.0)


def test_deaths_sum_to_births():
    for t in (synthetic_life_table(), exponential_table(0.03), SCHEMATIC):
        assert deaths_by_age(t, 1000.0).sum() == pytest.approx(1000.0, rel=1e-12)


def test_stationary_identities():
    t = synthetic_life_table()
    pop = stationary_population(t, 1000.0)
    assert pop.total == pytest.approx(1000.0 * mean_life(t), rel=1e-9)
    assert t.integral(0.0, pop.median_age) == pytest.approx(0.5 * t.integral(0.0), rel=1e-9)


def test_cause_deletion_inverts_combination():
    base = synthetic_life_table()
    cause = exponential_table(0.002, base.ages)
    both = combine_causes(base, cause)
    back = delete_cause(both, cause)
    assert np.allclose(back.F, base.F, atol=1e-12)
    assert mean_life(back) > mean_life(both)


def test_delete_cause_rejects_inconsistent_tables():
    with pytest.raises(DomainError):
        delete_cause(exponential_table(0.01), exponential_table(0.05))


def test_table_validation():
    with pytest.raises(DomainError):
        LifeTable([0, 1], [1.0, 1.2])
    with pytest.raises(DomainError):
        LifeTable([1, 2], [1.0, 0.5])
    with pytest.raises(DomainError):
        yearly_danger(SCHEMATIC, 65)


def test_sex_ratio_unit():
    rep = sex_ratio_report([BinomialSeries(23_215_333, 11_962_811)], unit_m=11255, p=0.51541)
    assert rep.weight == pytest.approx(6817.197, abs=1e-3)
    assert rep.unit_t == pytest.approx(2.31311, abs=1e-5)
    assert rep.unit_P == pytest.approx(0.998929, abs=1e-6)
    assert rep.reversal == pytest.approx(0.000535, abs=1e-6)


def test_sex_ratio_comparisons_per_series():
    s = [BinomialSeries(100_000, 51_500, "a"), BinomialSeries(120_000, 61_600, "b")]
    rep = sex_ratio_report(s)
    assert len(rep.comparisons) == 2
    assert rep.expected_reversals == pytest.approx(2 * rep.reversal)
