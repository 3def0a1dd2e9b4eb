import math

import numpy as np
import pytest

from chances.combinatorics import DomainError
from chances.datasets import load_cavendish, load_dumas
from chances.error_combination import (ConditionRow, MeasurementSeries, SingularSystemError,
                                       combine_weighted_means, cotes_estimate,
                                       heteroscedastic_ls_single, laplace_ls_single,
                                       least_squares_multi, numeric_sensitivities,
                                       propagate_linear)
from chances.inference import empirical_modulus


def test_cavendish_weight():
    x = load_cavendish()
    e = empirical_modulus(x)
    assert x.size == 29
    assert e.M == pytest.approx(5.48241, abs=1e-5)
    assert e.sum_sq == pytest.approx(1.19653, abs=1e-5)
    assert e.weight == pytest.approx(18.745, abs=0.01)


def test_dumas_pooled_weight_and_probability():
    d = load_dumas()
    assert {k: v.size for k, v in d.items()} == {"sulphuric": 10, "phosphoric": 9}
    e = empirical_modulus(np.concatenate(list(d.values())))
    t, P = e.probability(0.015)
    assert e.weight == pytest.approx(102.145, abs=0.01)
    assert t == pytest.approx(1.532, abs=1e-3)
    assert P == pytest.approx(0.969, abs=1e-3)


def test_dumas_methods_difference_is_fortuitous():
    from chances.inference import EmpiricalSeries, compare_two_means
    d = load_dumas()
    r = compare_two_means(EmpiricalSeries(d["sulphuric"]), EmpiricalSeries(d["phosphoric"]))
    assert r.Pi < 0.9


def test_least_squares_beats_grid():
    rows = [ConditionRow(1, 1), ConditionRow(2, 1), ConditionRow(3, 2)]
    fit = laplace_ls_single(rows)
    grid = np.arange(-2, 2, 1e-4)
    sse = ((np.outer(grid, [1, 2, 3]) - [1, 1, 2]) ** 2).sum(axis=1)
    assert fit.x == pytest.approx(9 / 14, abs=1e-12)
    assert abs(fit.x - grid[np.argmin(sse)]) <= 1e-4
    assert fit.residual <= sse.min()


def test_cotes_estimate_is_ratio_of_sums():
    rows = [ConditionRow(1, 1), ConditionRow(2, 1), ConditionRow(3, 2)]
    assert cotes_estimate(rows) == pytest.approx(4 / 6)


def test_asymmetric_error_voids_limit():
    rows = [ConditionRow(1, 1), ConditionRow(2, 2.1)]
    assert laplace_ls_single(rows, gamma=1.0, symmetric=False).limit is None


def test_heteroscedastic_equal_moduli_matches_plain():
    rows = [ConditionRow(c, d) for c, d in ((1, 1.1), (2, 1.9), (3, 3.2))]
    a = heteroscedastic_ls_single(rows, [2.0, 2.0, 2.0])
    assert a.x == pytest.approx(laplace_ls_single(rows).x)


def test_multi_unknown_solution():
    rows = [ConditionRow((1, 0), 1), ConditionRow((0, 1), 2), ConditionRow((1, 1), 3)]
    fit = least_squares_multi(rows)
    assert np.allclose(fit.x, [1, 2])
    assert fit.residual == pytest.approx(0.0, abs=1e-20)


def test_singular_system_detected():
    rows = [ConditionRow((1, 2), 1), ConditionRow((2, 4), 2)]
    with pytest.raises(SingularSystemError):
        least_squares_multi(rows)


def test_weighted_means():
    a = MeasurementSeries([1.0, 1.2, 0.8], gamma=2.0)
    b = MeasurementSeries([2.0, 2.0], gamma=1.0)
    wm = combine_weighted_means([a, b])
    assert wm.mean == pytest.approx((12 * 1.0 + 2 * 2.0) / 14)
    assert wm.limit(0.5) == pytest.approx(0.476936 / math.sqrt(14), abs=1e-6)


def test_weighted_means_void_under_constant_error():
    a = MeasurementSeries([1.0, 1.2], gamma=2.0, symmetric=False)
    with pytest.raises(DomainError):
        combine_weighted_means([a]).limit(0.5)


def test_error_propagation():
    assert propagate_linear([3.0, 4.0], [1.0, 1.0]) == pytest.approx(5.0)
    g = numeric_sensitivities(lambda x, y: x * y, [2.0, 3.0], [1e-7, 1e-7])
    assert np.allclose(g, [3.0, 2.0], atol=1e-6)


def test_empty_rows_rejected():
    with pytest.raises(DomainError):
        ConditionRow(0.0, 1.0)
