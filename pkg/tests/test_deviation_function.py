import numpy as np
import pytest

from chances.combinatorics import DomainError
from chances.deviation_function import (LANDMARKS, T_HALF, correction_term, emit_table,
                                        p_corrected, p_of_t, t_of_p, table_rows)


def test_p_at_three():
    assert p_of_t(3.0) == pytest.approx(0.999978, abs=1e-6)


def test_t_at_one_half():
    assert t_of_p(0.5) == pytest.approx(0.476937, abs=1e-6)
    assert T_HALF == t_of_p(0.5)


def test_landmark_ratio_near_six():
    assert LANDMARKS["t_19999_20000"] / LANDMARKS["t_half"] == pytest.approx(6.0, rel=0.01)


def test_array_inputs():
    t = np.array([0.0, 1.0, 2.0])
    assert np.allclose(t_of_p(p_of_t(t)), t)


def test_domain_errors():
    with pytest.raises(DomainError):
        p_of_t(-0.1)
    with pytest.raises(DomainError):
        t_of_p(1.0)
    with pytest.raises(DomainError):
        correction_term(1.0, 100, 0.0)


def test_corrected_window_value():
    # 21 central terms of 100 fair trials, half-width taken at the outer half-units
    t = 10.0 / np.sqrt(50.0)
    assert p_corrected(t, 100, 0.5) == pytest.approx(0.9653, abs=1e-4)


def test_table_shape_and_rounding():
    tab = emit_table(0.01, 3.0)
    assert tab.shape == (301, 2)
    assert tab[-1, 1] == 0.999978
    rows = list(table_rows(0.5, 1.0))
    assert rows == ["t,P", "0.00,0.000000", "0.50,0.520500", "1.00,0.842701"]
