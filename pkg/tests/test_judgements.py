import math

import pytest

from chances.combinatorics import DomainError
from chances.judgements import (AppealStats, JuryTally, appeal_reversal_rate, appeal_system,
                                bare_majority_rate, cassation_bounds, four_judge_rates,
                                invert_panel, invert_three_judge, jury12_by_category,
                                jury12_hypothesis_A, jury12_hypothesis_B, jury12_rates,
                                laplace_equal_chance, majority_posterior, mixture_corrected_v,
                                opposed_witness, pair_agreement_v, panel_reliability,
                                proportional_courts, solve_four_judges, solve_three_judges,
                                three_judge_reliability, tribunal_reliability, tribunal_tally,
                                unanimous_witnesses, v_from_bare_majority, witness_agreement)

N = 39_424
TALLY = JuryTally(0.619, 0.026)
CATEGORIES = [JuryTally(0.524, 0.032, label="persons"), JuryTally(0.655, 0.024, label="property")]
WEIGHTS = (0.2731, 0.7269)


def test_three_judges_recovered():
    r = solve_three_judges(tribunal_tally(0.7, 0.8, 0.9))
    assert r.feasible
    assert r.v == pytest.approx((0.7, 0.8, 0.9), abs=1e-9)


def test_three_judges_infeasible_tally():
    from chances.judgements import TribunalTally
    r = solve_three_judges(TribunalTally(0.3, 0.3, 0.3))
    assert not r.feasible
    assert r.diagnosis.startswith("independence hypothesis rejected")


def test_four_judges_recovered():
    t = four_judge_rates((0.6, 0.65, 0.7, 0.75))
    assert solve_four_judges(t.a, t.b, t.c, t.d).v == pytest.approx((0.6, 0.65, 0.7, 0.75),
                                                                      abs=1e-9)


def test_equal_chance_from_unanimity():
    assert laplace_equal_chance(0.36) == pytest.approx(0.69149, abs=1e-5)
    with pytest.raises(DomainError):
        laplace_equal_chance(0.2)


def test_reliabilities():
    assert tribunal_reliability(0.7, 0.7, 0.7) == pytest.approx(three_judge_reliability(0.7))
    assert panel_reliability(0.7, 1) == pytest.approx(three_judge_reliability(0.7))
    assert invert_three_judge(three_judge_reliability(0.8)) == pytest.approx(0.8)
    assert invert_panel(panel_reliability(0.7, 3), 3) == pytest.approx(0.7, abs=1e-9)


def test_bare_majority():
    assert v_from_bare_majority(0.48, 3) == pytest.approx((0.2, 0.8))
    assert bare_majority_rate(0.8, 3) == pytest.approx(0.48)
    with pytest.raises(DomainError):
        v_from_bare_majority(0.9, 3)
    assert majority_posterior(0.7, 1) == pytest.approx(0.7)


def test_appeal_forward_map():
    a = appeal_system(v=0.686)
    assert a.V == pytest.approx(0.76613, abs=1e-5)
    assert a.V_prime == pytest.approx(0.85509, abs=1e-5)
    assert a.q == pytest.approx(0.31100, abs=1e-5)
    assert a.confirmed_reliability == pytest.approx(0.9508, abs=1e-4)
    assert a.reversed_reliability == pytest.approx(0.6430, abs=1e-4)
    assert a.q == pytest.approx(appeal_reversal_rate(a.V, a.V_prime))


def test_appeal_inverse():
    assert appeal_system(q=0.3187).v == pytest.approx(0.68136, abs=1e-5)
    with pytest.raises(DomainError):
        appeal_system(q=0.6)


def test_cassation_bounds():
    b = cassation_bounds(AppealStats(q_prime=0.467, q_dprime=0.202))
    assert b.V == pytest.approx((0.533, 0.62845), abs=1e-5)
    assert b.V_prime == pytest.approx((0.798, 0.88601), abs=1e-5)
    assert b.V_dprime_min == pytest.approx(0.88601, abs=1e-5)
    assert b.V_refined == pytest.approx((0.533, 0.54275), abs=1e-5)
    assert b.v_refined == pytest.approx((0.52201, 0.52853), abs=1e-5)


def test_proportional_courts_overflow():
    V, Vp, v = proportional_courts(0.3187)
    assert V == pytest.approx(0.6762, abs=1e-4)
    assert Vp > 1
    assert v == pytest.approx(0.6198, abs=1e-4)


def test_jury_forward_rates_round_trip():
    c1, c2, a = jury12_rates(0.653328, 0.816593, 1.0)
    r = jury12_hypothesis_A(JuryTally(c1, c2))
    assert r.v1 == pytest.approx(0.816593, abs=1e-6)
    assert r.k1 == pytest.approx(0.653328, abs=1e-6)


def test_jury_hypothesis_A():
    r = jury12_hypothesis_A(TALLY, N)
    assert (r.v1, r.V1, r.k1) == pytest.approx((0.81659, 0.98725, 0.65333), abs=1e-5)
    assert r.P == pytest.approx(328.33, abs=0.01)
    assert jury12_hypothesis_A(TALLY, N, digits=3).P == pytest.approx(334.67, abs=0.01)


def test_jury_hypothesis_B():
    r = jury12_hypothesis_B(TALLY, N)
    assert (r.v, r.k1, r.V2) == pytest.approx((0.81789, 0.65226, 0.99778), abs=1e-5)
    assert r.Q == pytest.approx(30.46, abs=0.01)
    assert jury12_hypothesis_B(TALLY, N, digits=3).Q == pytest.approx(41.16, abs=0.01)
    assert jury12_hypothesis_B(TALLY, N, drop_term=True).Q == pytest.approx(30.57, abs=0.01)


def test_jury_by_category():
    r = jury12_by_category(CATEGORIES, WEIGHTS, N)
    persons, prop = r.per_category
    assert (persons.v1, persons.V1, persons.k1) == pytest.approx((0.79636, 0.97885, 0.56801),
                                                                  abs=1e-5)
    assert (prop.v1, prop.V1, prop.k1) == pytest.approx((0.82331, 0.98940, 0.68628), abs=1e-5)
    assert (r.v1, r.k1) == pytest.approx((0.81595, 0.65398), abs=1e-5)
    assert r.P_total == pytest.approx(337.9, abs=0.1)
    rounded = jury12_by_category(CATEGORIES, WEIGHTS, N, digits=3, rounding="round")
    assert rounded.P_total == pytest.approx(344.67, abs=0.01)
    assert rounded.P_parts == pytest.approx((128.4, 216.2), abs=0.1)


def test_category_weights_validated():
    with pytest.raises(DomainError):
        jury12_by_category(CATEGORIES, (0.5, 0.6))


def test_observers_and_witnesses():
    assert pair_agreement_v(1.0) == 1.0
    assert mixture_corrected_v(pooled_v=0.9)["lower_bound"] == pytest.approx(0.81225, abs=1e-5)
    mix = mixture_corrected_v(ps=(0.9, 0.6), ks=(0.5, 0.5))
    assert mix["v"] < mix["pooled_v"]
    w = witness_agreement(0.9, 0.8)
    assert w["p_agree"] + w["q_disagree"] == pytest.approx(1.0)
    assert unanimous_witnesses([0.9, 0.8]) == pytest.approx(w["V_truth_given_agree"])
    assert opposed_witness(0.8, 0.7, 0.7) == pytest.approx(0.8)
