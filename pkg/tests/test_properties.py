"""Property tests for the listed invariants of each module."""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from chances.combinatorics import binomial, factorial, stirling_log10_factorial
from chances.deviation_function import p_of_t, t_of_p
from chances.distribution_summaries import (difference_of_uniforms_law, latitude_law, linear_law,
                                           mixture_modulus, quadratic_law, sum_of_uniforms_law,
                                           summarize, two_point_law, uniform_law)
from chances.error_combination import (ConditionRow, cotes_estimate, cotes_weight,
                                       laplace_ls_single, least_squares_multi, propagate_linear)
from chances.games import GameSpec, RuinSpec, punter_limits, ruin_probability
from chances.inference import BinomialSeries, compare_two_series, empirical_modulus
from chances.insurance import (Portfolio, aggregate_loss_limits, bienayme_allocation,
                               poisson_tail, union_benefit)
from chances.judgements import (jury12_rates, mixture_corrected_v, solve_three_judges,
                                three_judge_reliability, tribunal_tally)
from chances.repetition_laws import (RepeatedTrial, UrnWithoutReplacement, binomial_pmf,
                                     hypergeometric_pmf)

fast = settings(max_examples=60, deadline=None)
chance = st.floats(0.02, 0.98)


@fast
@given(st.integers(1, 60).flatmap(lambda m: st.tuples(st.just(m), st.integers(1, m))))
def test_pascal_and_symmetry(mn):
    m, n = mn
    above = binomial(m - 1, n) if n < m else 0
    assert binomial(m, n) == binomial(m - 1, n - 1) + above
    assert binomial(m, n) == binomial(m, m - n) >= 0


@fast
@given(st.integers(1, 60))
def test_binomial_row_sums(m):
    row = [binomial(m, n) for n in range(m + 1)]
    assert sum(row) == 2**m
    assert sum(row[1::2]) == 2 ** (m - 1)
    assert sum(row[2::2]) == 2 ** (m - 1) - 1


@fast
@given(st.integers(10, 400))
def test_stirling_agrees_with_exact(x):
    exact = math.log10(factorial(x)) if x < 170 else math.lgamma(x + 1) / math.log(10)
    assert abs(stirling_log10_factorial(x) - exact) <= 1e-6


@fast
@given(st.floats(0.0, 3.0))
def test_deviation_round_trip(t):
    assume(t > 0.01)
    assert t_of_p(p_of_t(t)) == pytest.approx(t, abs=1e-8)


@fast
@given(st.floats(0.0, 3.0), st.floats(1e-3, 1.0))
def test_deviation_monotone(t, dt):
    # beyond t near 5.9 the double nearest P(t) is 1.0
    assert 0 <= p_of_t(t) < p_of_t(t + dt) < 1


@fast
@given(st.integers(1, 60), st.fractions(0, 1, max_denominator=50))
def test_binomial_pmf_sums_to_one_exactly(m, p):
    trial = RepeatedTrial(m, p)
    assert sum(binomial_pmf(trial, n, exact=True) for n in range(m + 1)) == 1


@fast
@given(st.integers(0, 20), st.integers(0, 20), st.data())
def test_hypergeometric_sums_to_one(a, b, data):
    m = data.draw(st.integers(0, a + b))
    urn = UrnWithoutReplacement(a, b, m)
    assert sum(hypergeometric_pmf(urn, n) for n in range(m + 1)) == Fraction(1)


def _quad_variance(model):
    mean = integrate.quad(lambda x: x * model.pdf(x), model.a, model.b)[0]
    return integrate.quad(lambda x: (x - mean) ** 2 * model.pdf(x), model.a, model.b)[0]


@pytest.mark.parametrize("law", [uniform_law, linear_law, quadratic_law, latitude_law,
                                 difference_of_uniforms_law, sum_of_uniforms_law])
def test_builtin_modulus_matches_quadrature(law):
    model = law()
    for closed in (True, False):
        g = summarize(model, closed_form=closed).modulus
        assert 1 / g**2 == pytest.approx(2 * _quad_variance(model), rel=1e-9)


@fast
@given(st.floats(-5, 5), st.floats(0.1, 5))
def test_uniform_modulus_identity(a, w):
    model = uniform_law(a, a + w)
    g = summarize(model).modulus
    assert 1 / g**2 == pytest.approx(2 * _quad_variance(model), rel=1e-9)


@fast
@given(st.floats(-5, 5), st.floats(0.1, 5))
def test_two_point_modulus_is_minimal(a, w):
    s = summarize(two_point_law(a, a + w))
    assert s.modulus == pytest.approx(math.sqrt(2) / w, rel=1e-9)


@fast
@given(st.lists(st.tuples(st.floats(-3, 3), st.floats(0.2, 3)), min_size=2, max_size=4),
       st.data())
def test_mixture_modulus_bound(parts, data):
    ks = np.array(data.draw(st.lists(st.floats(0.05, 1), min_size=len(parts),
                                     max_size=len(parts))))
    ks = ks / ks.sum()
    sums = [summarize(uniform_law(a, a + w)) for a, w in parts]
    g = mixture_modulus(ks, sums)
    assert 1 / g >= sum(k / s.modulus for k, s in zip(ks, sums)) - 1e-12


@pytest.mark.filterwarnings("ignore::chances.repetition_laws.SmallSampleWarning")
@fast
@given(st.integers(200, 5000), chance, st.integers(200, 5000), chance)
def test_two_series_symmetry(m1, r1, m2, r2):
    s1, s2 = BinomialSeries(m1, round(r1 * m1)), BinomialSeries(m2, round(r2 * m2))
    assume(0 < s1.n < m1 and 0 < s2.n < m2)
    a, b = compare_two_series(s1, s2), compare_two_series(s2, s1)
    assert a.delta == pytest.approx(-b.delta, abs=1e-15)
    assert a.P == pytest.approx(b.P, abs=1e-12)
    assert 0 <= a.Pi <= 1


@fast
@given(st.lists(st.floats(-100, 100), min_size=3, max_size=200))
def test_modulus_forms_agree(xs):
    # the mean-of-squares form cancels badly for a tight cluster far from zero
    assume(np.ptp(xs) > 1e-2 * (1 + np.max(np.abs(xs))))
    g1, g2, g3 = empirical_modulus(xs).forms
    assert g2 == pytest.approx(g1, rel=1e-9)
    assert g3 == pytest.approx(g1, rel=1e-9)


@fast
@given(st.lists(st.tuples(st.floats(0.1, 10), st.floats(-10, 10)), min_size=2, max_size=12))
def test_lsq_weight_not_below_ratio_weight(rows):
    rows = [ConditionRow(c, d) for c, d in rows]
    C = np.array([r.C[0] for r in rows])
    gamma = 1.0
    fit = laplace_ls_single(rows, gamma=gamma)
    assert fit.weight >= cotes_weight(rows, gamma) - 1e-12
    if np.allclose(C, C[0]):
        assert fit.x == pytest.approx(cotes_estimate(rows))


@fast
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=6), st.data())
def test_propagation_homogeneous_and_sign_free(C, data):
    limits = data.draw(st.lists(st.floats(0, 3), min_size=len(C), max_size=len(C)))
    s = data.draw(st.floats(0.1, 10))
    signs = data.draw(st.lists(st.sampled_from([-1, 1]), min_size=len(C), max_size=len(C)))
    base = propagate_linear(C, limits)
    assert propagate_linear(C, [s * x for x in limits]) == pytest.approx(s * base, rel=1e-9)
    assert propagate_linear([c * g for c, g in zip(C, signs)], limits) == pytest.approx(base)


@fast
@given(st.integers(0, 2**31 - 1), st.integers(4, 20), st.integers(1, 4))
def test_lsq_residuals_orthogonal(seed, n, k):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(n, k))
    d = rng.normal(size=n)
    fit = least_squares_multi([ConditionRow(a, x) for a, x in zip(A, d)])
    assert np.max(np.abs(A.T @ fit.residuals)) <= 1e-9 * max(1.0, np.abs(A).sum() * np.abs(d).sum())


@fast
@given(st.floats(1, 100), st.integers(1, 5000), st.floats(0.5, 10), st.integers(1, 500))
def test_ruin_monotone(alpha, n, dalpha, dn):
    base = ruin_probability(RuinSpec(alpha, n))
    assert ruin_probability(RuinSpec(alpha, n + dn)) >= base - 1e-12
    assert ruin_probability(RuinSpec(alpha + dalpha, n)) <= base + 1e-12


@fast
@given(st.integers(1, 10_000), chance, st.floats(0.1, 10), st.floats(0.1, 50),
       st.floats(0.01, 0.999))
def test_punter_window_straddles_mean(m, p, a, b, P):
    lim = punter_limits(GameSpec(m, p, a, b), P)
    assert lim.loss_low <= lim.mean_loss <= lim.loss_high


@fast
@given(st.lists(st.tuples(st.integers(1, 1000), st.floats(0.5, 100), st.floats(0.001, 0.5)),
                min_size=1, max_size=5), st.floats(0, 1e4), st.floats(0, 1e4))
def test_allocation_linear_and_exact(classes, mu1, mu2):
    pf = Portfolio(classes)
    a, b = bienayme_allocation(pf, mu1), bienayme_allocation(pf, mu2)
    assert sum(a) == Fraction(mu1)
    ab = bienayme_allocation(pf, mu1 + mu2)
    mean = bienayme_allocation(pf, 0.0)
    for x, y, z, m0 in zip(a, b, ab, mean):
        assert x + y - m0 == pytest.approx(float(z), rel=1e-9, abs=1e-9)


@pytest.mark.filterwarnings("ignore:Poisson form used with a large mean")
@fast
@given(st.integers(50, 2000), st.floats(1e-4, 0.05), st.integers(0, 30))
def test_poisson_tail_monotone(m, p, n):
    a, b = poisson_tail(m, p, n), poisson_tail(m, p, n + 1)
    assert 0 <= a <= b <= 1 + 1e-12


@fast
@given(st.floats(0.55, 0.95), st.floats(0.55, 0.95), st.floats(0.55, 0.95))
def test_three_judge_round_trip(v1, v2, v3):
    r = solve_three_judges(tribunal_tally(v1, v2, v3))
    assume(r.feasible)
    assert sorted(r.v) == pytest.approx(sorted((v1, v2, v3)), abs=1e-6)


@fast
@given(st.floats(0, 1))
def test_three_judge_reliability_forms(v):
    assert three_judge_reliability(v) == pytest.approx(v**3 + 3 * v**2 * (1 - v), abs=1e-12)


@fast
@given(st.lists(st.floats(0.5, 1), min_size=1, max_size=5), st.data())
def test_corrected_v_not_above_pooled(ps, data):
    ks = np.array(data.draw(st.lists(st.floats(0.05, 1), min_size=len(ps), max_size=len(ps))))
    out = mixture_corrected_v(ps, ks / ks.sum())
    assert out["v"] <= out["pooled_v"] + 1e-12


@fast
@given(st.floats(0.3, 0.9), st.floats(0.55, 0.95), st.floats(0.55, 0.95))
def test_jury_rates_are_probabilities(k1, v1, v2):
    c1, c2, a = jury12_rates(k1, v1, v2)
    assert 0 <= c1 and 0 <= c2 and 0 <= a and c1 + c2 <= 1


@fast
@given(st.lists(st.tuples(st.integers(1, 1000), st.floats(0.5, 100), st.floats(0.001, 0.5)),
                min_size=2, max_size=5))
def test_pooling_lowers_relative_oscillation(classes):
    pf = Portfolio(classes)
    for i in range(len(classes)):
        alone, pooled = union_benefit(pf, i)
        assert pooled < alone


@fast
@given(st.lists(st.integers(1, 500), min_size=2, max_size=5), st.floats(0.001, 0.3), st.data())
def test_equal_values_minimise_width(counts, p, data):
    total = 1000.0
    m = np.array(counts, float)
    equal = Portfolio([(c, total / m.sum(), p) for c in counts])
    shares = np.array(data.draw(st.lists(st.floats(0.1, 1), min_size=len(counts),
                                         max_size=len(counts))))
    values = total * shares / (m * shares).sum()
    other = Portfolio([(c, v, p) for c, v in zip(counts, values)])
    assert aggregate_loss_limits(equal, 0.5).halfwidth <= \
        aggregate_loss_limits(other, 0.5).halfwidth * (1 + 1e-12)
