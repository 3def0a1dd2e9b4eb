"""Inference on chances and means from observed series.

Covers Bayes' rule over discrete causes, the rule of succession, limits
on an observed ratio, comparisons of two series with the posterior
``Pi = (1 +- P)/2``, weights, empirical moduli, trimmed means, tables of
probabilities and the solidarity (serial dependence) check.

``Pi`` is always the probability that the first series has the larger
chance (or mean) by more than ``alpha``. It is ``(1 + P)/2`` when the
observed difference exceeds ``alpha`` and ``(1 - P)/2`` otherwise.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import stats

from ._streams import stream
from .combinatorics import DomainError
from .deviation_function import p_of_t, t_of_p
from .repetition_laws import SmallSampleWarning

__all__ = [
    "BinomialSeries",
    "EmpiricalSeries",
    "ComparisonResult",
    "bayes_discrete",
    "predictive",
    "succession_rule",
    "chance_interval",
    "weight_of_chance",
    "predict_future_ratio",
    "compare_two_series",
    "compare_categories",
    "compare_with_fixed",
    "partial_vs_total",
    "empirical_modulus",
    "EmpiricalModulus",
    "compare_two_means",
    "compare_mean_with_total",
    "trimmed_usual_value",
    "probability_table",
    "ProbabilityTable",
    "solidarity_test",
    "SolidarityReport",
    "split_limit",
    "multiple_split_hazard",
]

PREREGISTRATION_CAVEAT = (
    "Pi measures a real difference only when the split was chosen before "
    "looking at the data; a split selected among many after inspection has "
    "no determinate chance of error."
)


def _warn(count: float, what: str) -> None:
    if count < 100:
        warnings.warn(f"asymptotic formula used with only {count} {what}", SmallSampleWarning,
                      stacklevel=3)


@dataclass(frozen=True)
class BinomialSeries:
    """``n`` occurrences in ``m`` trials."""

    m: int
    n: int
    label: str = ""

    def __post_init__(self):
        if self.m < 0 or not 0 <= self.n <= self.m:
            raise DomainError(f"need 0 <= n <= m, got n={self.n}, m={self.m}")

    @property
    def ratio(self) -> float:
        return self.n / self.m

    def _check_nondegenerate(self) -> None:
        if self.n in (0, self.m):
            raise DomainError(f"series {self.label!r} has n in {{0, m}}; no interval exists")


@dataclass(frozen=True)
class EmpiricalSeries:
    """Ordered particular values of a magnitude."""

    values: tuple
    label: str = ""

    def __init__(self, values: Sequence[float], label: str = ""):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise DomainError("empirical series must be non-empty")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "label", label)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ComparisonResult:
    """Outcome of a two-series comparison.

    ``P`` is the prior probability that the difference stays within
    ``+-|delta - alpha|`` when both chances are equal; ``Pi`` the posterior
    probability that the first exceeds the second by more than ``alpha``.
    """

    delta: float
    t: float
    P: float
    Pi: float
    alpha: float = 0.0
    preregistered: bool = True
    caveat: str = PREREGISTRATION_CAVEAT
    warnings: tuple = field(default=())

    def as_dict(self) -> dict:
        return {"delta": self.delta, "t": self.t, "P": self.P, "Pi": self.Pi,
                "alpha": self.alpha, "preregistered": self.preregistered,
                "caveat": self.caveat, "warnings": list(self.warnings)}


def _capture(fn, *args, **kw):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SmallSampleWarning)
        out = fn(*args, **kw)
    msgs = tuple(str(w.message) for w in caught if issubclass(w.category, SmallSampleWarning))
    for msg in msgs:
        warnings.warn(msg, SmallSampleWarning, stacklevel=3)
    return out, msgs


def bayes_discrete(priors: Sequence, likelihoods: Sequence) -> list:
    """Posterior probabilities of causes, proportional to prior times likelihood.

    Fractions in, fractions out.

    >>> bayes_discrete([Fraction(1, 3)] * 3, [1, Fraction(2, 3), Fraction(1, 3)])
    [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]
    """
    if len(priors) != len(likelihoods):
        raise DomainError("one likelihood per prior is required")
    if any(p < 0 for p in priors) or abs(float(sum(priors)) - 1.0) > 1e-9:
        raise DomainError("priors must be non-negative and sum to 1")
    if any(not 0 <= x <= 1 for x in likelihoods):
        raise DomainError("likelihoods must lie in [0, 1]")
    prods = [p * x for p, x in zip(priors, likelihoods)]
    total = sum(prods)
    if total == 0:
        raise DomainError("every cause has zero posterior weight")
    return [v / total for v in prods]


def predictive(posteriors: Sequence, likelihoods: Sequence):
    """Probability of a further occurrence: ``sum posterior_i * likelihood_i``."""
    return sum(p * x for p, x in zip(posteriors, likelihoods))


@dataclass(frozen=True)
class Succession:
    mean: Fraction
    mode: float
    median: float


def succession_rule(n: int, m: int) -> Succession:
    """Posterior of an unknown chance after ``n`` successes in ``m`` trials.

    Uniform prior; the posterior is Beta(n+1, m-n+1) with mean
    ``(n+1)/(m+2)``, mode ``n/m`` and its median.
    """
    if not 0 <= n <= m:
        raise DomainError("need 0 <= n <= m")
    mode = n / m if m else 0.5
    median = float(stats.beta.median(n + 1, m - n + 1))
    return Succession(Fraction(n + 1, m + 2), mode, median)


def chance_interval(series: BinomialSeries, P: float) -> float:
    """Half-width ``l`` around ``n/m`` holding the unknown chance with probability ``P``.

    ``l = t sqrt(2 n (m - n)) / (m sqrt(m))``.
    """
    series._check_nondegenerate()
    _warn(min(series.n, series.m - series.n), "occurrences")
    m, n = series.m, series.n
    return t_of_p(P) * math.sqrt(2.0 * n * (m - n)) / (m * math.sqrt(m))


def chance_interval_probability(series: BinomialSeries, l: float) -> tuple[float, float]:
    """``(t, P)`` for a given half-width ``l`` about ``n/m``."""
    series._check_nondegenerate()
    m, n = series.m, series.n
    t = l * m * math.sqrt(m) / math.sqrt(2.0 * n * (m - n))
    return t, p_of_t(t)


def weight_of_chance(series: BinomialSeries) -> float:
    """Weight ``m sqrt(m) / sqrt(2 n (m - n))`` of an observed ratio."""
    series._check_nondegenerate()
    m, n = series.m, series.n
    return m * math.sqrt(m) / math.sqrt(2.0 * n * (m - n))


def predict_future_ratio(series: BinomialSeries, m_prime: int, P: float) -> float:
    """Half-width ``l'`` for the ratio of a future series of ``m_prime`` trials.

    From ``t = l' m sqrt(m m' / (2 n (m - n) (m + m')))``.
    """
    series._check_nondegenerate()
    if m_prime < 1:
        raise DomainError("m_prime must be positive")
    m, n = series.m, series.n
    return t_of_p(P) * math.sqrt(2.0 * n * (m - n) * (m + m_prime) / (m * m_prime)) / m


def _pi(delta: float, alpha: float, P: float) -> float:
    return 0.5 * (1.0 + P) if delta > alpha else 0.5 * (1.0 - P) if delta < alpha else 0.5


def _two_series_t(l: float, m1: int, n1: int, m2: int, n2: int) -> float:
    # var(n1/m1 - n2/m2) * 2 = 2 n1 (m1-n1)/m1^3 + 2 n2 (m2-n2)/m2^3
    denom = 2.0 * (n1 * (m1 - n1) / m1**3 + n2 * (m2 - n2) / m2**3)
    return l / math.sqrt(denom)


def compare_two_series(s1: BinomialSeries, s2: BinomialSeries, alpha: float = 0.0,
                       preregistered: bool = True) -> ComparisonResult:
    """Is the chance in ``s1`` larger than in ``s2`` by more than ``alpha``?

    ``t = |delta - alpha| m m' sqrt(m m') / sqrt(2 [m^3 n'(m'-n') + m'^3 n (m-n)])``.
    """
    for s in (s1, s2):
        s._check_nondegenerate()
    if alpha < 0:
        raise DomainError("alpha must be non-negative")

    def run():
        _warn(min(s1.n, s1.m - s1.n, s2.n, s2.m - s2.n), "occurrences per cell")
        delta = s1.ratio - s2.ratio
        t = _two_series_t(abs(delta - alpha), s1.m, s1.n, s2.m, s2.n)
        P = p_of_t(t)
        return delta, t, P
    (delta, t, P), msgs = _capture(run)
    return ComparisonResult(delta, t, P, _pi(delta, alpha, P), alpha, preregistered,
                            warnings=msgs)


def compare_categories(s1: BinomialSeries, s2: BinomialSeries,
                       preregistered: bool = True) -> ComparisonResult:
    """Compare two categories that partition one series.

    Uses the symmetric two-series statistic: each category's cube
    multiplies the other category's variance term, as in the two-series
    formula. The printed display pairs each cube with its own category,
    which is dimensionally inconsistent unless ``m1 = m2``.
    """
    return compare_two_series(s1, s2, 0.0, preregistered)


def compare_with_fixed(series: BinomialSeries, w: float, alpha: float = 0.0) -> ComparisonResult:
    """Limit ``m' -> infinity``: is the chance above the fixed value ``w``?"""
    series._check_nondegenerate()
    m, n = series.m, series.n
    delta = n / m - w
    t = abs(delta - alpha) * m * math.sqrt(m) / math.sqrt(2.0 * n * (m - n))
    P = p_of_t(t)
    return ComparisonResult(delta, t, P, _pi(delta, alpha, P), alpha)


def partial_vs_total(part: BinomialSeries, total: BinomialSeries, P: float) -> float:
    """Limit on ``n/m - n1/m1`` when the part is drawn from the total.

    ``t = l m sqrt(m m1) / sqrt(2 n (m - n) (m - m1))``.
    """
    total._check_nondegenerate()
    if not part.m < total.m:
        raise DomainError("the part must be smaller than the total")
    m, n, m1 = total.m, total.n, part.m
    return t_of_p(P) * math.sqrt(2.0 * n * (m - n) * (m - m1)) / (m * math.sqrt(m * m1))


@dataclass(frozen=True)
class EmpiricalModulus:
    """Mean ``M``, modulus estimate ``gamma`` and weight ``gamma sqrt(m)``."""

    M: float
    gamma: float
    weight: float
    sum_sq: float
    m: int
    forms: tuple = ()

    @property
    def infinite(self) -> bool:
        return math.isinf(self.weight)

    def limit(self, P: float) -> float:
        """Half-width on the true mean at probability ``P``."""
        return t_of_p(P) / self.weight

    def probability(self, l: float) -> tuple[float, float]:
        """``(t, P)`` for half-width ``l``."""
        t = l * self.weight
        return t, p_of_t(t)


def empirical_modulus(series: EmpiricalSeries | Sequence[float]) -> EmpiricalModulus:
    """Modulus ``gamma = sqrt(m) / sqrt(2 sum (x - M)^2)`` and weight.

    ``forms`` holds the three equivalent evaluations (deviations from the
    mean, all pairwise differences, mean of squares); they agree to
    rounding.
    """
    x = series.array if isinstance(series, EmpiricalSeries) else np.asarray(series, float)
    m = x.size
    if m < 2:
        raise DomainError("need at least two values")
    M = float(x.mean())
    ss = float(np.sum((x - M) ** 2))
    if ss == 0.0:
        return EmpiricalModulus(M, math.inf, math.inf, 0.0, m, (math.inf,) * 3)
    g1 = math.sqrt(m) / math.sqrt(2.0 * ss)
    s = np.sort(x)
    # sum_{i<j} (x_i - x_j)^2 via order statistics
    pair_sq = float(m * np.sum(s**2) - np.sum(s) ** 2)
    g2 = m / math.sqrt(2.0 * pair_sq) if pair_sq > 0 else math.inf
    msq = float(np.mean(x**2)) - M * M
    g3 = 1.0 / math.sqrt(2.0 * msq) if msq > 0 else math.inf
    return EmpiricalModulus(M, g1, g1 * math.sqrt(m), ss, m, (g1, g2, g3))


def compare_two_means(s1: EmpiricalSeries, s2: EmpiricalSeries, printed_form: bool = False,
                      preregistered: bool = True) -> ComparisonResult:
    """Is the mean of ``s1`` larger than that of ``s2``?

    ``t = l sqrt(m1 m2) / sqrt(m2 / gamma1^2 + m1 / gamma2^2)``, which is
    ``l / sqrt(2 var(mu1 - mu2))``. ``printed_form=True`` swaps the counts
    under the radical (``m1/gamma1^2 + m2/gamma2^2``) as the source prints
    it; the two agree when ``m1 = m2``.
    """
    e1, e2 = empirical_modulus(s1), empirical_modulus(s2)
    if e1.infinite or e2.infinite:
        if e1.M == e2.M:
            return ComparisonResult(0.0, 0.0, 0.0, 0.5, preregistered=preregistered)
        raise DomainError("a series without dispersion has no finite modulus")
    m1, m2 = e1.m, e2.m
    delta = e1.M - e2.M
    if printed_form:
        rad = m1 / e1.gamma**2 + m2 / e2.gamma**2
    else:
        rad = m2 / e1.gamma**2 + m1 / e2.gamma**2
    t = abs(delta) * math.sqrt(m1 * m2) / math.sqrt(rad)
    P = p_of_t(t)
    return ComparisonResult(delta, t, P, _pi(delta, 0.0, P), preregistered=preregistered)


def compare_mean_with_total(part: EmpiricalSeries, total: EmpiricalSeries, P: float) -> float:
    """Half-width on ``mu - mu1`` for a part of a series: ``t = l gamma sqrt(m m1 / (m - m1))``."""
    e = empirical_modulus(total)
    m, m1 = e.m, len(part)
    if not m1 < m:
        raise DomainError("the part must be smaller than the total")
    return t_of_p(P) * math.sqrt((m - m1) / (m * m1)) / e.gamma


def trimmed_usual_value(series: EmpiricalSeries | Sequence[float], drop_each_side: int) -> float:
    """Mean after dropping ``drop_each_side`` extreme values at each end."""
    x = np.sort(series.array if isinstance(series, EmpiricalSeries) else np.asarray(series, float))
    k = int(drop_each_side)
    if k < 0 or 2 * k >= x.size:
        raise DomainError("cannot drop that many values")
    return float(x[k:x.size - k].mean())


@dataclass(frozen=True)
class ProbabilityTable:
    midpoints: np.ndarray
    ordinates: np.ndarray
    counts: np.ndarray
    anomalous: np.ndarray
    replacement: np.ndarray

    def rows(self):
        return list(zip(self.midpoints.tolist(), self.ordinates.tolist()))


def probability_table(series: EmpiricalSeries | Sequence[float], bins: int,
                      range_: tuple[float, float] | None = None,
                      anomaly_P: float = 0.999) -> ProbabilityTable:
    """Empirical density ordinates ``n_i / (N h_i)`` at bin midpoints.

    An interior bin is flagged anomalous when its count departs from the
    mean of its two neighbours by more than the ``anomaly_P`` limit of a
    count with that expectation; ``replacement`` carries the ordinates
    with flagged bins replaced by that interpolation.
    """
    x = series.array if isinstance(series, EmpiricalSeries) else np.asarray(series, float)
    if x.size == 0:
        raise DomainError("empty series")
    if bins < 1:
        raise DomainError("need at least one bin")
    counts, edges = np.histogram(x, bins=bins, range=range_)
    width = np.diff(edges)
    N = x.size
    ords = counts / (N * width)
    mids = 0.5 * (edges[1:] + edges[:-1])
    flagged = np.zeros(bins, dtype=bool)
    repl = ords.copy()
    if bins >= 3:
        t = t_of_p(anomaly_P)
        expect = 0.5 * (counts[:-2] + counts[2:])
        # a count n with expectation e deviates by t sqrt(2 e) at probability P
        limit = t * np.sqrt(2.0 * np.maximum(expect, 1.0))
        bad = np.abs(counts[1:-1] - expect) > limit
        flagged[1:-1] = bad
        repl[1:-1] = np.where(bad, expect / (N * width[1:-1]), ords[1:-1])
    return ProbabilityTable(mids, ords, counts, flagged, repl)


@dataclass(frozen=True)
class SolidarityReport:
    all_pairs_msd: float
    lag1_msd: float
    ratio: float
    p_value: float
    verdict: str


def solidarity_test(series: EmpiricalSeries | Sequence[float], seed: int = 0,
                    permutations: int = 1000, ratio_threshold: float = 1.5,
                    level: float = 0.01) -> SolidarityReport:
    """Compare the mean squared difference over all pairs with that of neighbours.

    Independent values give a ratio near one. Dependence between
    neighbouring values shrinks the consecutive differences. The verdict
    is ``"solidarity suspected"`` when the ratio exceeds ``ratio_threshold``
    and a permutation test rejects at ``level``.
    """
    x = series.array if isinstance(series, EmpiricalSeries) else np.asarray(series, float)
    n = x.size
    if n < 30:
        raise DomainError("the solidarity test needs at least 30 values")
    ss = float(np.sum((x - x.mean()) ** 2))
    all_pairs = 2.0 * ss / (n - 1)
    lag1 = float(np.mean(np.diff(x) ** 2))
    if all_pairs == 0.0:
        return SolidarityReport(0.0, lag1, math.nan, 1.0, "degenerate")
    ratio = all_pairs / lag1 if lag1 > 0 else math.inf
    rng = stream(seed, "solidarity")
    perm = np.array([np.mean(np.diff(rng.permutation(x)) ** 2) for _ in range(permutations)])
    perm_ratio = all_pairs / np.where(perm > 0, perm, np.nan)
    p_value = float((1 + np.sum(perm_ratio >= ratio)) / (permutations + 1))
    suspect = ratio > ratio_threshold and p_value < level
    return SolidarityReport(all_pairs, lag1, ratio, p_value,
                            "solidarity suspected" if suspect else "no solidarity detected")


def split_limit(m: int, p: float, P: float) -> float:
    """Half-width on the rate difference of an even random split of ``m`` trials."""
    return t_of_p(P) * math.sqrt(2.0 * p * (1.0 - p) * 4.0 / m)


def multiple_split_hazard(m: int, p: float, l: float, s: int, replicates: int = 10_000,
                          seed: int = 0) -> float:
    """Chance that at least one of ``s`` random even splits shows ``|delta| > l``.

    The ``m`` trials share a constant chance ``p``; every trial joins
    either half with probability one half, independently for each split.
    Estimated by seeded simulation.
    """
    if s < 1:
        raise DomainError("s must be at least 1")
    if l <= 0:
        return 1.0
    rng = stream(seed, "multiple_split")
    hits = 0
    block = max(1, 2_000_000 // max(s, 1))
    done = 0
    while done < replicates:
        r = min(block, replicates - done)
        n = rng.binomial(m, p, size=(r, 1))
        na = rng.binomial(np.broadcast_to(n, (r, s)), 0.5)
        fa = rng.binomial(np.broadcast_to(m - n, (r, s)), 0.5)
        ma = na + fa
        mb = m - ma
        with np.errstate(divide="ignore", invalid="ignore"):
            d = np.abs(na / ma - (n - na) / mb)
        d = np.where((ma == 0) | (mb == 0), 0.0, d)
        hits += int(np.sum(np.any(d > l, axis=1)))
        done += r
    return hits / replicates
