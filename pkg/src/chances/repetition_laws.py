"""Binomial and hypergeometric laws of repeated trials.

Exact terms use :class:`fractions.Fraction` when the chance is rational
and the trial count is at most ``exact_threshold``; larger problems fall
back to log-space floating point.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
from scipy import stats

from .combinatorics import DomainError
from .deviation_function import correction_term, p_of_t, t_of_p

__all__ = [
    "RepeatedTrial",
    "UrnWithoutReplacement",
    "SmallSampleWarning",
    "binomial_pmf",
    "binomial_tail",
    "largest_term_index",
    "central_mass",
    "deviation_limit",
    "DeviationWindow",
    "corrected_interval_probability",
    "interval_probability_exact",
    "hypergeometric_pmf",
    "hypergeometric_tail",
    "repeat_until_even_odds",
]

EXACT_THRESHOLD = 2000


class SmallSampleWarning(UserWarning):
    """An asymptotic formula was applied to a small number of trials."""


def _warn_small(m: float, what: str = "trials") -> None:
    if m < 100:
        warnings.warn(f"asymptotic formula used with only {m} {what}", SmallSampleWarning,
                      stacklevel=3)


@dataclass(frozen=True)
class RepeatedTrial:
    """``m`` independent trials with chance ``p`` each."""

    m: int
    p: float | Fraction

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("m must be at least 1")
        if not 0 <= self.p <= 1:
            raise DomainError("p must lie in [0, 1]")

    @property
    def q(self):
        return 1 - self.p

    @property
    def is_rational(self) -> bool:
        return isinstance(self.p, Rational)


@dataclass(frozen=True)
class UrnWithoutReplacement:
    """``m`` draws without replacement from ``a`` white and ``b`` black balls."""

    a: int
    b: int
    m: int

    def __post_init__(self):
        if min(self.a, self.b, self.m) < 0:
            raise DomainError("counts must be non-negative")
        if self.m > self.a + self.b:
            raise DomainError("cannot draw more balls than the urn holds")


def binomial_pmf(trial: RepeatedTrial, n: int, exact: bool | None = None):
    """Probability of exactly ``n`` successes, ``C(m, n) p^n q^(m-n)``.

    Returns a :class:`~fractions.Fraction` for rational ``p`` (and
    ``m <= EXACT_THRESHOLD``) unless ``exact=False``.

    >>> binomial_pmf(RepeatedTrial(9, Fraction(2, 3)), 6)
    Fraction(5376, 19683)
    """
    m = trial.m
    if n < 0 or n > m:
        raise DomainError(f"n={n} outside [0, {m}]")
    if exact is None:
        exact = trial.is_rational and m <= EXACT_THRESHOLD
    if exact:
        p = Fraction(trial.p)
        return math.comb(m, n) * p**n * (1 - p) ** (m - n)
    return float(stats.binom.pmf(n, m, float(trial.p)))


def binomial_tail(trial: RepeatedTrial, lo: int, hi: int | None = None, exact: bool | None = None):
    """Sum of pmf terms for ``lo <= n <= hi`` (``hi`` defaults to ``m``)."""
    m = trial.m
    hi = m if hi is None else hi
    lo, hi = max(lo, 0), min(hi, m)
    if lo > hi:
        return Fraction(0) if (exact or (exact is None and trial.is_rational)) else 0.0
    if exact is None:
        exact = trial.is_rational and m <= EXACT_THRESHOLD
    if exact:
        return sum((binomial_pmf(trial, k, True) for k in range(lo, hi + 1)), Fraction(0))
    p = float(trial.p)
    return float(stats.binom.cdf(hi, m, p) - stats.binom.cdf(lo - 1, m, p))


def largest_term_index(trial: RepeatedTrial) -> tuple[int, bool]:
    """Index of the largest pmf term and whether it is tied with the next.

    The largest term is the integer part of ``p (m + 1)``; when that
    product is an integer ``k``, terms ``k - 1`` and ``k`` are equal and
    the lower index is returned with ``tie=True``.
    """
    pm = Fraction(trial.p) * (trial.m + 1) if trial.is_rational else trial.p * (trial.m + 1)
    k = math.floor(pm)
    tie = pm == k and 0 < k <= trial.m
    if tie:
        k -= 1
    return min(k, trial.m), bool(tie)


def central_mass(trial: RepeatedTrial, halfwidth: int, exact: bool | None = None):
    """Mass of the ``2 halfwidth + 1`` terms centred on the largest term."""
    k, _ = largest_term_index(trial)
    return binomial_tail(trial, k - halfwidth, k + halfwidth, exact)


@dataclass(frozen=True)
class DeviationWindow:
    l: float
    t: float
    lo: float
    hi: float


def deviation_limit(trial: RepeatedTrial, P: float | None = None,
                    t: float | None = None) -> DeviationWindow:
    """Limit ``l`` on the success ratio at probability ``P``.

    ``l = t sqrt(2 p (1-p) / m)`` with ``t = t_of_p(P)``; the count
    window is ``m p +- m l``. Pass ``t`` directly to use a rounded
    tabulated argument instead of the exact inverse.
    """
    if (P is None) == (t is None):
        raise DomainError("give exactly one of P and t")
    p, m = float(trial.p), trial.m
    _warn_small(m)
    t = t_of_p(P) if t is None else float(t)
    if p in (0.0, 1.0):
        return DeviationWindow(0.0, t, m * p, m * p)
    l = t * math.sqrt(2.0 * p * (1.0 - p) / m)
    return DeviationWindow(l, t, m * (p - l), m * (p + l))


def corrected_interval_probability(trial: RepeatedTrial, l: float) -> tuple[float, float]:
    """Main and corrected probabilities that ``|n/m - p| <= l``.

    Returns
    -------
    (main, corrected) : tuple of float
        ``P(t)`` and ``P(t) + exp(-t^2)/sqrt(2 pi p q m)``.
    """
    p, m = float(trial.p), trial.m
    _warn_small(m)
    t = l * math.sqrt(m / (2.0 * p * (1.0 - p)))
    main = p_of_t(t)
    return main, main + correction_term(t, m, p)


def interval_probability_exact(trial: RepeatedTrial, l: float):
    """Exact binomial mass of ``m (p - l) <= n <= m (p + l)``."""
    mp = Fraction(trial.p) * trial.m if trial.is_rational else trial.p * trial.m
    ml = Fraction(l).limit_denominator(10**9) * trial.m
    return binomial_tail(trial, math.ceil(mp - ml), math.floor(mp + ml))


def hypergeometric_pmf(urn: UrnWithoutReplacement, n: int) -> Fraction:
    """Exact probability of ``n`` white balls among the ``m`` drawn.

    Infeasible ``n`` gives zero.
    """
    a, b, m = urn.a, urn.b, urn.m
    if n < 0 or n > min(a, m) or m - n > b:
        return Fraction(0)
    return Fraction(math.comb(a, n) * math.comb(b, m - n), math.comb(a + b, m))


def hypergeometric_tail(urn: UrnWithoutReplacement, lo: int, hi: int | None = None) -> Fraction:
    hi = urn.m if hi is None else hi
    return sum((hypergeometric_pmf(urn, k) for k in range(lo, hi + 1)), Fraction(0))


def repeat_until_even_odds(p: float) -> tuple[float, int]:
    """Trials needed before an event of chance ``p`` is as likely as not.

    Solves ``(1 - p)^m = 1/2``; returns the real root and its ceiling.

    >>> round(repeat_until_even_odds(1/36)[0], 1)
    24.6
    """
    if not 0 < p < 1:
        raise DomainError("p must lie strictly between 0 and 1")
    m = math.log(2.0) / -math.log1p(-float(p))
    return m, math.ceil(m - 1e-12)
