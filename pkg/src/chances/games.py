"""Expectations, punter limits, fair-game oscillation, ruin and the capped Petersburg game."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from scipy import stats

from .combinatorics import DomainError
from .deviation_function import p_of_t, t_of_p

__all__ = [
    "GameSpec",
    "RuinSpec",
    "PunterLimits",
    "punter_limits",
    "OscillationLimit",
    "fair_game_oscillation",
    "ruin_probability",
    "petersburg_value",
    "expectation_and_division",
    "passe_dix_favourable",
    "passe_dix_counts",
]


@dataclass(frozen=True)
class GameSpec:
    """``m`` sets, each staking ``a`` for chance ``p`` of receiving ``b``."""

    m: int
    p: float
    a: float
    b: float

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("m must be at least 1")
        if not 0 < self.p < 1:
            raise DomainError("p must lie strictly between 0 and 1")
        if self.a <= 0 or self.b <= 0:
            raise DomainError("stake and payout must be positive")

    @property
    def advantage(self) -> float:
        """Banker's advantage per set, ``a - p b``."""
        return self.a - self.p * self.b


@dataclass(frozen=True)
class RuinSpec:
    """Capital worth ``alpha`` stakes, horizon of ``n`` sets."""

    alpha: float
    n: int

    def __post_init__(self):
        if self.alpha < 1:
            raise DomainError("alpha must be at least 1")
        if self.n < 0:
            raise DomainError("n must be non-negative")


@dataclass(frozen=True)
class PunterLimits:
    """Punter's net loss ``L`` lies in ``[loss_low, loss_high]`` with probability ``P``.

    A negative ``loss_low`` is a gain; ``max_gain = -loss_low`` when the
    window straddles zero.
    """

    mean_loss: float
    loss_low: float
    loss_high: float
    P: float

    @property
    def straddles_zero(self) -> bool:
        return self.loss_low < 0 < self.loss_high

    @property
    def max_gain(self) -> float:
        return max(0.0, -self.loss_low)

    @property
    def max_loss(self) -> float:
        return max(0.0, self.loss_high)


def punter_limits(spec: GameSpec, P: float) -> PunterLimits:
    """Window on the punter's loss: ``m a - m b (p +- l)``, ``l = t sqrt(2 p (1-p) / m)``."""
    m, p, a, b = spec.m, spec.p, spec.a, spec.b
    l = t_of_p(P) * math.sqrt(2.0 * p * (1.0 - p) / m)
    return PunterLimits(m * spec.advantage, m * a - m * b * (p + l), m * a - m * b * (p - l), P)


@dataclass(frozen=True)
class OscillationLimit:
    """Net result of ``m`` even-money fair sets, in stakes, stays within ``+-asymptotic``."""

    asymptotic: float
    exact: int
    count_halfwidth: float


def fair_game_oscillation(m: int, P: float) -> OscillationLimit:
    """Limit on ``|gain|`` in stakes after ``m`` fair even-chance sets.

    The count of wins stays within ``m/2 +- t sqrt(m/2)`` and the net gain
    is twice the count deviation. ``exact`` is the smallest ``d`` with
    ``Pr(|2X - m| <= d) >= P`` for ``X ~ Binomial(m, 1/2)``.
    """
    if m < 1:
        raise DomainError("m must be positive")
    hw = t_of_p(P) * math.sqrt(m / 2.0)
    # |2X - m| <= d  <=>  (m - d)/2 <= X <= (m + d)/2
    d = m % 2
    while d < m:
        lo, hi = math.ceil((m - d) / 2), math.floor((m + d) / 2)
        if stats.binom.cdf(hi, m, 0.5) - stats.binom.cdf(lo - 1, m, 0.5) >= P:
            break
        d += 2
    return OscillationLimit(2.0 * hw, d, hw)


def ruin_probability(spec: RuinSpec, method: str = "main") -> float:
    """Probability of ruin by set ``n`` against an inexhaustible opponent.

    ``method``:

    ``"main"``
        ``1 - P(alpha / sqrt(2n))``.
    ``"printed"``
        adds the printed second term
        ``t exp(-t^2) alpha (1 - 2/(3n)) / (2 n sqrt(pi))`` to ``1 - Pi``.
    ``"exact"``
        reflection principle for the simple walk,
        ``Pr(S_n >= alpha) + Pr(S_n > alpha)``.
    """
    alpha, n = spec.alpha, spec.n
    if n == 0:
        return 0.0
    if method == "exact":
        a = math.ceil(alpha)
        k = math.ceil((n + a) / 2)   # S_n >= a  <=>  wins >= (n + a)/2
        ge = float(stats.binom.sf(k - 1, n, 0.5))
        gt = float(stats.binom.sf(k, n, 0.5)) if (n + a) % 2 == 0 else ge
        return min(1.0, ge + gt)
    t = alpha / math.sqrt(2.0 * n)
    survive = p_of_t(t)
    if method == "printed":
        survive += t * math.exp(-t * t) * alpha / (2.0 * n) * (1.0 - 2.0 / (3.0 * n)) / math.sqrt(math.pi)
    elif method != "main":
        raise DomainError(f"unknown method {method!r}")
    return min(1.0, max(0.0, 1.0 - survive))


def petersburg_value(cap: float, unit: float = 1.0) -> float:
    """Expectation when throw ``k`` pays ``min(unit 2^(k-1), cap)`` with chance ``2^-k``.

    >>> petersburg_value(1024)
    6.0
    """
    if cap < unit or unit <= 0:
        raise DomainError("need 0 < unit <= cap")
    k_max = math.floor(math.log2(cap / unit)) + 1   # last uncapped throw
    while unit * 2.0 ** (k_max - 1) > cap:
        k_max -= 1
    while unit * 2.0 ** k_max <= cap:
        k_max += 1
    return k_max * unit / 2.0 + cap * 2.0 ** (-k_max)


def expectation_and_division(values: Sequence[float], probs: Sequence,
                             pot: float | None = None) -> tuple:
    """Expectation ``sum v p`` and the pot split in proportion to ``probs``.

    Returns ``(expectation, shares)`` with ``shares[i] = probs[i] * pot``;
    ``pot`` defaults to ``sum(values)``.
    """
    if len(values) != len(probs):
        raise DomainError("one probability per value is required")
    if any(p < 0 for p in probs) or abs(float(sum(probs)) - 1.0) > 1e-12:
        raise DomainError("probabilities must be non-negative and sum to 1")
    exp_ = sum(v * p for v, p in zip(values, probs))
    pot = sum(values) if pot is None else pot
    return exp_, [p * pot for p in probs]


def passe_dix_counts() -> tuple[int, int]:
    """Favourable and total throws of three dice for a total above 10."""
    throws = list(itertools.product(range(1, 7), repeat=3))
    return sum(1 for d in throws if sum(d) > 10), len(throws)


def passe_dix_favourable() -> Fraction:
    """Chance that three dice total more than 10, by enumerating the 216 throws."""
    return Fraction(*passe_dix_counts())
