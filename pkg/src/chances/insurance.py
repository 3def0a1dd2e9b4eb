"""Insurance: indemnity and profit limits, mutual contributions, allocation and annuities.

A window is ``centre +- halfwidth`` holding the quantity with probability
``P``; ``halfwidth = t sqrt(2 var)`` with ``t = t_of_p(P)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy import stats

from .combinatorics import DomainError
from .deviation_function import t_of_p

__all__ = [
    "Portfolio",
    "RiskClass",
    "AnnuityQuote",
    "Window",
    "aggregate_loss_limits",
    "boni_limits",
    "deficit_probability",
    "poisson_tail",
    "poisson_binomial_table",
    "mutual_contribution_limits",
    "class_contribution_limits",
    "bienayme_allocation",
    "union_benefit",
    "partial_loss_limits",
    "annuity_price",
    "life_payment",
    "compound_horizon_limits",
]


@dataclass(frozen=True)
class RiskClass:
    count: int
    value: float
    risk: float

    def __post_init__(self):
        if self.count < 0:
            raise DomainError("class count must be non-negative")
        if not self.value > 0:
            raise DomainError("insured value must be positive")
        if not 0 < self.risk < 1:
            raise DomainError("risk must lie strictly between 0 and 1")

    @property
    def mean(self) -> float:
        return self.count * self.risk * self.value

    @property
    def var_term(self) -> float:
        """``m p (1-p) a^2``."""
        return self.count * self.risk * (1.0 - self.risk) * self.value**2


@dataclass(frozen=True)
class Portfolio:
    """Classes of ``count`` policies, each of ``value`` at yearly ``risk``."""

    classes: tuple

    def __init__(self, classes: Sequence):
        cls = tuple(c if isinstance(c, RiskClass) else RiskClass(*c) for c in classes)
        if not cls:
            raise DomainError("portfolio must have at least one class")
        object.__setattr__(self, "classes", cls)

    @property
    def mean_loss(self) -> float:
        return sum(c.mean for c in self.classes)

    @property
    def var_sum(self) -> float:
        return sum(c.var_term for c in self.classes)


@dataclass(frozen=True)
class Window:
    centre: float
    halfwidth: float
    P: float

    @property
    def low(self) -> float:
        return self.centre - self.halfwidth

    @property
    def high(self) -> float:
        return self.centre + self.halfwidth

    def as_dict(self) -> dict:
        return {"centre": self.centre, "halfwidth": self.halfwidth, "low": self.low,
                "high": self.high, "P": self.P}


def aggregate_loss_limits(portfolio: Portfolio, P: float) -> Window:
    """Yearly indemnities ``sum m p a +- t sqrt(2 sum m p (1-p) a^2)``."""
    return Window(portfolio.mean_loss, t_of_p(P) * math.sqrt(2.0 * portfolio.var_sum), P)


def boni_limits(m: int, p: float, w: float, a: float, P: float) -> Window:
    """Yearly profit ``m a (w - p) +- t a sqrt(2 m p (1-p))`` at premium rate ``w``."""
    if not 0.0 < p < 1.0:
        raise DomainError("risk must lie strictly between 0 and 1")
    if w < p:
        raise DomainError("premium rate below the risk")
    return Window(m * a * (w - p), t_of_p(P) * a * math.sqrt(2.0 * m * p * (1.0 - p)), P)


def deficit_probability(m: int, p: float, w: float, method: str = "exact") -> float:
    """Chance that indemnities exceed premiums, ``Pr(N > m w)``.

    ``method="exact"`` sums the binomial; ``"normal"`` uses the one-sided
    tail of the deviation function.
    """
    if not 0.0 < p < 1.0:
        raise DomainError("risk must lie strictly between 0 and 1")
    limit = m * w
    if method == "exact":
        return float(stats.binom.sf(math.floor(limit + 1e-9), m, p))
    if method == "normal":
        t = (limit - m * p) / math.sqrt(2.0 * m * p * (1.0 - p))
        return 0.5 * math.erfc(t)
    raise DomainError(f"unknown method {method!r}")


def poisson_tail(m: int, p: float, n: int) -> float:
    """``exp(-pm) sum_{k<=n} (pm)^k / k!``: at most ``n`` accidents among ``m``."""
    lam = m * p
    if lam > 50:
        warnings.warn("Poisson form used with a large mean", stacklevel=2)
    if n < 0:
        return 0.0
    return float(stats.poisson.cdf(n, lam))


def poisson_binomial_table(m: int = 200, p: float = 0.01, n_max: int = 11) -> np.ndarray:
    """Rows ``(n, poisson pmf, binomial pmf, poisson cdf, binomial cdf)``."""
    n = np.arange(n_max + 1)
    lam = m * p
    return np.column_stack([n, stats.poisson.pmf(n, lam), stats.binom.pmf(n, m, p),
                            stats.poisson.cdf(n, lam), stats.binom.cdf(n, m, p)])


def mutual_contribution_limits(m: int, p: float, a: float, P: float) -> Window:
    """Each member's contribution ``p a +- t a sqrt(2 p (1-p) / m)``."""
    if m < 2:
        raise DomainError("a mutual needs at least two members")
    return Window(p * a, t_of_p(P) * a * math.sqrt(2.0 * p * (1.0 - p) / m), P)


def class_contribution_limits(portfolio: Portfolio, i: int, P: float) -> Window:
    """Contribution of a class-``i`` member under contributions proportional to ``p a``."""
    c = portfolio.classes[i]
    share = c.risk * c.value
    hw = t_of_p(P) * share * math.sqrt(2.0 * portfolio.var_sum) / portfolio.mean_loss
    return Window(share, hw, P)


def bienayme_allocation(portfolio: Portfolio, mu: float) -> list[Fraction]:
    """Expected share of the total loss ``mu`` borne by each class.

    The mean part ``M`` is split in proportion to ``m p a``; the deviation
    ``mu - M`` in proportion to ``m p (1-p) a^2``. Computed in exact
    rational arithmetic from the float inputs, so the shares sum to ``mu``
    exactly.
    """
    F = Fraction
    means = [c.count * F(c.risk) * F(c.value) for c in portfolio.classes]
    var = [c.count * F(c.risk) * (1 - F(c.risk)) * F(c.value) ** 2 for c in portfolio.classes]
    M, V, mu = sum(means), sum(var), F(mu)
    return [x + (mu - M) * v / V for x, v in zip(means, var)]


def union_benefit(portfolio: Portfolio, i: int = 0) -> tuple[float, float]:
    """Relative deviation amplitude of class ``i`` alone and after pooling.

    Returns ``(standalone, pooled)`` with ``standalone = sqrt(2 v_i) / v_i``
    and ``pooled = sqrt(2 V) / V``; pooling always lowers it.
    """
    v = portfolio.classes[i].var_term
    V = portfolio.var_sum
    return math.sqrt(2.0 * v) / v, math.sqrt(2.0 * V) / V


def partial_loss_limits(m: int, losses: Sequence[tuple[float, float]], P: float) -> Window:
    """Indemnities when a policy can lose ``a_i`` with chance ``p_i`` (or nothing).

    The per-policy variance is
    ``sum_{i<j} p_i p_j (a_i - a_j)^2 + sum_i p_i (1 - sum p) a_i^2``.
    """
    p = np.array([x[0] for x in losses], float)
    a = np.array([x[1] for x in losses], float)
    if np.any(p < 0) or p.sum() > 1 + 1e-12:
        raise DomainError("loss chances must be non-negative with sum at most 1")
    p0 = 1.0 - p.sum()
    diff = a[:, None] - a[None, :]
    cross = 0.5 * float(np.sum(np.outer(p, p) * diff**2))
    var = cross + float(np.sum(p * p0 * a**2))
    return Window(m * float(p @ a), t_of_p(P) * math.sqrt(2.0 * m * var), P)


@dataclass(frozen=True)
class AnnuityQuote:
    """Survival chances ``p_1, p_2, ...`` to successive payments at rate ``r``."""

    survival: tuple
    r: float
    a: float

    def __init__(self, survival: Sequence[float], r: float, a: float):
        s = tuple(float(x) for x in survival)
        if any(not 0 <= x <= 1 for x in s):
            raise DomainError("survival chances must lie in [0, 1]")
        if any(s[k + 1] > s[k] + 1e-12 for k in range(len(s) - 1)):
            raise DomainError("survival chances must be non-increasing")
        if r <= -1:
            raise DomainError("interest rate must exceed -1")
        object.__setattr__(self, "survival", s)
        object.__setattr__(self, "r", float(r))
        object.__setattr__(self, "a", float(a))


def annuity_price(quote: AnnuityQuote) -> float:
    """Capital ``A = a sum p_k / (1+r)^k``."""
    k = np.arange(1, len(quote.survival) + 1)
    return quote.a * float(np.sum(np.asarray(quote.survival) / (1.0 + quote.r) ** k))


def life_payment(quote: AnnuityQuote) -> float:
    """Yearly due ``b = a - r A`` securing capital ``A`` to the heirs."""
    return quote.a - quote.r * annuity_price(quote)


def compound_horizon_limits(m: int, p: float, w: float, a: float, r: float, P: float,
                            n: int | None = None) -> Window:
    """Discounted total profit over ``n`` years, or its large-``n`` limit.

    Finite ``n``: ``m a (w-p) sum v^k +- t a sqrt(2 m p (1-p) sum v^(2k))``
    with ``v = 1/(1+r)``. ``n=None`` gives
    ``m a (w-p)/r +- a t sqrt(m p (1-p)/r)``, first order in ``r``.
    """
    t = t_of_p(P)
    if n is None:
        if r <= 0:
            raise DomainError("the limit form needs r > 0")
        return Window(m * a * (w - p) / r, a * t * math.sqrt(m * p * (1.0 - p) / r), P)
    if r <= -1:
        raise DomainError("interest rate must exceed -1")
    v = 1.0 / (1.0 + r)
    k = np.arange(1, n + 1)
    s1 = float(np.sum(v**k))
    s2 = float(np.sum(v ** (2 * k)))
    return Window(m * a * (w - p) * s1, t * a * math.sqrt(2.0 * m * p * (1.0 - p) * s2), P)
