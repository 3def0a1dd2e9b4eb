"""Life tables, yearly danger, probable and mean life, stationary populations.

A table holds survival ``F`` on a grid of ages. Between nodes ``F`` is
interpolated linearly in ``log F`` (exactly exponential on each segment),
or linearly where an endpoint is zero. Past the last age a positive ``F``
continues exponentially at the rate of the last segment.
"""

from __future__ import annotations

import math
from functools import cached_property
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import optimize

from .combinatorics import DomainError
from .deviation_function import p_of_t
from .inference import BinomialSeries, compare_two_series, weight_of_chance

__all__ = [
    "LifeTable",
    "standard_ages",
    "survival_from_hazard",
    "exponential_table",
    "synthetic_life_table",
    "mean_life",
    "probable_life",
    "yearly_danger",
    "delete_cause",
    "combine_causes",
    "deaths_by_age",
    "StationaryPopulation",
    "stationary_population",
    "SexRatioReport",
    "sex_ratio_report",
]

TOL = 1e-9
_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


def standard_ages(terminal: float = 110.0) -> np.ndarray:
    """Monthly ages below one year, yearly ages from 1 to ``terminal``."""
    months = np.arange(12) / 12.0
    years = np.arange(1.0, math.floor(terminal) + 1.0)
    return np.concatenate([months, years])


@dataclass(frozen=True, eq=False)
class LifeTable:
    """Survival ``F`` (chance to reach each age) on an increasing age grid.

    ``F(0) = 1`` and ``F`` is non-increasing. ``hazard`` is kept when the
    table was built from one.
    """

    ages: np.ndarray
    F: np.ndarray
    hazard: np.ndarray | None = None

    def __init__(self, ages: Sequence[float], F: Sequence[float],
                 hazard: Sequence[float] | None = None):
        x = np.asarray(ages, float)
        s = np.asarray(F, float)
        if x.ndim != 1 or x.shape != s.shape or x.size < 2:
            raise DomainError("ages and F must be 1-d of equal length >= 2")
        if np.any(np.diff(x) <= 0):
            raise DomainError("ages must increase")
        if abs(x[0]) > TOL or abs(s[0] - 1.0) > 1e-9:
            raise DomainError("table must start at age 0 with F = 1")
        if np.any(s < -TOL) or np.any(np.diff(s) > TOL):
            raise DomainError("F must be non-negative and non-increasing")
        s = np.clip(s, 0.0, 1.0)
        x.setflags(write=False)
        s.setflags(write=False)
        h = None if hazard is None else np.asarray(hazard, float)
        object.__setattr__(self, "ages", x)
        object.__setattr__(self, "F", s)
        object.__setattr__(self, "hazard", h)

    @classmethod
    def from_counts(cls, ages: Sequence[float], survivors: Sequence[float]) -> "LifeTable":
        """Table from survivor counts, the first being the births."""
        n = np.asarray(survivors, float)
        return cls(ages, n / n[0])

    @property
    def terminal(self) -> float:
        return float(self.ages[-1])

    @property
    def tail_rate(self) -> float:
        """Exponential rate continuing ``F`` past the last age (0 when ``F`` ends at 0)."""
        F0, F1 = self.F[-2], self.F[-1]
        if F1 <= 0:
            return 0.0
        if F1 >= F0:
            return 0.0
        return math.log(F0 / F1) / (self.ages[-1] - self.ages[-2])

    def survival(self, x):
        """``F`` at arbitrary ages."""
        x = np.asarray(x, float)
        out = np.empty_like(x)
        ages, F = self.ages, self.F
        flat = x.ravel()
        res = out.ravel()
        idx = np.clip(np.searchsorted(ages, flat, side="right") - 1, 0, ages.size - 2)
        for k, (xi, i) in enumerate(zip(flat, idx)):
            if xi < 0:
                raise DomainError("negative age")
            if xi >= ages[-1]:
                res[k] = self._tail(xi)
                continue
            a, b, fa, fb = ages[i], ages[i + 1], F[i], F[i + 1]
            u = (xi - a) / (b - a)
            res[k] = fa * (fb / fa) ** u if fa > 0 and fb > 0 else fa + u * (fb - fa)
        return float(out) if out.ndim == 0 else out

    def _tail(self, x: float) -> float:
        F1 = self.F[-1]
        if F1 <= 0:
            return 0.0
        lam = self.tail_rate
        if lam <= 0:
            raise DomainError("table is truncated before survival reaches zero")
        return F1 * math.exp(-lam * (x - self.ages[-1]))

    def _segment_integral(self, a: float, b: float, fa: float, fb: float) -> float:
        h = b - a
        if fa <= 0 or fb <= 0:
            return 0.5 * h * (fa + fb)
        if abs(fa - fb) <= 1e-15 * fa:
            return h * fa
        return h * (fa - fb) / math.log(fa / fb)

    def integral(self, x1: float = 0.0, x2: float = math.inf) -> float:
        """``int_{x1}^{x2} F dx`` under the table's interpolation."""
        if x2 < x1:
            return -self.integral(x2, x1)
        return self._cum(x2) - self._cum(x1)

    @cached_property
    def _node_cum(self) -> np.ndarray:
        c = [0.0]
        for i in range(self.ages.size - 1):
            c.append(c[-1] + self._segment_integral(self.ages[i], self.ages[i + 1],
                                                    self.F[i], self.F[i + 1]))
        return np.array(c)

    def _cum(self, x: float) -> float:
        if x < 0:
            raise DomainError("negative age")
        cum = self._node_cum
        if x >= self.ages[-1]:
            F1 = self.F[-1]
            if F1 <= 0:
                return float(cum[-1])
            lam = self.tail_rate
            if lam <= 0:
                raise DomainError("table is truncated before survival reaches zero")
            if math.isinf(x):
                return float(cum[-1] + F1 / lam)
            return float(cum[-1] + F1 * (1 - math.exp(-lam * (x - self.ages[-1]))) / lam)
        i = int(np.searchsorted(self.ages, x, side="right") - 1)
        return float(cum[i] + self._segment_integral(self.ages[i], x, self.F[i],
                                                     self.survival(x)))

    def moment_integral(self) -> float:
        """``int_0^inf x F dx`` (Gauss-Legendre on each segment plus the exact tail)."""
        total = 0.0
        for i in range(self.ages.size - 1):
            a, b = self.ages[i], self.ages[i + 1]
            xs = 0.5 * (b - a) * _GL_X + 0.5 * (a + b)
            total += 0.5 * (b - a) * float(np.sum(_GL_W * xs * self.survival(xs)))
        F1 = self.F[-1]
        if F1 > 0:
            lam = self.tail_rate
            if lam <= 0:
                raise DomainError("table is truncated before survival reaches zero")
            xn = self.ages[-1]
            total += F1 * (xn / lam + 1 / lam**2)
        return total


def survival_from_hazard(ages: Sequence[float], hazard: Sequence[float]) -> LifeTable:
    """``F(x) = exp(-int_0^x f)`` by the trapezoid rule on the grid."""
    x = np.asarray(ages, float)
    f = np.asarray(hazard, float)
    if x.shape != f.shape:
        raise DomainError("one hazard value per age is required")
    if np.any(f < 0):
        raise DomainError("hazard must be non-negative")
    H = np.concatenate([[0.0], np.cumsum(0.5 * (f[1:] + f[:-1]) * np.diff(x))])
    return LifeTable(x, np.exp(-H), f)


def exponential_table(lam: float, ages: Sequence[float] | None = None) -> LifeTable:
    """Constant hazard ``lam``: ``F = exp(-lam x)``."""
    if lam < 0:
        raise DomainError("hazard must be non-negative")
    x = standard_ages() if ages is None else np.asarray(ages, float)
    return LifeTable(x, np.exp(-lam * x), np.full(x.shape, float(lam)))


def synthetic_life_table(infant: float = 0.25, infant_scale: float = 1.8, background: float = 0.004,
                         senescence: float = 3e-5, growth: float = 0.095,
                         ages: Sequence[float] | None = None) -> LifeTable:
    """Table with hazard ``A exp(-x/tau) + B + C exp(D x)``.

    The defaults give heavy early mortality, so that the remaining mean
    life peaks between ages 5 and 6. ``F`` uses the closed-form
    cumulative hazard.
    """
    x = standard_ages() if ages is None else np.asarray(ages, float)
    A, tau, B, C, D = infant, infant_scale, background, senescence, growth
    H = A * tau * (1 - np.exp(-x / tau)) + B * x + C / D * np.expm1(D * x)
    f = A * np.exp(-x / tau) + B + C * np.exp(D * x)
    return LifeTable(x, np.exp(-H), f)


def mean_life(table: LifeTable, x: float = 0.0) -> float:
    """Remaining mean life ``(1/F(x)) int_x^inf F``."""
    Fx = table.survival(x)
    if Fx <= 0:
        raise DomainError("nobody survives to this age")
    return table.integral(x) / Fx


def probable_life(table: LifeTable, x: float = 0.0) -> float:
    """Median remaining life ``xi`` with ``F(x + xi) = F(x) / 2``."""
    Fx = table.survival(x)
    if Fx <= 0:
        raise DomainError("nobody survives to this age")
    target = 0.5 * Fx
    if table.F[-1] > target and table.tail_rate <= 0:
        raise DomainError("table ends before survival halves")
    hi = table.terminal
    while table.survival(hi) > target:
        hi = 2 * hi + 1
    if table.survival(x) == target:
        return 0.0
    root = optimize.brentq(lambda y: table.survival(y) - target, x, hi, xtol=1e-12)
    return root - x


def yearly_danger(table: LifeTable, age: float) -> float:
    """Chance of dying within the year, ``(F(age) - F(age+1)) / F(age)``."""
    if age + 1 > table.terminal + TOL:
        raise DomainError("age + 1 lies past the table")
    Fa = table.survival(age)
    if Fa <= 0:
        raise DomainError("nobody survives to this age")
    return (Fa - table.survival(age + 1)) / Fa


def delete_cause(table: LifeTable, cause_table: LifeTable, tol: float = 1e-9) -> LifeTable:
    """Survival with one independent cause removed, ``F / F1``."""
    F1 = np.asarray(cause_table.survival(table.ages))
    F = table.F
    ratio = np.divide(F, F1, out=np.zeros_like(F), where=F1 > 0)
    if np.any(ratio > 1 + tol):
        raise DomainError("cause survival falls below total survival")
    ratio = np.minimum(ratio, 1.0)
    # keep the result non-increasing despite rounding
    ratio = np.minimum.accumulate(ratio)
    haz = None
    if table.hazard is not None and cause_table.hazard is not None \
            and np.array_equal(table.ages, cause_table.ages):
        haz = table.hazard - cause_table.hazard
    return LifeTable(table.ages, ratio, haz)


def combine_causes(table: LifeTable, cause_table: LifeTable) -> LifeTable:
    """Survival under two independent sets of causes, ``F F1``."""
    F1 = np.asarray(cause_table.survival(table.ages))
    return LifeTable(table.ages, table.F * F1)


def deaths_by_age(table: LifeTable, N: float) -> np.ndarray:
    """Yearly deaths by year of age in a stationary population of ``N`` births a year.

    ``D_0 = N [1 - int_0^1 F]`` and
    ``D_k = N [int_{k-1}^k F - int_k^{k+1} F]``; they telescope to ``N``.
    The last entry holds the remaining deaths past the table.
    """
    if N < 0:
        raise DomainError("births must be non-negative")
    K = int(math.ceil(table.terminal)) + 1
    lived = np.array([table.integral(k, k + 1) if k < table.terminal or table.F[-1] > 0
                      else 0.0 for k in range(K)])
    D = np.empty(K + 1)
    D[0] = N * (1 - lived[0])
    D[1:K] = N * (lived[:-1] - lived[1:])
    D[K] = N * lived[-1]
    return D


@dataclass(frozen=True)
class StationaryPopulation:
    births: float
    total: float
    mean_life: float
    mean_age: float
    median_age: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def stationary_population(table: LifeTable, N: float) -> StationaryPopulation:
    """Total ``P = N int F``, mean age ``int x F / int F`` and median age."""
    M = table.integral(0.0)
    mean_age = table.moment_integral() / M
    half = 0.5 * M
    hi = table.terminal
    while table.integral(0.0, hi) < half:
        hi = 2 * hi + 1
    median = optimize.brentq(lambda y: table.integral(0.0, y) - half, 0.0, hi, xtol=1e-12)
    return StationaryPopulation(N, N * M, M, mean_age, median)


@dataclass(frozen=True)
class SexRatioReport:
    pooled_p: float
    weight: float
    unit_m: float
    unit_t: float
    unit_P: float
    reversal: float
    expected_reversals: float | None
    per_series: tuple
    comparisons: tuple

    def as_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in self.__dict__.items()}


def sex_ratio_report(series: Sequence[BinomialSeries], unit_m: float | None = None,
                     p: float | None = None) -> SexRatioReport:
    """Male-birth chance across series, with the chance of a female excess per unit.

    ``n`` counts male births among ``m``. The pooled chance has weight
    ``m sqrt(m) / sqrt(2 n (m - n))``. For a unit of ``unit_m`` births
    (default: the mean series size) at chance ``p`` (default: pooled),
    ``t = (p - 1/2) sqrt(m / (2 p q))`` and a female excess has chance
    ``(1 - P) / 2``. Each series is compared with the pool of the others.
    """
    if not series:
        raise DomainError("no series")
    m = sum(s.m for s in series)
    n = sum(s.n for s in series)
    pooled = BinomialSeries(m, n, "pooled")
    pp = n / m if p is None else float(p)
    if not 0 < pp < 1:
        raise DomainError("p must lie in (0, 1)")
    um = m / len(series) if unit_m is None else float(unit_m)
    t = abs(pp - 0.5) * math.sqrt(um / (2 * pp * (1 - pp)))
    P = p_of_t(t)
    rev = 0.5 * (1 - P) if pp >= 0.5 else 0.5 * (1 + P)
    per = []
    for s in series:
        ts = abs(s.ratio - 0.5) * math.sqrt(s.m / (2 * s.ratio * (1 - s.ratio)))
        Ps = p_of_t(ts)
        per.append({"label": s.label, "m": s.m, "n": s.n, "ratio": s.ratio,
                    "t": ts, "P": Ps, "reversal": 0.5 * (1 - Ps) if s.ratio >= 0.5
                    else 0.5 * (1 + Ps)})
    comps = []
    if len(series) >= 2:
        for i, s in enumerate(series):
            rest = BinomialSeries(m - s.m, n - s.n, "rest")
            c = compare_two_series(s, rest)
            comps.append({"label": s.label, **c.as_dict()})
    return SexRatioReport(pp, weight_of_chance(pooled), um, t, P, rev,
                          rev * len(series) if len(series) > 1 else None,
                          tuple(per), tuple(comps))
