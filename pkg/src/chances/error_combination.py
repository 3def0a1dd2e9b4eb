"""Combining measurements: weighted means, propagated limits and least squares.

Every probabilistic limit assumes errors symmetric about zero. A series
flagged ``symmetric=False`` carries a constant error of unknown size; the
functions then return point estimates and refuse to attach limits.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import linalg

from .combinatorics import DomainError
from .deviation_function import p_of_t, t_of_p
from .inference import empirical_modulus

__all__ = [
    "MeasurementSeries",
    "ConditionRow",
    "AsymmetricErrorWarning",
    "WeightedMean",
    "combine_weighted_means",
    "propagate_linear",
    "numeric_sensitivities",
    "cotes_estimate",
    "cotes_weight",
    "SingleUnknownFit",
    "laplace_ls_single",
    "heteroscedastic_ls_single",
    "MultiFit",
    "least_squares_multi",
    "SingularSystemError",
]

PIVOT_TOL = 1e-12


class SingularSystemError(DomainError):
    """The normal equations have no unique solution."""


class AsymmetricErrorWarning(UserWarning):
    """Limits were requested for a series declared to carry a constant error."""


@dataclass(frozen=True)
class MeasurementSeries:
    """Repeated measures of one magnitude.

    ``gamma`` defaults to the empirical modulus of ``values``.
    ``symmetric=False`` declares a constant error, which voids every
    probabilistic limit.
    """

    values: tuple
    label: str = ""
    gamma: float | None = None
    symmetric: bool = True

    def __init__(self, values: Sequence[float], label: str = "", gamma: float | None = None,
                 symmetric: bool = True):
        vals = tuple(float(v) for v in values)
        if not vals:
            raise DomainError("measurement series must be non-empty")
        if gamma is not None and not gamma > 0:
            raise DomainError("gamma must be positive")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "symmetric", symmetric)

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    @property
    def modulus(self) -> float:
        if self.gamma is not None:
            return self.gamma
        return empirical_modulus(self.values).gamma


@dataclass(frozen=True)
class ConditionRow:
    """One condition ``delta = C . x - Delta``."""

    C: tuple
    Delta: float

    def __init__(self, C: Sequence[float] | float, Delta: float):
        coeffs = (float(C),) if np.isscalar(C) else tuple(float(c) for c in C)
        if not any(coeffs):
            raise DomainError("a condition row needs a nonzero coefficient")
        object.__setattr__(self, "C", coeffs)
        object.__setattr__(self, "Delta", float(Delta))


@dataclass(frozen=True)
class WeightedMean:
    mean: float
    total_weight_sq: float | None

    def limit(self, P: float) -> float:
        """Half-width ``l`` with ``t = l sqrt(sum m gamma^2)``."""
        if self.total_weight_sq is None:
            raise DomainError("limits are void under a constant error")
        return t_of_p(P) / math.sqrt(self.total_weight_sq)

    def probability(self, l: float) -> float:
        if self.total_weight_sq is None:
            raise DomainError("limits are void under a constant error")
        return p_of_t(l * math.sqrt(self.total_weight_sq))


def combine_weighted_means(series: Sequence[MeasurementSeries]) -> WeightedMean:
    """Mean of partial means weighted by ``m_i gamma_i^2`` (square of weight)."""
    if not series:
        raise DomainError("nothing to combine")
    w = np.array([s.m * s.modulus**2 for s in series])
    a = np.array([s.mean for s in series])
    if np.any(np.isinf(w)):
        inf = np.isinf(w)
        return WeightedMean(float(a[inf].mean()), math.inf)
    total = float(w.sum())
    symmetric = all(s.symmetric for s in series)
    return WeightedMean(float(np.dot(w, a) / total), total if symmetric else None)


def propagate_linear(C: Sequence[float], limits: Sequence[float]) -> float:
    """Limit ``sqrt(sum C_i^2 l_i^2)`` on ``delta = sum C_i delta_i``."""
    C = np.asarray(C, float)
    l = np.asarray(limits, float)
    if C.shape != l.shape:
        raise DomainError("one limit per coefficient is required")
    if np.any(l < 0):
        raise DomainError("limits must be non-negative")
    return float(np.sqrt(np.sum(C**2 * l**2)))


def numeric_sensitivities(f: Callable[..., float], point: Sequence[float],
                          steps: Sequence[float]) -> np.ndarray:
    """Forward-difference coefficients ``(f(x + h_i e_i) - f(x)) / h_i``."""
    x0 = np.asarray(point, float)
    h = np.asarray(steps, float)
    if x0.shape != h.shape:
        raise DomainError("one step per coordinate is required")
    if np.any(h == 0):
        raise DomainError("steps must be nonzero")
    f0 = f(*x0)
    out = np.empty_like(x0)
    for i in range(x0.size):
        x = x0.copy()
        x[i] += h[i]
        out[i] = (f(*x) - f0) / h[i]
    return out


def _single(rows: Sequence[ConditionRow]) -> tuple[np.ndarray, np.ndarray]:
    if not rows:
        raise DomainError("no condition rows")
    if any(len(r.C) != 1 for r in rows):
        raise DomainError("single-unknown rows must carry one coefficient")
    C = np.array([r.C[0] for r in rows])
    D = np.array([r.Delta for r in rows])
    return C, D


def cotes_estimate(rows: Sequence[ConditionRow]) -> float:
    """``sum Delta / sum C``; assumes the errors sum to zero."""
    C, D = _single(rows)
    s = C.sum()
    if abs(s) < PIVOT_TOL:
        raise SingularSystemError("sum of coefficients vanishes")
    return float(D.sum() / s)


def cotes_weight(rows: Sequence[ConditionRow], gamma: float) -> float:
    """Weight ``gamma sum C / sqrt(m)`` of the estimate from :func:`cotes_estimate`."""
    C, _ = _single(rows)
    return gamma * abs(C.sum()) / math.sqrt(C.size)


@dataclass(frozen=True)
class SingleUnknownFit:
    x: float
    gamma: float
    weight: float
    residual: float
    limit: float | None

    def as_dict(self) -> dict:
        return {"x": self.x, "gamma": self.gamma, "weight": self.weight,
                "residual": self.residual, "limit": self.limit}


def _sample_gamma(C: np.ndarray, D: np.ndarray) -> float:
    # sqrt(m sum C^2) / sqrt(2 [sum C^2 sum D^2 - (sum C D)^2])
    c2, d2, cd = float(C @ C), float(D @ D), float(C @ D)
    denom = c2 * d2 - cd * cd
    if denom <= 0:
        return math.inf
    return math.sqrt(C.size * c2) / math.sqrt(2.0 * denom)


def laplace_ls_single(rows: Sequence[ConditionRow], gamma: float | None = None,
                      P: float = 0.5, symmetric: bool = True) -> SingleUnknownFit:
    """Least-squares correction ``x = sum C Delta / sum C^2`` with its weight and limit.

    ``gamma`` defaults to the estimate from the rows themselves. The
    limit solves ``t = l gamma sqrt(sum C^2)``.
    """
    C, D = _single(rows)
    c2 = float(C @ C)
    x = float(C @ D) / c2
    g = _sample_gamma(C, D) if gamma is None else float(gamma)
    if not g > 0:
        raise DomainError("gamma must be positive")
    weight = g * math.sqrt(c2)
    res = float(np.sum((C * x - D) ** 2))
    limit = t_of_p(P) / weight if symmetric else None
    return SingleUnknownFit(x, g, weight, res, limit)


def heteroscedastic_ls_single(rows: Sequence[ConditionRow], gammas: Sequence[float],
                              P: float = 0.5, symmetric: bool = True) -> SingleUnknownFit:
    """Fit with a modulus per row: ``x = sum g^2 C Delta / sum g^2 C^2``."""
    C, D = _single(rows)
    g = np.asarray(gammas, float)
    if g.shape != C.shape:
        raise DomainError("one modulus per row is required")
    if np.any(g <= 0):
        raise DomainError("moduli must be positive")
    w = g**2
    s = float(np.sum(w * C * C))
    x = float(np.sum(w * C * D)) / s
    weight = math.sqrt(s)
    res = float(np.sum((C * x - D) ** 2))
    limit = t_of_p(P) / weight if symmetric else None
    return SingleUnknownFit(x, math.nan, weight, res, limit)


@dataclass(frozen=True)
class MultiFit:
    x: np.ndarray
    residual: float
    residuals: np.ndarray

    def as_dict(self) -> dict:
        return {"x": self.x.tolist(), "residual": self.residual}


def least_squares_multi(rows: Sequence[ConditionRow]) -> MultiFit:
    """Minimize ``sum (C . x - Delta)^2`` via the normal equations.

    Solved by a pivoted LU factorisation; a pivot below ``1e-12`` relative
    to the largest diagonal term marks the system singular.
    """
    if not rows:
        raise DomainError("no condition rows")
    k = len(rows[0].C)
    if any(len(r.C) != k for r in rows):
        raise DomainError("rows must share the number of unknowns")
    A = np.array([r.C for r in rows])
    b = np.array([r.Delta for r in rows])
    N = A.T @ A
    with warnings.catch_warnings():
        # singularity is judged by the pivot test below
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(N)
    scale = max(float(np.max(np.abs(np.diag(N)))), 1.0)
    if np.min(np.abs(np.diag(lu))) < PIVOT_TOL * scale:
        raise SingularSystemError("normal equations are singular")
    x = linalg.lu_solve((lu, piv), A.T @ b)
    r = A @ x - b
    return MultiFit(x, float(r @ r), r)
