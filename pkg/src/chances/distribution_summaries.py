"""Mean, median and modulus of convergence of probability curves.

The modulus of convergence of a law is ``g = 1 / sqrt(2 Var)``; the mean of
``m`` draws stays within ``+-l`` of the true mean with probability
``P(t)``, where ``t = l g sqrt(m)``.

Angles are handled internally in radians. The latitude law is summarised
with a quarter circumference as unit so that its modulus is dimensionless.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize

from .combinatorics import DomainError
from .deviation_function import t_of_p
from .repetition_laws import SmallSampleWarning

__all__ = [
    "DensityModel",
    "LawSummary",
    "uniform_law",
    "linear_law",
    "quadratic_law",
    "latitude_law",
    "difference_of_uniforms_law",
    "sum_of_uniforms_law",
    "tabulated_law",
    "two_point_law",
    "summarize",
    "latitude_law_summary",
    "mean_deviation_limit",
    "difference_tail",
    "weighted_difference_tail",
    "linear_combination_mean",
    "mixture",
    "mixture_modulus",
    "chance_mixture_stats",
    "ChanceMixture",
    "bienayme_series_limit",
    "to_dms",
    "from_dms",
]

_QUAD_TOL = 1e-11


@dataclass(frozen=True)
class DensityModel:
    """A probability law on ``[a, b]``.

    Attributes
    ----------
    kind : str
        Family name.
    a, b : float
        Support.
    pdf : callable
        Vectorised density.
    moments : tuple or None
        Closed-form ``(mean, second moment, median)`` when known.
    atoms : tuple
        ``((x, mass), ...)`` for purely discrete laws; ``pdf`` is ignored.
    components : tuple
        ``((weight, model), ...)`` for mixtures.
    """

    kind: str
    a: float
    b: float
    pdf: Callable | None = None
    moments: tuple | None = None
    atoms: tuple = ()
    components: tuple = field(default=(), repr=False)

    def cdf(self, x: float) -> float:
        if self.atoms:
            return float(sum(w for xi, w in self.atoms if xi <= x))
        if x <= self.a:
            return 0.0
        if x >= self.b:
            return 1.0
        if self.components:
            return sum(k * c.cdf(x) for k, c in self.components)
        return integrate.quad(self.pdf, self.a, x, epsabs=_QUAD_TOL, limit=200)[0]

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draws by inverse transform on a fine grid of the cumulative."""
        if self.atoms:
            xs = np.array([x for x, _ in self.atoms])
            ws = np.array([w for _, w in self.atoms])
            return rng.choice(xs, size=size, p=ws / ws.sum())
        grid = np.linspace(self.a, self.b, 20001)
        dens = np.maximum(self.pdf(grid), 0.0)
        cum = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(grid))])
        cum /= cum[-1]
        return np.interp(rng.random(size), cum, grid)


@dataclass(frozen=True)
class LawSummary:
    """Mean ``M``, median and modulus ``g`` of a law."""

    mean: float
    median: float
    modulus: float

    @property
    def variance(self) -> float:
        return 1.0 / (2.0 * self.modulus**2)


def _poly_pdf(coeffs, lo=0.0, hi=1.0):
    def f(x):
        x = np.asarray(x, dtype=float)
        v = np.polyval(coeffs, x)
        return np.where((x >= lo) & (x <= hi), v, 0.0)
    return f


def uniform_law(a: float = 0.0, b: float = 1.0) -> DensityModel:
    if not b > a:
        raise DomainError("need b > a")
    h = 1.0 / (b - a)

    def f(x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= a) & (x <= b), h, 0.0)
    mid = 0.5 * (a + b)
    return DensityModel("uniform", a, b, f, (mid, (a * a + a * b + b * b) / 3.0, mid))


def linear_law() -> DensityModel:
    """Density ``2x`` on ``[0, 1]``."""
    return DensityModel("linear", 0.0, 1.0, _poly_pdf([2.0, 0.0]), (2 / 3, 1 / 2, 2**-0.5))


def quadratic_law() -> DensityModel:
    """Density ``3x^2`` on ``[0, 1]``."""
    return DensityModel("quadratic", 0.0, 1.0, _poly_pdf([3.0, 0.0, 0.0]),
                        (3 / 4, 3 / 5, 2 ** (-1 / 3)))


def latitude_law() -> DensityModel:
    """Latitude of a uniform point on the sphere, sign ignored.

    Unit: a quarter circumference, so the support is ``[0, 1]`` and the
    density is ``(pi/2) cos(pi x / 2)``.
    """
    h = math.pi / 2

    def f(x):
        x = np.asarray(x, dtype=float)
        return np.where((x >= 0) & (x <= 1), h * np.cos(h * x), 0.0)
    mean = 1.0 - 1.0 / h
    second = (h * h - 2.0) / (h * h)
    return DensityModel("latitude", 0.0, 1.0, f, (mean, second, 1.0 / 3.0))


def difference_of_uniforms_law() -> DensityModel:
    """Law of ``|x - y|`` for independent uniforms: density ``2(1 - u)``."""
    return DensityModel("difference", 0.0, 1.0, _poly_pdf([-2.0, 2.0]),
                        (1 / 3, 1 / 6, 1.0 - 2**-0.5))


def sum_of_uniforms_law() -> DensityModel:
    """Law of ``x + y`` for independent uniforms: triangle on ``[0, 2]``."""
    def f(x):
        x = np.asarray(x, dtype=float)
        return np.clip(1.0 - np.abs(x - 1.0), 0.0, None)
    return DensityModel("triangular", 0.0, 2.0, f, (1.0, 7 / 6, 1.0))


def two_point_law(a: float, b: float) -> DensityModel:
    """Equal masses at ``a`` and ``b``; the law of smallest modulus on ``[a, b]``."""
    return DensityModel("two-point", a, b, atoms=((a, 0.5), (b, 0.5)))


def tabulated_law(x: Sequence[float], y: Sequence[float]) -> DensityModel:
    """Piecewise-linear density through the points ``(x_i, y_i)``.

    The table is renormalised when its integral is within ``1e-6`` of
    one and rejected otherwise.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape or x.size < 2:
        raise DomainError("need matching one-dimensional tables of length >= 2")
    if np.any(np.diff(x) <= 0):
        raise DomainError("abscissae must be strictly increasing")
    if np.any(y < 0):
        raise DomainError("ordinates must be non-negative")
    area = float(np.trapezoid(y, x))
    if abs(area - 1.0) > 1e-6:
        raise DomainError(f"tabulated density integrates to {area}, not 1")
    y = y / area
    # Exact moments of a piecewise-linear density
    x0, x1, y0, y1 = x[:-1], x[1:], y[:-1], y[1:]
    h = x1 - x0
    m1 = np.sum(h * (y0 * (2 * x0 + x1) + y1 * (x0 + 2 * x1)) / 6.0)
    m2 = np.sum(h * (y0 * (3 * x0**2 + 2 * x0 * x1 + x1**2)
                     + y1 * (x0**2 + 2 * x0 * x1 + 3 * x1**2)) / 12.0)
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (y0 + y1) * h)])
    median = _table_median(x, cum)

    def f(t):
        t = np.asarray(t, dtype=float)
        return np.interp(t, x, y, left=0.0, right=0.0)
    return DensityModel("tabulated", float(x[0]), float(x[-1]), f, (m1, m2, median))


def _table_median(x: np.ndarray, cum: np.ndarray) -> float:
    # Flat stretches of the cumulative at 1/2 resolve to their midpoint
    at_half = np.flatnonzero(np.isclose(cum, 0.5, atol=1e-12))
    if at_half.size:
        return float(0.5 * (x[at_half[0]] + x[at_half[-1]]))
    return float(np.interp(0.5, cum, x))


def _moments_by_quadrature(model: DensityModel) -> tuple[float, float]:
    f = model.pdf
    m0 = integrate.quad(f, model.a, model.b, epsabs=_QUAD_TOL, limit=200)[0]
    if abs(m0 - 1.0) > 1e-6:
        raise DomainError(f"density integrates to {m0}, not 1")
    m1 = integrate.quad(lambda x: x * f(x), model.a, model.b, epsabs=_QUAD_TOL, limit=200)[0]
    m2 = integrate.quad(lambda x: x * x * f(x), model.a, model.b, epsabs=_QUAD_TOL, limit=200)[0]
    return m1 / m0, m2 / m0


def summarize(model: DensityModel, closed_form: bool = True) -> LawSummary:
    """Mean, median and modulus of convergence of ``model``.

    Closed forms are used for built-in families; ``closed_form=False``
    forces quadrature, which serves as an independent check.
    """
    if model.atoms:
        xs = np.array([x for x, _ in model.atoms])
        ws = np.array([w for _, w in model.atoms])
        mean = float(ws @ xs)
        var = float(ws @ (xs - mean) ** 2)
        order = np.argsort(xs)
        cum = np.cumsum(ws[order])
        k = int(np.searchsorted(cum, 0.5 - 1e-12))
        median = float(xs[order][k]) if not math.isclose(cum[k], 0.5) else float(
            0.5 * (xs[order][k] + xs[order][k + 1]))
        return LawSummary(mean, median, 1.0 / math.sqrt(2.0 * var))
    if model.components:
        ks = [k for k, _ in model.components]
        subs = [summarize(c, closed_form) for _, c in model.components]
        mean = sum(k * s.mean for k, s in zip(ks, subs))
        g = mixture_modulus(ks, subs)
        median = optimize.brentq(lambda x: model.cdf(x) - 0.5, model.a, model.b, xtol=1e-13)
        return LawSummary(mean, median, g)
    if closed_form and model.moments is not None:
        mean, second, median = model.moments
    else:
        mean, second = _moments_by_quadrature(model)
        median = optimize.brentq(lambda x: model.cdf(x) - 0.5, model.a, model.b, xtol=1e-13)
    var = second - mean * mean
    if var <= 0:
        raise DomainError("degenerate law has no finite modulus")
    return LawSummary(float(mean), float(median), 1.0 / math.sqrt(2.0 * var))


def latitude_law_summary() -> LawSummary:
    """Summary of :func:`latitude_law`, quarter-circumference units.

    Multiply ``mean`` and ``median`` by 90 for degrees.
    """
    return summarize(latitude_law())


def mean_deviation_limit(summary: LawSummary, m: int, P: float) -> float:
    """Half-width ``l = t / (g sqrt(m))`` for the mean of ``m`` draws."""
    if m < 100:
        warnings.warn(f"asymptotic formula used with only {m} draws", SmallSampleWarning,
                      stacklevel=2)
    return t_of_p(P) / (summary.modulus * math.sqrt(m))


def difference_tail(a: float) -> float:
    """``P(|x - y| >= a)`` for independent uniforms on ``[0, 1]``: ``(1 - a)^2``."""
    if not 0 <= a <= 1:
        raise DomainError("a must lie in [0, 1]")
    return (1.0 - a) ** 2


def weighted_difference_tail(a: float) -> float:
    """``P(|x - y| >= a)`` when both densities are ``2(1 - x)`` on ``[0, 1]``.

    Closed form ``(1 - a)^3 (1 + a/3)``.
    """
    if not 0 <= a <= 1:
        raise DomainError("a must lie in [0, 1]")
    return (1.0 - a) ** 3 * (1.0 + a / 3.0)


def linear_combination_mean(b: float, coeffs: Sequence[float], means: Sequence[float]) -> float:
    """Mean of ``b + sum c_i x_i``: ``b + sum c_i M_i``."""
    if len(coeffs) != len(means):
        raise DomainError("coefficient and mean lists differ in length")
    return float(b + sum(c * m for c, m in zip(coeffs, means)))


def _check_weights(ks: Sequence[float]) -> np.ndarray:
    k = np.asarray(ks, dtype=float)
    if np.any(k < 0) or abs(k.sum() - 1.0) > 1e-9:
        raise DomainError("weights must be non-negative and sum to 1")
    return k


def mixture_modulus(ks: Sequence[float], summaries: Sequence[LawSummary]) -> float:
    """Modulus of a mixture from its components.

    ``1/(2 g^2) = sum k_i/(2 g_i^2) + sum_{i<j} k_i k_j (M_i - M_j)^2``.
    """
    k = _check_weights(ks)
    within = sum(ki / (2.0 * s.modulus**2) for ki, s in zip(k, summaries))
    between = 0.0
    for i in range(len(k)):
        for j in range(i + 1, len(k)):
            between += k[i] * k[j] * (summaries[i].mean - summaries[j].mean) ** 2
    return 1.0 / math.sqrt(2.0 * (within + between))


def mixture(models: Sequence[DensityModel], ks: Sequence[float]) -> DensityModel:
    """Law obtained by first choosing component ``i`` with probability ``k_i``."""
    k = _check_weights(ks)
    if len(models) != len(k):
        raise DomainError("one weight per component is required")
    if any(m.atoms for m in models):
        raise DomainError("mixtures of discrete laws are not supported")
    comps = tuple((float(ki), mdl) for ki, mdl in zip(k, models))

    def f(x):
        return sum(ki * mdl.pdf(x) for ki, mdl in comps)
    a = min(m.a for m in models)
    b = max(m.b for m in models)
    return DensityModel("mixture", a, b, f, None, (), comps)


@dataclass(frozen=True)
class ChanceMixture:
    p_bar: float
    lhs: float
    within: float
    between: float

    @property
    def residual(self) -> float:
        """``p(1-p) - within - between``; zero up to rounding."""
        return self.lhs - self.within - self.between

    @property
    def spread(self) -> float:
        """``sum k_i (p_bar - p_i)^2``, equal to ``between``."""
        return self.between


def chance_mixture_stats(ps: Sequence[float], ks: Sequence[float]) -> ChanceMixture:
    """Mean chance of a mixture and the variance split behind it.

    ``p(1-p) = sum k_i p_i (1 - p_i) + sum_{i<j} k_i k_j (p_i - p_j)^2``.
    """
    k = _check_weights(ks)
    p = np.asarray(ps, dtype=float)
    if p.shape != k.shape:
        raise DomainError("one weight per chance is required")
    p_bar = float(k @ p)
    within = float(k @ (p * (1.0 - p)))
    diff = p[:, None] - p[None, :]
    between = float(0.5 * np.sum(np.outer(k, k) * diff**2))
    return ChanceMixture(p_bar, p_bar * (1.0 - p_bar), within, between)


def bienayme_series_limit(ps: Sequence[float], ks: Sequence[float], m: int, m1: int,
                          P: float) -> float:
    """Limit on the overall ratio when each block of ``m1`` trials uses a random urn.

    ``t = l sqrt(m / (2 [p(1-p) + (m1 - 1) sum k_i (p - p_i)^2]))``.
    """
    if m1 < 1:
        raise DomainError("m1 must be at least 1")
    if m % m1:
        raise DomainError("m must be a multiple of m1")
    s = chance_mixture_stats(ps, ks)
    var = s.lhs + (m1 - 1) * s.spread
    return t_of_p(P) * math.sqrt(2.0 * var / m)


def to_dms(deg: float) -> tuple[int, int, float]:
    """Degrees to ``(degrees, minutes, seconds)``."""
    sign = -1 if deg < 0 else 1
    deg = abs(deg)
    d = int(deg)
    rem = (deg - d) * 60.0
    mnt = int(rem)
    sec = (rem - mnt) * 60.0
    return sign * d, mnt, sec


def from_dms(d: float, m: float = 0.0, s: float = 0.0) -> float:
    sign = -1.0 if d < 0 else 1.0
    return sign * (abs(d) + m / 60.0 + s / 3600.0)
