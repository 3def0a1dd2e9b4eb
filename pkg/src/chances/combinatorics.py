"""Exact counting primitives and the Stirling series.

Counts are Python integers (arbitrary precision), so values with hundreds
of digits stay exact. Logarithms are base 10, as in printed factorial
tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "DomainError",
    "LogCount",
    "binomial",
    "multiset_count",
    "factorial",
    "log_factorial",
    "stirling_log10_factorial",
    "piquet_aces_probability",
]

_LOG10_E = math.log10(math.e)
_LOG10_SQRT_2PI = 0.5 * math.log10(2.0 * math.pi)


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def _check_natural(name: str, x: int) -> None:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise DomainError(f"{name} must be a non-negative integer, got {x!r}")


def binomial(m: int, n: int) -> int:
    """Number of combinations of ``n`` elements drawn from ``m``.

    Parameters
    ----------
    m, n : int
        Non-negative integers with ``n <= m``.

    Returns
    -------
    int
        Exact ``C(m, n)``.

    Examples
    --------
    >>> binomial(90, 3)
    117480
    """
    _check_natural("m", m)
    _check_natural("n", n)
    if n > m:
        raise DomainError(f"n={n} exceeds m={m}")
    return math.comb(m, n)


def multiset_count(m: int, n: int) -> int:
    """Combinations of ``n`` elements from ``m`` kinds, repetition allowed.

    Equals ``m (m+1) ... (m+n-1) / n!`` which is ``C(m+n-1, n)``.

    >>> multiset_count(6, 2), multiset_count(6, 3)
    (21, 56)
    """
    _check_natural("m", m)
    _check_natural("n", n)
    if m < 1:
        raise DomainError("m must be at least 1")
    return math.comb(m + n - 1, n)


def factorial(x: int) -> int:
    """Exact ``x!``."""
    _check_natural("x", x)
    return math.factorial(x)


def stirling_log10_factorial(x: float, terms: int = 2) -> float:
    """Base-10 logarithm of ``x!`` from the Stirling series.

    The natural-log series is
    ``ln sqrt(2 pi) + (x + 1/2) ln x - x + 1/(12 x) - 1/(360 x^3)``.
    The series diverges if continued, so it is never extended past the
    ``1/(360 x^3)`` term.

    Parameters
    ----------
    x : float
        Positive argument.
    terms : int
        Number of correction terms kept after the leading part: 0, 1 or 2.
    """
    if x <= 0:
        raise DomainError("Stirling series needs x > 0")
    if terms not in (0, 1, 2):
        raise DomainError("terms must be 0, 1 or 2")
    ln = (x + 0.5) * math.log(x) - x
    if terms >= 1:
        ln += 1.0 / (12.0 * x)
    if terms >= 2:
        ln -= 1.0 / (360.0 * x**3)
    return _LOG10_SQRT_2PI + ln * _LOG10_E


@dataclass(frozen=True)
class LogCount:
    """Base-10 logarithm of a count.

    Attributes
    ----------
    log10_value : float
        Best available value (exact when the count is computable).
    stirling : float
        Stirling-series value with the full truncated series.
    exact : int or None
        The count itself for ``x <= 170``; ``None`` above.
    """

    log10_value: float
    stirling: float
    exact: int | None = None


def _exact_log10_int(n: int) -> float:
    # math.log10 handles arbitrarily large ints without overflow
    return math.log10(n)


def log_factorial(x: int) -> LogCount:
    """``lg x!`` as a :class:`LogCount`.

    ``x = 0`` returns zero (``0! = 1``).

    >>> round(log_factorial(10).log10_value, 7)
    6.559763
    """
    _check_natural("x", x)
    if x == 0:
        return LogCount(0.0, 0.0, 1)
    exact_value = math.lgamma(x + 1) * _LOG10_E
    count = None
    if x <= 170:
        count = math.factorial(x)
        exact_value = _exact_log10_int(count)
    return LogCount(exact_value, stirling_log10_factorial(x), count)


def log10_factorial_ratio(num: list[int], den: list[int]) -> float:
    """``lg( prod num_i! / prod den_j! )`` evaluated exactly via lgamma."""
    s = sum(math.lgamma(k + 1) for k in num) - sum(math.lgamma(k + 1) for k in den)
    return s * _LOG10_E


@dataclass(frozen=True)
class PiquetResult:
    exact: Fraction
    stirling_leading: float
    stirling_corrected: float

    @property
    def value(self) -> float:
        return float(self.exact)


def piquet_aces_probability() -> PiquetResult:
    """Chance that four aces sit in a twelve-card piquet hand of 32 cards.

    Exact value ``28! 12! / (32! 8!) = 99/7192``, together with two
    Stirling evaluations: leading terms only, and with the ``1/(12x)``
    corrections.
    """
    exact = Fraction(math.factorial(28) * math.factorial(12),
                     math.factorial(32) * math.factorial(8))

    def approx(terms: int) -> float:
        lg = (stirling_log10_factorial(28, terms) + stirling_log10_factorial(12, terms)
              - stirling_log10_factorial(32, terms) - stirling_log10_factorial(8, terms))
        return 10.0**lg

    return PiquetResult(exact, approx(0), approx(1))
