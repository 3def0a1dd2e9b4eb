"""The deviation function ``P(t) = (2/sqrt(pi)) int_0^t exp(-u^2) du``.

``P(t)`` is the probability that a standardized deviation lies inside
``+-t``; repeated-trial limits put ``t = l sqrt(m / (2 p (1-p)))``.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np
from scipy import special

from .combinatorics import DomainError

__all__ = [
    "p_of_t",
    "t_of_p",
    "correction_term",
    "p_corrected",
    "emit_table",
    "T_HALF",
    "LANDMARKS",
]


def p_of_t(t):
    """Probability that a deviation stays within ``+-t`` standardized units.

    Accepts scalars or arrays; negative ``t`` is rejected.

    >>> round(p_of_t(3.0), 6)
    0.999978
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("t must be non-negative")
    if arr.ndim == 0:
        return math.erf(float(arr))
    return special.erf(arr)


def t_of_p(P):
    """Inverse of :func:`p_of_t` for ``0 <= P < 1``.

    >>> round(t_of_p(0.5), 6)
    0.476936
    """
    arr = np.asarray(P, dtype=float)
    if np.any(arr < 0) or np.any(arr >= 1) or np.any(np.isnan(arr)):
        raise DomainError("P must satisfy 0 <= P < 1")
    out = special.erfinv(arr)
    if arr.ndim == 0:
        return float(out)
    return out


def correction_term(t: float, m: float, p: float) -> float:
    """Second term of the repeated-trial interval probability.

    ``exp(-t^2) / sqrt(2 pi p (1-p) m)``; it accounts for the two end
    terms of a discrete window and is of order ``1/sqrt(m)``.
    """
    if not 0 < p < 1:
        raise DomainError("p must lie strictly between 0 and 1")
    if m <= 0:
        raise DomainError("m must be positive")
    return math.exp(-t * t) / math.sqrt(2.0 * math.pi * p * (1.0 - p) * m)


def p_corrected(t: float, m: float, p: float) -> float:
    """Main term plus :func:`correction_term`."""
    return p_of_t(t) + correction_term(t, m, p)


def emit_table(step: float = 0.01, t_max: float = 3.0) -> np.ndarray:
    """Rows ``(t, P)`` for ``t = 0, step, ..., t_max`` with ``P`` to 6 decimals.

    Returns
    -------
    ndarray of shape (n, 2)
    """
    if step <= 0:
        raise DomainError("step must be positive")
    n = int(round(t_max / step))
    t = np.round(np.arange(n + 1) * step, 10)
    return np.column_stack([t, np.round(special.erf(t), 6)])


def table_rows(step: float = 0.01, t_max: float = 3.0) -> Iterable[str]:
    """CSV lines for :func:`emit_table`, header included."""
    yield "t,P"
    for t, P in emit_table(step, t_max):
        yield f"{t:.2f},{P:.6f}"


T_HALF = t_of_p(0.5)

#: Named landmark values quoted alongside the printed table.
LANDMARKS = {
    "t_half": T_HALF,
    "P_at_3": p_of_t(3.0),
    "tail_at_2": 1.0 - p_of_t(2.0),
    "t_19999_20000": t_of_p(19999 / 20000),
}
