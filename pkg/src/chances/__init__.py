"""Classical calculus of chances: exact combinatorics, deviation laws,
inference from ratios, combination of measurements, games, insurance,
judgements, life tables, comet orbits and a seeded simulation oracle.
"""

from .combinatorics import DomainError, binomial, log_factorial
from .deviation_function import p_corrected, p_of_t, t_of_p

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "binomial",
    "log_factorial",
    "p_of_t",
    "t_of_p",
    "p_corrected",
    "__version__",
]
