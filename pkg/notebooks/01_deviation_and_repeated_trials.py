"""
The deviation function and repeated trials
==========================================

P(t) gives the chance that a ratio of repeated trials stays inside a
window of half-width ``t sqrt(2 p q / m)``. This script tabulates it,
compares the window with the exact binomial and shows how the window
narrows with ``m``.
"""

# %%
from fractions import Fraction

import numpy as np

from chances.combinatorics import log_factorial, piquet_aces_probability
from chances.deviation_function import p_of_t, t_of_p
from chances.repetition_laws import (RepeatedTrial, binomial_tail, central_mass,
                                     deviation_limit)

# %% A few values of P(t) and its inverse.
for t in (0.25, 0.5, 1.0, 2.0, 3.0):
    print(f"P({t:.2f}) = {p_of_t(t):.6f}")
print(f"t for even odds: {t_of_p(0.5):.6f}")
print(f"t for 19999/20000: {t_of_p(19999 / 20000):.6f}")

# %% Large counts stay representable on a log scale.
lf = log_factorial(1000)
print(f"1000! has about {lf.log10_value:.4f} decimal digits")
print(f"four aces at piquet: {piquet_aces_probability().exact}")

# %% The formula window against the exact binomial mass.
for m in (100, 1_000, 10_000):
    trial = RepeatedTrial(m, Fraction(1, 2))
    w = deviation_limit(trial, P=0.5)
    exact = float(binomial_tail(trial, int(np.ceil(w.lo)), int(np.floor(w.hi))))
    print(f"m={m:6d}: window {w.lo:9.2f} .. {w.hi:9.2f}, exact mass {exact:.6f}")

# %% Mass of the central terms for m = 100.
print(f"central mass within 5 of 50: {float(central_mass(RepeatedTrial(100, Fraction(1, 2)), 5)):.6f}")
