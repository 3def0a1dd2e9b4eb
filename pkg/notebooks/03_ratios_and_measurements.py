"""
Comparing ratios and combining measurements
===========================================

Two observed ratios differ by some amount. How likely is a difference as
large under equal chances? The second half pools measurement series by
their moduli and fits a single unknown by least squares.
"""

# %%
import numpy as np

from chances.datasets import load_cavendish, load_dumas
from chances.error_combination import MeasurementSeries, combine_weighted_means
from chances.inference import (BinomialSeries, compare_two_series, empirical_modulus,
                               succession_rule)

# %% Rule of succession after 20 successes in 20 trials.
print(succession_rule(20, 20))

# %% Two birth series compared.
r = compare_two_series(BinomialSeries(200_000, 103_000), BinomialSeries(180_000, 92_100))
print(f"delta {r.delta:.6f}, t {r.t:.4f}, P {r.P:.6f}, Pi {r.Pi:.6f}")

# %% Density of the earth from 29 determinations.
x = load_cavendish()
em = empirical_modulus(x)
print(f"mean {em.M:.4f}, modulus {em.gamma:.4f}, weight {em.weight:.4f}")

# %% Pooling synthetic atomic-weight series by weight.
series = [MeasurementSeries(v, label=k) for k, v in load_dumas().items()]
pooled = combine_weighted_means(series)
print(f"pooled mean {pooled.mean:.4f}, limit at P=1/2 {pooled.limit(0.5):.5f}")
