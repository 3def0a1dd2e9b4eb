"""
Life tables and comet orbits
============================

A synthetic life table gives mean and probable life and the stationary
population. The comet catalog bundled here is SYNTHETIC: it matches
published summary counts only.
"""

# %%
import numpy as np

from chances.comets import proportion_test, split_counts, uniform_sphere_baseline
from chances.datasets import load_comet_catalog
from chances.demography import (mean_life, probable_life, stationary_population,
                                synthetic_life_table)

# %% Remaining life by age.
table = synthetic_life_table()
for age in (0, 5, 20, 40, 60):
    print(f"age {age:2d}: mean {mean_life(table, age):6.2f}, probable {probable_life(table, age):6.2f}")
pop = stationary_population(table, 1000.0)
print(f"stationary population per 1000 births: {pop.total:.1f}, median age {pop.median_age:.2f}")

# %% Orientation of 125 orbits against a uniform sphere.
cat = load_comet_catalog()
print(uniform_sphere_baseline())
for name, (above, below) in split_counts(cat).items():
    print(f"{name:7s} {above:3d}:{below:3d}")
below, above = split_counts(cat, season="winter")["theta"]
r = proportion_test(above, below + above)
print(r)
