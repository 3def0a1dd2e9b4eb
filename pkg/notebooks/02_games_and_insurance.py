"""
Games of chance and insurance
=============================

A fair game has zero expectation whatever the stopping rule, yet the
punter's fortune oscillates by an amount growing like ``sqrt(m)``. The
same window governs the yearly losses of an insurer.
"""

# %%
from chances.games import (GameSpec, RuinSpec, fair_game_oscillation, petersburg_value,
                           punter_limits, ruin_probability)
from chances.insurance import boni_limits, deficit_probability, poisson_binomial_table

# %% Oscillation of a fair game after 3000 sets.
for P in (0.5, 19999 / 20000):
    osc = fair_game_oscillation(3000, P)
    print(f"P={P:.5f}: asymptotic {osc.asymptotic:.3f}, exact {osc.exact}")

# %% A game with an unfavourable edge.
lim = punter_limits(GameSpec(3000, 1 / 18, 1.0, 15.0), 0.5)
print(f"mean loss {lim.mean_loss:.2f}, window {lim.loss_low:.2f} .. {lim.loss_high:.2f}")

# %% Chance of ruin with a capital of 50 stakes.
for n in (1_000, 10_000):
    print(f"ruin within {n} sets: {ruin_probability(RuinSpec(50, n)):.6f}")

# %% The Petersburg game with a capped bank.
print(f"fair stake with a 50e6 cap: {petersburg_value(50e6):.6f}")

# %% An insurer with 10000 policies at risk 1/1000 and premium rate 1.5/1000.
print(f"deficit chance: {deficit_probability(10_000, 0.001, 0.0015):.6f}")
w = boni_limits(10_000, 0.001, 0.0015, 1.0, 0.5)
print(f"yearly profit {w.centre:.2f} +- {w.halfwidth:.6f}")
print(poisson_binomial_table(200, 0.01, 5))
