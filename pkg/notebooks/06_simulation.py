"""
Seeded simulation
=================

Every replicate draws from its own counter-based stream, so the result
depends only on the seed and never on how work is split across workers.
"""

# %%
from chances.montecarlo import SimulationConfig, simulate_scheme, strategy_invariance

# %% The same sample with one worker or eight.
cfg = SimulationConfig(11, 200_000, "sphere", {"angle": "theta"})
one, eight = simulate_scheme(cfg, 1), simulate_scheme(cfg, 8)
print(one.mean, one == eight)

# %% No stopping rule turns a fair game into a profit.
for rule in ("immediate", "first_win", "martingale"):
    r = strategy_invariance(0, 100_000, rule)
    print(f"{rule:10s} mean {r.mean:+.4f} +- {r.se:.4f}")
