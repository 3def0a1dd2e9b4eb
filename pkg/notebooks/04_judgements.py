"""
Tribunals, juries and appeal
============================

Rates of lone dissent or of narrow majorities determine the chance that
a judge or juror is right, when votes are taken as independent.
"""

# %%
from chances.judgements import (JuryTally, appeal_system, jury12_hypothesis_A,
                                jury12_hypothesis_B, solve_three_judges, tribunal_tally)

# %% Recovering three judges' chances from their voting pattern.
tally = tribunal_tally(0.9, 0.8, 0.7)
print(tally)
print(solve_three_judges(tally).v)

# %% Twelve-juror verdicts by 8 or more and by exactly 7.
t = JuryTally(0.619, 0.026)
a = jury12_hypothesis_A(t, 39_424)
b = jury12_hypothesis_B(t, 39_424)
print(f"A: v1={a.v1:.4f}, k1={a.k1:.4f}, P={a.P:.2f}")
print(f"B: v={b.v:.4f}, k1={b.k1:.4f}, Q={b.Q:.2f}")

# %% First instance and appeal.
print(appeal_system(v=0.686))
