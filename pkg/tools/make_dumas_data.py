"""Generate the bundled SYNTHETIC 19-value atomic-weight series.

Only summaries are published: 10 values by one method with mean 12.520,
9 by another with mean 12.511, and a sum of squared deviations from the
general mean of 0.0173. This script draws seeded values with 4 decimals
and adjusts them until those summaries hold to the last digit.

Run ``python3 tools/make_dumas_data.py`` to rewrite
``src/chances/data/dumas_synthetic.csv``.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

SEED = 1842
GROUPS = (("sulphuric", 10, 12.520), ("phosphoric", 9, 12.511))
TARGET_SS = 0.0173
OUT = Path(__file__).resolve().parents[1] / "src" / "chances" / "data" / "dumas_synthetic.csv"


def total_ss(values: np.ndarray) -> float:
    return float(np.sum((values - values.mean()) ** 2))


def main() -> None:
    rng = np.random.default_rng(SEED)
    sizes = [g[1] for g in GROUPS]
    means = np.repeat([g[2] for g in GROUPS], sizes)
    between = total_ss(means)
    dev = rng.standard_normal(sum(sizes))
    start = 0
    for n in sizes:  # centre each group
        dev[start:start + n] -= dev[start:start + n].mean()
        start += n
    dev *= np.sqrt((TARGET_SS - between) / np.sum(dev**2))
    # integer units of 1e-4 keep the group means exact
    units = np.round((means + dev) * 1e4).astype(np.int64)
    start = 0
    for (_, n, mu) in GROUPS:
        g = units[start:start + n]
        g[-1] += round(mu * 1e4) * n - g.sum()
        start += n
    # walk pairs within a group until the sum of squares is exact
    for _ in range(100000):
        err = total_ss(units / 1e4) - TARGET_SS
        if abs(err) < 5e-9:
            break
        gi = rng.integers(len(GROUPS))
        lo = sum(sizes[:gi])
        i, j = lo + rng.choice(sizes[gi], 2, replace=False)
        step = 1 if (units[i] >= units[j]) == (err < 0) else -1
        trial = units.copy()
        trial[i] += step
        trial[j] -= step
        if abs(total_ss(trial / 1e4) - TARGET_SS) < abs(err):
            units = trial
    vals = units / 1e4
    with open(OUT, "w", newline="", encoding="utf-8") as fh:
        wr = csv.writer(fh)
        wr.writerow(["method", "value"])
        k = 0
        for name, n, _ in GROUPS:
            for _ in range(n):
                wr.writerow([name, f"{vals[k]:.4f}"])
                k += 1
    print(f"wrote {OUT}: mean {vals.mean():.5f}, ss {total_ss(vals):.7f}")


if __name__ == "__main__":
    main()
