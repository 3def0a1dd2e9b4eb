"""Seeded simulation oracle for the analytic modules.

Replicates are cut into fixed blocks of ``BLOCK`` and block ``b`` draws
from ``stream(seed, scheme, b)``. Blocks are reassembled in index order,
so the sample set and every summary are bit-identical whatever the
number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._streams import stream
from .combinatorics import DomainError
from .comets import ANGLE_NAMES, angles_array, sample_uniform_elements

__all__ = [
    "BLOCK",
    "EXACT_LIMIT",
    "SCHEMES",
    "SimulationConfig",
    "SimulationReport",
    "simulate_values",
    "simulate_scheme",
    "coverage",
    "StrategyReport",
    "strategy_invariance",
]

BLOCK = 1 << 16
EXACT_LIMIT = 10_000_000
SKETCH_BINS = 1 << 16
QUANTILES = (0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99)


@dataclass(frozen=True)
class SimulationConfig:
    """``replicates`` draws of ``scheme`` with parameters ``params`` under ``seed``."""

    seed: int
    replicates: int
    scheme: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.replicates < 1:
            raise DomainError("replicates must be at least 1")
        if self.scheme not in SCHEMES:
            raise DomainError(f"unknown scheme {self.scheme!r}; choose from {sorted(SCHEMES)}")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


# scheme kernels: (rng, size, params) -> 1-d float array

def _weights(params) -> tuple[np.ndarray, np.ndarray]:
    ps = np.asarray(params["ps"], float)
    ks = np.asarray(params.get("ks", np.full(ps.size, 1.0 / ps.size)), float)
    if ps.shape != ks.shape or abs(ks.sum() - 1) > 1e-12 or np.any(ks < 0):
        raise DomainError("ks must be non-negative weights summing to 1, one per urn")
    return ps, ks


def _urn_each_trial(rng, size, params):
    # every trial draws its urn afresh
    ps, ks = _weights(params)
    m = int(params["m"])
    counts = rng.multinomial(m, ks, size=size)
    return rng.binomial(counts, ps).sum(axis=1) / m


def _urn_fixed(rng, size, params):
    # trials shared out among the urns in fixed proportions
    ps, ks = _weights(params)
    m = int(params["m"])
    alloc = np.floor(ks * m + 0.5).astype(np.int64)
    alloc[-1] = m - alloc[:-1].sum()
    return rng.binomial(np.broadcast_to(alloc, (size, ps.size)), ps).sum(axis=1) / m


def _urn_series(rng, size, params):
    # each block of m1 trials draws one urn
    ps, ks = _weights(params)
    m, m1 = int(params["m"]), int(params["m1"])
    if m % m1:
        raise DomainError("m must be a multiple of m1")
    series = rng.multinomial(m // m1, ks, size=size)
    return rng.binomial(series * m1, ps).sum(axis=1) / m


def _binomial(rng, size, params):
    return rng.binomial(int(params["m"]), float(params["p"]), size=size).astype(float)


def _jury12(rng, size, params):
    # code per accused: guilty votes out of 12
    k1, v1, v2 = float(params["k1"]), float(params["v1"]), float(params.get("v2", 1.0))
    convictable = rng.random(size) < k1
    p_conv = np.where(convictable, v1, 1.0 - v2)
    return rng.binomial(12, p_conv).astype(float)


def _ruin(rng, size, params):
    # 1.0 when a fair walk of n steps loses alpha stakes
    alpha, n = float(params["alpha"]), int(params["n"])
    pos = np.zeros(size, np.int64)
    low = np.zeros(size, np.int64)
    chunk = 1024
    done = 0
    while done < n:
        k = min(chunk, n - done)
        steps = 2 * rng.integers(0, 2, size=(size, k), dtype=np.int8).astype(np.int64) - 1
        path = pos[:, None] + np.cumsum(steps, axis=1)
        low = np.minimum(low, path.min(axis=1))
        pos = path[:, -1]
        done += k
    return (low <= -alpha).astype(float)


def _portfolio(rng, size, params):
    total = np.zeros(size)
    for count, value, risk in params["classes"]:
        total += value * rng.binomial(int(count), float(risk), size=size)
    return total


def _sphere(rng, size, params):
    name = params.get("angle", "theta")
    if name not in ANGLE_NAMES:
        raise DomainError(f"angle must be one of {ANGLE_NAMES}")
    e = sample_uniform_elements(rng, size)
    return np.abs(angles_array(e[:, 0], e[:, 1], e[:, 2])[:, ANGLE_NAMES.index(name)])


def _fair_game(rng, size, params):
    # net gain of m even-money fair sets
    m = int(params["m"])
    return 2.0 * rng.binomial(m, 0.5, size=size) - m


SCHEMES: dict[str, tuple[Callable, tuple]] = {
    "urn_each_trial": (_urn_each_trial, (0.0, 1.0)),
    "urn_fixed": (_urn_fixed, (0.0, 1.0)),
    "urn_series": (_urn_series, (0.0, 1.0)),
    "binomial": (_binomial, None),
    "jury12": (_jury12, (0.0, 12.0)),
    "ruin": (_ruin, (0.0, 1.0)),
    "portfolio": (_portfolio, None),
    "sphere": (_sphere, (0.0, 90.0)),
    "fair_game": (_fair_game, None),
}


def _blocks(replicates: int) -> list[tuple[int, int]]:
    n = math.ceil(replicates / BLOCK)
    return [(b, min(BLOCK, replicates - b * BLOCK)) for b in range(n)]


def _run_block(args) -> np.ndarray:
    seed, scheme, params, b, size = args
    kernel = SCHEMES[scheme][0]
    return np.asarray(kernel(stream(seed, scheme, b), size, params), float)


def _map_blocks(config: SimulationConfig, workers: int):
    jobs = [(int(config.seed), config.scheme, config.params, b, s)
            for b, s in _blocks(config.replicates)]
    if workers <= 1 or len(jobs) == 1:
        return map(_run_block, jobs), None
    pool = ProcessPoolExecutor(max_workers=workers)
    return pool.map(_run_block, jobs), pool


def simulate_values(config: SimulationConfig, workers: int = 1) -> np.ndarray:
    """All replicate values in replicate order."""
    it, pool = _map_blocks(config, workers)
    try:
        return np.concatenate(list(it))
    finally:
        if pool is not None:
            pool.shutdown()


@dataclass(frozen=True)
class SimulationReport:
    scheme: str
    seed: int
    replicates: int
    mean: float
    sd: float
    se: float
    center: float
    median_abs_dev: float
    quantiles: dict
    extra: dict
    exact_order_stats: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _center(config: SimulationConfig) -> float:
    p = config.params
    if config.scheme in ("urn_each_trial", "urn_fixed", "urn_series"):
        ps, ks = _weights(p)
        return float(ks @ ps)
    if config.scheme == "binomial":
        return float(p["m"]) * float(p["p"])
    if config.scheme == "sphere":
        return float(np.degrees(1.0))
    if config.scheme == "portfolio":
        return float(sum(c * v * r for c, v, r in p["classes"]))
    return 0.0


def _extra(config: SimulationConfig, x: np.ndarray) -> dict:
    if config.scheme == "jury12":
        n = x.size
        return {"c1": float(np.count_nonzero(x >= 8)) / n, "c2": float(np.count_nonzero(x == 7)) / n,
                "a": float(np.count_nonzero(x == 6)) / n}
    return {}


def simulate_scheme(config: SimulationConfig, workers: int = 1) -> SimulationReport:
    """Summary of a scheme: mean, spread, median deviation from the centre, quantiles.

    Up to ``EXACT_LIMIT`` replicates the order statistics are exact;
    above, a fixed-grid histogram over the scheme's support serves as the
    quantile sketch. Means and sums are accumulated block by block in
    index order.
    """
    center = _center(config)
    if config.replicates <= EXACT_LIMIT:
        x = simulate_values(config, workers)
        qs = np.quantile(x, QUANTILES)
        mad = float(np.median(np.abs(x - center)))
        n, s1, s2 = x.size, float(np.sum(x)), float(np.sum((x - x.mean()) ** 2))
        mean = s1 / n
        var = s2 / (n - 1) if n > 1 else 0.0
        return SimulationReport(config.scheme, int(config.seed), n, mean, math.sqrt(var),
                                math.sqrt(var / n), center, mad,
                                {str(q): float(v) for q, v in zip(QUANTILES, qs)},
                                _extra(config, x), True)
    support = SCHEMES[config.scheme][1]
    if support is None:
        raise DomainError("this scheme has no bounded support; use at most 1e7 replicates")
    lo, hi = support
    edges = np.linspace(lo, hi, SKETCH_BINS + 1)
    dev_edges = np.linspace(0.0, hi - lo, SKETCH_BINS + 1)
    hist = np.zeros(SKETCH_BINS, np.int64)
    dev_hist = np.zeros(SKETCH_BINS, np.int64)
    n, s1, s2 = 0, 0.0, 0.0
    extra_acc: dict = {}
    it, pool = _map_blocks(config, workers)
    try:
        for x in it:
            hist += np.histogram(x, edges)[0]
            dev_hist += np.histogram(np.abs(x - center), dev_edges)[0]
            n += x.size
            s1 += float(np.sum(x))
            s2 += float(np.sum(x * x))
            for k, v in _extra(config, x).items():
                extra_acc[k] = extra_acc.get(k, 0.0) + v * x.size
    finally:
        if pool is not None:
            pool.shutdown()
    mean = s1 / n
    var = max(s2 / n - mean * mean, 0.0) * n / (n - 1)

    def q_of(h, e, q):
        c = np.cumsum(h)
        i = int(np.searchsorted(c, q * n))
        return float(0.5 * (e[i] + e[i + 1]))
    return SimulationReport(config.scheme, int(config.seed), n, mean, math.sqrt(var),
                            math.sqrt(var / n), center, q_of(dev_hist, dev_edges, 0.5),
                            {str(q): q_of(hist, edges, q) for q in QUANTILES},
                            {k: v / n for k, v in extra_acc.items()}, False)


def coverage(config: SimulationConfig, low: float, high: float, P: float,
             workers: int = 1) -> dict:
    """Share of replicates in ``[low, high]`` against ``P +- 3 sqrt(P (1-P) / n)``."""
    x = simulate_values(config, workers)
    rate = float(np.mean((x >= low) & (x <= high)))
    band = 3.0 * math.sqrt(P * (1 - P) / x.size)
    return {"rate": rate, "P": P, "band": band, "ok": abs(rate - P) <= band}


@dataclass(frozen=True)
class StrategyReport:
    rule: str
    replicates: int
    mean: float
    se: float
    cutoff: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _strategy_block(args) -> tuple[np.ndarray, np.ndarray]:
    seed, rule, b, size, horizon, bankroll = args
    rng = stream(seed, f"strategy:{rule}", b)
    net = np.zeros(size)
    cut = np.zeros(size, bool)
    if rule == "immediate":
        return net, cut
    wins = rng.random((size, horizon)) < 0.5
    if rule == "first_win":
        first = np.where(wins.any(axis=1), wins.argmax(axis=1), -1)
        won = first >= 0
        net = np.where(won, 1.0 - first, -float(horizon))
        return net, ~won
    if rule == "martingale":
        # stakes 1, 2, 4, ... while affordable: K rounds cost 2^K - 1 in all
        K = min(int(math.floor(math.log2(bankroll + 1.0))), horizon)
        first = np.where(wins[:, :K].any(axis=1), wins[:, :K].argmax(axis=1), -1) if K else \
            np.full(size, -1)
        won = first >= 0
        net = np.where(won, 1.0, -(2.0**K - 1.0))
        affordable = int(math.floor(math.log2(bankroll + 1.0)))
        return net, ~won & (horizon < affordable)
    raise DomainError(f"unknown stop rule {rule!r}")


def strategy_invariance(seed: int, replicates: int, stop_rule: str, horizon: int = 64,
                        bankroll: float = 1023.0, workers: int = 1) -> StrategyReport:
    """Mean net of a stopping rule in a fair even-money game.

    Rules: ``"immediate"`` (never play), ``"first_win"`` (unit stakes until
    the first win), ``"martingale"`` (doubling within ``bankroll``). Paths
    still running at ``horizon`` are stopped there and counted in ``cutoff``.
    """
    if stop_rule not in ("immediate", "first_win", "martingale"):
        raise DomainError(f"unknown stop rule {stop_rule!r}")
    if replicates < 1 or horizon < 1:
        raise DomainError("replicates and horizon must be positive")
    jobs = [(int(seed), stop_rule, b, s, horizon, bankroll) for b, s in _blocks(replicates)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_strategy_block, jobs))
    else:
        parts = [_strategy_block(j) for j in jobs]
    net = np.concatenate([p[0] for p in parts])
    cut = np.concatenate([p[1] for p in parts])
    se = float(net.std(ddof=1) / math.sqrt(net.size)) if net.size > 1 else 0.0
    return StrategyReport(stop_rule, net.size, float(net.mean()), se, int(cut.sum()))
