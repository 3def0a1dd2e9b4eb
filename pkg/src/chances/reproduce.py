"""Registry of the pinned reproduction checks.

Each acceptance criterion maps to a function returning a list of
:class:`Check` records. The ``reproduce`` subcommand and the acceptance
test both run through :func:`run`.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

import numpy as np
from scipy import integrate

from . import combinatorics as cb
from . import comets as cm
from . import demography as dg
from . import deviation_function as dv
from . import distribution_summaries as ds
from . import error_combination as ec
from . import games as gm
from . import inference as inf
from . import insurance as ins
from . import judgements as jd
from . import montecarlo as mc
from . import repetition_laws as rl
from .datasets import load_cavendish, load_comet_catalog, load_dumas

__all__ = ["Check", "CRITERIA", "TOPICS", "run", "criterion_status"]


@dataclass(frozen=True)
class Check:
    """One pinned value: expected, computed, tolerance and outcome."""

    criterion: int
    topic: str
    name: str
    expected: Any
    computed: Any
    tol: float
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        def plain(x):
            if isinstance(x, Fraction):
                return str(x)
            if isinstance(x, (np.floating, np.integer)):
                return x.item()
            if isinstance(x, tuple):
                return [plain(v) for v in x]
            return x
        return {"criterion": self.criterion, "topic": self.topic, "name": self.name,
                "expected": plain(self.expected), "computed": plain(self.computed),
                "tol": self.tol, "passed": bool(self.passed), "note": self.note}


class _Collector:
    def __init__(self, criterion: int, topic: str):
        self.criterion, self.topic, self.out = criterion, topic, []

    def close(self, name: str, expected, computed, tol: float, note: str = "") -> None:
        ok = abs(float(computed) - float(expected)) <= tol * (1 + 1e-9)
        self.out.append(Check(self.criterion, self.topic, name, expected, computed, tol, ok, note))

    def true(self, name: str, ok: bool, computed=None, expected=True, note: str = "") -> None:
        self.out.append(Check(self.criterion, self.topic, name, expected, computed, 0.0,
                              bool(ok), note))

    def equal(self, name: str, expected, computed, note: str = "") -> None:
        self.out.append(Check(self.criterion, self.topic, name, expected, computed, 0.0,
                              expected == computed, note))


# 1 deviation function

def _c1(c: _Collector) -> None:
    c.close("P(3)", 0.999978, dv.p_of_t(3.0), 1e-6)
    c.close("t for P = 1/2", 0.476937, dv.t_of_p(0.5), 1e-6)
    ratio = dv.t_of_p(19999 / 20000) / dv.T_HALF
    c.close("landmark ratio t(19999/20000) / t(1/2)", 6.0, ratio, 0.06)


# 2 combinatorics

def _c2(c: _Collector) -> None:
    c.equal("C(90, 3)", 117480, cb.binomial(90, 3))
    c.close("lg 459! / (51!)^9", 428.445, cb.log10_factorial_ratio([459], [51] * 9), 1e-3)
    pq = cb.piquet_aces_probability()
    c.close("piquet leading Stirling", 0.013807, pq.stirling_leading, 1e-6)
    c.close("piquet corrected Stirling", 0.0137653, pq.stirling_corrected, 1e-6)
    c.equal("piquet exact fraction", Fraction(99, 7192), pq.exact)
    c.close("piquet exact decimal as printed", 0.01137653, float(pq.exact), 1e-8,
            "printed decimal has a stray digit; 99/7192 = 0.0137653")


# 3 binomial and hypergeometric

def _c3(c: _Collector) -> None:
    F = Fraction
    c.equal("at least 2 of 4 trials at p=1/6", F(171, 1296),
            rl.binomial_tail(rl.RepeatedTrial(4, F(1, 6)), 2, exact=True))
    c.close("trials before even odds at p=1/36", 24.6, rl.repeat_until_even_odds(1 / 36)[0], 0.05)
    c.close("central mass m=90, p=2/3, 5 terms", 0.423571,
            float(rl.central_mass(rl.RepeatedTrial(90, F(2, 3)), 2, exact=True)), 1e-6)
    c.close("central mass m=100, p=1/2, 7 terms", 0.5158814,
            float(rl.central_mass(rl.RepeatedTrial(100, F(1, 2)), 3, exact=True)), 1e-6)
    trial = rl.RepeatedTrial(100, F(1, 2))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", rl.SmallSampleWarning)
        # the 40..60 window of 21 terms, half-width taken at the outer half-units
        t = 10.0 / math.sqrt(2 * 0.25 * 100)
        corrected = dv.p_corrected(t, 100, 0.5)
    exact = float(rl.binomial_tail(trial, 40, 60, exact=True))
    c.close("corrected formula, window 40-60", 0.9653, corrected, 1e-4)
    c.close("exact sum, window 40-60", 0.9648, exact, 1e-4)
    c.close("corrected minus exact", 0.0005, corrected - exact, 1e-4)
    c.close("urn 240 white 219 black, 30 drawn, at least 26 white", 0.000049547,
            float(rl.hypergeometric_tail(rl.UrnWithoutReplacement(240, 219, 30), 26)), 1e-6)
    c.close("urn 30 white 6 black, 12 drawn, all white", 0.069102,
            float(rl.hypergeometric_pmf(rl.UrnWithoutReplacement(30, 6, 12), 12)), 1e-6)
    w = rl.deviation_limit(rl.RepeatedTrial(9000, F(2, 3)), P=0.5)
    c.close("9000 trials, P=1/2, low", 5970, w.lo, 2)
    c.close("9000 trials, P=1/2, high", 6030, w.hi, 2)
    big = rl.RepeatedTrial(9_000_000, F(2, 3))
    for label, kw, lo, hi in (("P=1/2", {"P": 0.5}, 5_999_047, 6_000_953),
                              ("t=2", {"t": 2.0}, 5_996_000, 6_004_000),
                              ("t=2.87", {"t": 2.87}, 5_994_260, 6_005_740)):
        w = rl.deviation_limit(big, **kw)
        c.close(f"9M trials, {label}, low", lo, w.lo, 2)
        c.close(f"9M trials, {label}, high", hi, w.hi, 2)



# 4 distribution summaries

def _c4(c: _Collector) -> None:
    u, lin = ds.summarize(ds.uniform_law()), ds.summarize(ds.linear_law())
    c.close("uniform mean", 0.5, u.mean, 1e-12)
    c.close("uniform median", 0.5, u.median, 1e-12)
    c.close("uniform modulus", math.sqrt(6), u.modulus, 1e-12)
    c.close("linear mean", 2 / 3, lin.mean, 1e-12)
    c.close("linear median", 1 / math.sqrt(2), lin.median, 1e-12)
    c.close("linear modulus", 3.0, lin.modulus, 1e-12)
    lat = ds.latitude_law_summary()
    mean_deg = 90.0 * lat.mean
    c.close("latitude law mean (arc seconds)", ds.from_dms(32, 42, 15.2) * 3600,
            mean_deg * 3600, 1.0, f"{ds.to_dms(mean_deg)}")
    c.close("latitude law median (deg)", 30.0, 90.0 * lat.median, 1e-12)
    c.close("latitude law modulus", 2.9518, lat.modulus, 1e-3)
    c.close("difference of uniforms, tail at 0.3", 0.49, ds.difference_tail(0.3), 1e-12)
    c.close("weighted difference, tail at 0.3", 0.3773, ds.weighted_difference_tail(0.3), 1e-12)
    c.close("sum of uniforms modulus", math.sqrt(3), ds.summarize(ds.sum_of_uniforms_law()).modulus,
            1e-12)


# 5 mixtures

def _c5(c: _Collector) -> None:
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(2, 8))
        ks = rng.dirichlet(np.ones(n))
        worst = max(worst, abs(ds.chance_mixture_stats(rng.random(n), ks).residual))
    c.close("mixture variance identity, worst residual", 0.0, worst, 1e-12)
    ps, ks, m, m1 = (0.4, 0.6), (0.5, 0.5), 10_000, 100
    limit = ds.bienayme_series_limit(ps, ks, m, m1, 0.5)
    rep = mc.simulate_scheme(mc.SimulationConfig(79, 200_000, "urn_series",
                                                 {"ps": ps, "ks": ks, "m": m, "m1": m1}))
    c.close("series-urn limit vs simulated median deviation (relative)", 0.0,
            rep.median_abs_dev / limit - 1.0, 0.03,
            f"limit {limit:.7f}, simulated {rep.median_abs_dev:.7f}")


# 6 inference

def _c6(c: _Collector) -> None:
    rep = dg.sex_ratio_report([inf.BinomialSeries(23_215_333, 11_962_811, "1817-1840")],
                              unit_m=11255, p=0.51541)
    c.close("weight of the pooled ratio", 6817, rep.weight, 1)
    c.close("t per unit", 2.313, rep.unit_t, 5e-4)
    c.close("P per unit", 0.99893, rep.unit_P, 1e-4)
    c.close("reversal probability per unit", 0.00053, rep.reversal, 5e-5)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        cmp_ = inf.compare_two_series(inf.BinomialSeries(22_263_015, 11_473_437),
                                      inf.BinomialSeries(952_318, 489_374))
    note = "printed values not reproduced by the two-series formula"
    c.close("two-series comparison P", 0.1834, cmp_.P, 2e-3, note)
    c.close("two-series comparison Pi", 0.5917, cmp_.Pi, 2e-3, note)
    s = inf.BinomialSeries(10_000, 5_000)
    ratio = inf.predict_future_ratio(s, s.m, 0.5) / inf.chance_interval(s, 0.5)
    c.close("future-series limit ratio at equal sizes", math.sqrt(2), ratio, 1e-12)


# 7 errors

def _c7(c: _Collector) -> None:
    cav = inf.empirical_modulus(load_cavendish())
    c.close("Cavendish weight", 18.745, cav.weight, 0.01)
    dumas = np.concatenate(list(load_dumas().values()))
    em = inf.empirical_modulus(dumas)
    t, P = em.probability(0.015)
    c.close("Dumas weight", 102.145, em.weight, 0.01)
    c.close("Dumas t at l=0.015", 1.532, t, 1e-3)
    c.close("Dumas P at l=0.015", 0.969, P, 1e-3)
    rows = [ec.ConditionRow(C, D) for C, D in ((1, 1), (2, 1), (3, 2))]
    fit = ec.laplace_ls_single(rows)
    grid = np.arange(-5.0, 5.0, 1e-4)
    C, D = np.array([1.0, 2, 3]), np.array([1.0, 1, 2])
    sse = ((np.outer(grid, C) - D) ** 2).sum(axis=1)
    best = grid[np.argmin(sse)]
    c.close("least squares vs grid minimiser", best, fit.x, 1e-4)
    c.true("least squares residual not above grid best", fit.residual <= sse.min() + 1e-12,
           fit.residual, float(sse.min()))


# 8 games

def _c8(c: _Collector) -> None:
    g = gm.GameSpec(3000, 1 / 18, 1, 15)
    half = gm.punter_limits(g, 0.5)
    c.close("punter loss low, P=1/2", 373, half.loss_low, 2)
    c.close("punter loss high, P=1/2", 627, half.loss_high, 2)
    wide = gm.punter_limits(g, 19999 / 20000)
    c.close("punter loss low, P=19999/20000", -265, wide.loss_low, 2)
    c.close("punter loss high, P=19999/20000", 1265, wide.loss_high, 2)
    c.close("survival with capital 50 over 1000 sets", 0.8859,
            1 - gm.ruin_probability(gm.RuinSpec(50, 1000)), 2e-3)
    c.close("ruin with capital 50 over 10000 sets", 0.617,
            gm.ruin_probability(gm.RuinSpec(50, 10_000)), 2e-3)
    v = gm.petersburg_value(50e6)
    c.true("capped Petersburg value <= 13.5 + 0.5", v <= 14.0, v, "<= 14.0")
    c.equal("passe-dix favourable throws", (108, 216), gm.passe_dix_counts())


# 9 insurance

def _c9(c: _Collector) -> None:
    c.close("deficit rate, 10^4 policies", 0.048,
            ins.deficit_probability(10_000, 0.001, 0.0015), 0.005)
    w = ins.boni_limits(100_000, 0.001, 0.0015, 1.0, 0.5)
    c.close("profit centre, 10^5 policies (a)", 50, w.centre, 0.01)
    c.close("profit half-width, 10^5 policies (a)", 6.742, w.halfwidth, 0.01)
    tab = ins.poisson_binomial_table(200, 0.01, 11)
    c.close("Poisson vs binomial, max cumulative gap", 0.0,
            float(np.max(np.abs(tab[:, 3] - tab[:, 4]))), 0.01)
    pf = ins.Portfolio([(1000, 100.0, 0.01), (500, 250.0, 0.03), (200, 1000.0, 0.002)])
    shares = ins.bienayme_allocation(pf, 7321.5)
    c.equal("class shares sum to the total loss", Fraction(7321.5), sum(shares))


# 10 judgements

def _c10(c: _Collector) -> None:
    a = jd.appeal_system(v=0.686)
    c.close("three-judge reliability at v=0.686", 0.766, a.V, 1e-3)
    c.close("seven-judge reliability at v=0.686", 0.855, a.V_prime, 1e-3)
    b = jd.cassation_bounds(jd.AppealStats(q_prime=0.467, q_dprime=0.202))
    tol = 2e-3
    c.close("V lower", 0.533, b.V[0], tol)
    c.close("V upper", 0.630, b.V[1], tol)
    c.close("V' lower", 0.798, b.V_prime[0], tol)
    c.close("V' upper", 0.866, b.V_prime[1], tol, "printed bound is not the root of its own equation")
    c.close("refined V lower", 0.533, b.V_refined[0], tol)
    c.close("refined V upper", 0.543, b.V_refined[1], tol)
    c.close("refined v lower", 0.520, b.v_refined[0], tol,
            "the three-judge inverse of 0.533 is 0.52201")
    c.close("refined v upper", 0.528, b.v_refined[1], tol)
    N = 39_424
    ta = jd.JuryTally(0.619, 0.026)
    A = jd.jury12_hypothesis_A(ta, N)
    A3 = jd.jury12_hypothesis_A(ta, N, digits=3)
    c.close("jury A v1", 0.816, A.v1, tol)
    c.close("jury A V1", 0.987, A.V1, tol)
    c.close("jury A k1", 0.653, A.k1, tol)
    c.close("jury A acquitted convictable, 3-digit working", 335, A3.P, 5,
            f"full precision {A.P:.2f}")
    B = jd.jury12_hypothesis_B(ta, N)
    B3 = jd.jury12_hypothesis_B(ta, N, digits=3)
    c.close("jury B v", 0.817, B.v, tol)
    c.close("jury B V2", 0.997, B3.V2, tol)
    c.close("jury B convicted absolvable, 3-digit working", 41, B3.Q, 3,
            f"full precision {B.Q:.2f}")
    tallies = [jd.JuryTally(0.524, 0.032, label="persons"),
               jd.JuryTally(0.655, 0.024, label="property")]
    cat = jd.jury12_by_category(tallies, (0.2731, 0.7269), N)
    cat3 = jd.jury12_by_category(tallies, (0.2731, 0.7269), N, digits=3, rounding="round")
    note = "printed property values do not solve the system for the printed tally"
    for r, label, (v1, V1, k1) in zip(cat.per_category, ("persons", "property"),
                                      ((0.796, 0.979, 0.568), (0.821, 0.989, 0.682))):
        n = note if label == "property" else ""
        c.close(f"{label} v1", v1, r.v1, tol, n)
        c.close(f"{label} V1", V1, r.V1, tol, n)
        c.close(f"{label} k1", k1, r.k1, tol, n)
    c.close("recombined v1", 0.814, cat.v1, tol, note)
    c.close("recombined k1", 0.651, cat.k1, tol, note)
    c.close("P' + P'', 3-digit working", 342, cat3.P_total, 5, f"full precision {cat.P_total:.2f}")
    c.close("pooled v=0.9 corrected lower bound", 0.81225,
            jd.mixture_corrected_v(pooled_v=0.9)["lower_bound"], 1e-5)
    c.close("equal chances from unanimity 0.36", 0.692, jd.laplace_equal_chance(0.36), 1e-3)


# 11 comets

def _c11(c: _Collector) -> None:
    rng = np.random.default_rng(14)
    e = cm.sample_uniform_elements(rng, 10_000)
    got = cm.angles_array(e[:, 0], e[:, 1], e[:, 2])
    pole, peri = cm.pole_and_perihelion(e[:, 0], e[:, 1], e[:, 2])
    comp = np.column_stack([pole[:, 2], pole[:, 0], pole[:, 1], peri[:, 2], peri[:, 0], peri[:, 1]])
    oracle = np.sign(comp) * np.degrees(np.arccos(np.clip(np.abs(comp), 0, 1)))
    oracle[comp == 0] = 90.0
    c.close("angle transform vs vector oracle, max gap (deg)", 0.0,
            float(np.max(np.abs(np.abs(got) - np.abs(oracle)))), 1e-9)
    base = cm.uniform_sphere_baseline()
    c.close("uniform baseline (arc seconds)", ds.from_dms(57, 17, 44.8) * 3600,
            base["mean_deg"] * 3600, 1.0)
    rep = mc.simulate_scheme(mc.SimulationConfig(151, 1_000_000, "sphere", {"angle": "theta"}))
    c.close("simulated mean polar distance, 10^6 samples", base["mean_deg"], rep.mean, 0.05)
    cat = load_comet_catalog()
    sp = cm.split_counts(cat, 60.0)
    c.equal("theta split at 60", (48, 77), sp["theta"])
    c.equal("t split at 60", (77, 48), sp["t"])
    c.equal("t'' split at 60", (44, 81), sp["t2"])
    mean_theta = float(np.mean(np.abs(cat.angles[:, 0])))
    c.close("theta-series mean test P", 0.99991, cm.mean_angle_test(mean_theta, len(cat)), 5e-4,
            "bundled catalog is synthetic")


# 12 demography

def _c12(c: _Collector) -> None:
    N = 10_000.0
    for label, table in (("synthetic default", dg.synthetic_life_table()),
                         ("synthetic low infancy", dg.synthetic_life_table(infant=0.05,
                                                                           background=0.002)),
                         ("exponential", dg.exponential_table(0.02))):
        pop = dg.stationary_population(table, N)
        intF, intxF = _quadrature(table)
        c.close(f"{label}: total = births x mean life (rel)", 0.0,
                pop.total / (N * dg.mean_life(table)) - 1, 1e-6)
        c.close(f"{label}: total vs quadrature (rel)", 0.0, pop.total / (N * intF) - 1, 1e-6)
        c.close(f"{label}: mean age vs quadrature (rel)", 0.0, pop.mean_age / (intxF / intF) - 1,
                1e-6)
        half = table.integral(0.0, pop.median_age) / table.integral(0.0)
        c.close(f"{label}: median age halves the population", 0.5, half, 1e-6)
        c.close(f"{label}: deaths sum to births (rel)", 0.0,
                float(np.sum(dg.deaths_by_age(table, N))) / N - 1, 1e-12)
    schem = dg.LifeTable.from_counts([0, 21, 22, 65], [10_000, 6_000, 5_900, 3_000])
    c.close("yearly danger at 21", 100 / 6000, dg.yearly_danger(schem, 21), 1e-15)


def _quadrature(table) -> tuple[float, float]:
    # node by node, then the exponential tail to infinity
    nodes = list(table.ages) + [math.inf]
    intF = intxF = 0.0
    for a, b in zip(nodes[:-1], nodes[1:]):
        intF += integrate.quad(lambda x: float(table.survival(x)), a, b, epsabs=0, epsrel=1e-12)[0]
        intxF += integrate.quad(lambda x: x * float(table.survival(x)), a, b, epsabs=0,
                                epsrel=1e-12)[0]
    return intF, intxF


# 13 substituted properties: appeal forward map and oscillation limits

def _c13(c: _Collector) -> None:
    a = jd.appeal_system(v=0.686)
    c.close("reversal rate from v=0.686", 0.311, a.q, 1e-3)
    back = jd.appeal_system(q=a.q)
    c.close("inverse recovers v", 0.686, back.v, 1e-9)
    first = [gm.fair_game_oscillation(3000, P).exact for P in (0.5, 19999 / 20000)]
    again = [gm.fair_game_oscillation(3000, P).exact for P in (0.5, 19999 / 20000)]
    c.equal("exact oscillation limits stable across runs", first, again,
            "printed 19 and 111 stakes; the formula and exact binomial give about 37 and 222")
    r = gm.fair_game_oscillation(12_000, 0.5).asymptotic / gm.fair_game_oscillation(3000, 0.5).asymptotic
    c.close("four times the sets doubles the limit", 2.0, r, 1e-12)


# 14 Monte Carlo determinism

def _c14(c: _Collector) -> None:
    cfg = mc.SimulationConfig(2024, 300_000, "sphere", {"angle": "t2"})
    r1, r8 = mc.simulate_scheme(cfg, workers=1), mc.simulate_scheme(cfg, workers=8)
    c.true("sphere report identical for 1 and 8 workers", r1 == r8, r1.mean, r8.mean)
    cfg = mc.SimulationConfig(7, 200_000, "jury12", {"k1": 0.653, "v1": 0.816})
    c.true("jury report identical for 1 and 8 workers",
           mc.simulate_scheme(cfg, 1) == mc.simulate_scheme(cfg, 8))
    s1 = mc.strategy_invariance(5, 200_000, "martingale", workers=1)
    s8 = mc.strategy_invariance(5, 200_000, "martingale", workers=8)
    c.true("strategy report identical for 1 and 8 workers", s1 == s8, s1.mean, s8.mean)


CRITERIA: dict[int, tuple[str, str, Callable[[_Collector], None]]] = {
    1: ("table", "deviation function", _c1),
    2: ("combinatorics", "combinatorics", _c2),
    3: ("binomial", "binomial and hypergeometric laws", _c3),
    4: ("laws", "distribution summaries", _c4),
    5: ("mixtures", "mixtures of chances", _c5),
    6: ("inference", "inference from ratios", _c6),
    7: ("errors", "combination of measurements", _c7),
    8: ("games", "games of chance", _c8),
    9: ("insurance", "insurance", _c9),
    10: ("jury", "judgements", _c10),
    11: ("comets", "comet orbits", _c11),
    12: ("life", "life tables", _c12),
    13: ("appeal", "appeal map and oscillation properties", _c13),
    14: ("sim", "simulation determinism", _c14),
}
TOPICS = tuple(v[0] for v in CRITERIA.values())


def _selected(only) -> list[int]:
    if not only:
        return list(CRITERIA)
    keys = [only] if isinstance(only, (str, int)) else list(only)
    out = []
    for k in keys:
        k = str(k).strip()
        hits = [n for n, (topic, _, _) in CRITERIA.items() if k == topic or k == str(n)]
        if not hits:
            raise ValueError(f"unknown topic {k!r}; choose from {', '.join(TOPICS)} or 1-14")
        out += [h for h in hits if h not in out]
    return sorted(out)


def run(only=None) -> list[Check]:
    """Run the checks of every criterion, or those named by topic or number in ``only``."""
    out: list[Check] = []
    for n in _selected(only):
        topic, _, fn = CRITERIA[n]
        col = _Collector(n, topic)
        try:
            fn(col)
        except Exception as exc:   # a crash counts as a failed check, not an abort
            col.out.append(Check(n, topic, "check raised", None, repr(exc), 0.0, False))
        out += col.out
    return out


def criterion_status(checks: list[Check]) -> dict[int, bool]:
    """Pass flag per criterion: every check of the criterion passed."""
    status: dict[int, bool] = {}
    for ch in checks:
        status[ch.criterion] = status.get(ch.criterion, True) and ch.passed
    return status
