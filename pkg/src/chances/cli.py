"""Command-line interface.

Every subcommand builds a report ``{command, inputs, inputs_digest,
outputs, warnings}``. Text mode prints the outputs with probabilities to
6 decimals; ``--json`` prints the whole report. ``--csv PATH`` names an
input file (comma-separated, header row, UTF-8); ``table`` writes its
rows there instead. Exit status: 0 on success, 1 when a reproduction
check fails, 2 when an input is rejected.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
import warnings
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import numpy as np

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
from .combinatorics import DomainError
from .datasets import load_cavendish, load_comet_catalog, load_dumas

EXIT_OK, EXIT_CHECK_FAILED, EXIT_REJECTED = 0, 1, 2


class InputError(ValueError):
    """A rejected command-line input."""


# serialisation

def _plain(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, Fraction):
        return {"fraction": str(x), "value": float(x)}
    if hasattr(x, "as_dict"):
        return _plain(x.as_dict())
    if isinstance(x, float) and not math.isfinite(x):
        return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return x


def _fmt(x: Any) -> str:
    if isinstance(x, bool) or x is None:
        return str(x)
    if isinstance(x, float):
        return f"{x:.6f}"
    if isinstance(x, dict) and set(x) == {"fraction", "value"}:
        return f"{x['fraction']} = {x['value']:.6f}"
    if isinstance(x, list):
        return "[" + ", ".join(_fmt(v) for v in x) + "]"
    return str(x)


def _print_text(outputs: Any, indent: str = "", out=None) -> None:
    if isinstance(outputs, dict):
        for k, v in outputs.items():
            if isinstance(v, dict) and not (set(v) == {"fraction", "value"}):
                print(f"{indent}{k}:", file=out)
                _print_text(v, indent + "  ", out)
            elif isinstance(v, list) and v and isinstance(v[0], dict):
                print(f"{indent}{k}:", file=out)
                for row in v:
                    print(f"{indent}  - " + ", ".join(f"{a}={_fmt(b)}" for a, b in row.items()),
                          file=out)
            else:
                print(f"{indent}{k}: {_fmt(v)}", file=out)
    else:
        print(f"{indent}{_fmt(outputs)}", file=out)


def make_report(command: str, inputs: dict, outputs: Any, caught: Sequence) -> dict:
    """Report with a stable field order."""
    inputs = _plain(inputs)
    digest = hashlib.sha256(json.dumps(inputs, sort_keys=True).encode()).hexdigest()[:16]
    return {"command": command, "inputs": inputs, "inputs_digest": digest,
            "outputs": _plain(outputs), "warnings": [str(w.message) for w in caught]}


# inputs

def _read_csv(path: str | None, required: Sequence[str]) -> list[dict]:
    if path is None:
        raise InputError("this command needs --csv PATH")
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise InputError(f"{path} has no data rows")
    missing = [c for c in required if c not in rows[0]]
    if missing:
        raise InputError(f"{path} lacks column(s) {', '.join(missing)}")
    return rows


def _num(row: dict, key: str, kind=float):
    try:
        return kind(row[key])
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad {key!r} value {row.get(key)!r}") from exc


def _need(args, *names) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise InputError("missing --" + ", --".join(m.replace("_", "-") for m in missing))


def _prob(text: str) -> float:
    """Probability given as a decimal or a fraction such as 19999/20000."""
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a probability: {text!r}") from exc


# subcommands

def cmd_table(args) -> tuple[dict, Any]:
    rows = dv.emit_table(args.step, args.tmax)
    if args.csv:
        Path(args.csv).write_text("\n".join(dv.table_rows(args.step, args.tmax)) + "\n",
                                  encoding="utf-8")
    return ({"step": args.step, "tmax": args.tmax},
            {"rows": [{"t": round(float(t), 10), "P": float(P)} for t, P in rows],
             "written_to": args.csv})


def cmd_deviation(args) -> tuple[dict, Any]:
    inputs = {k: getattr(args, k) for k in ("m", "p", "P", "t", "l")}
    if args.m is None:
        if args.t is not None:
            return inputs, {"t": args.t, "P": dv.p_of_t(args.t)}
        if args.P is not None:
            return inputs, {"P": args.P, "t": dv.t_of_p(args.P)}
        raise InputError("give --t or --P, or --m and --p with one of them")
    _need(args, "p")
    trial = rl.RepeatedTrial(args.m, Fraction(args.p).limit_denominator(10**9))
    if args.l is not None:
        main, corr = rl.corrected_interval_probability(trial, args.l)
        exact = rl.interval_probability_exact(trial, args.l)
        return inputs, {"l": args.l, "P_main": main, "P_corrected": corr, "P_exact": float(exact)}
    if (args.P is None) == (args.t is None):
        raise InputError("give exactly one of --P, --t or --l")
    w = rl.deviation_limit(trial, P=args.P, t=args.t)
    k, tie = rl.largest_term_index(trial)
    return inputs, {"l": w.l, "t": w.t, "P": dv.p_of_t(w.t), "count_low": w.lo,
                    "count_high": w.hi, "largest_term": k, "tied_largest": tie}


LAWS = {"uniform": ds.uniform_law, "linear": ds.linear_law, "quadratic": ds.quadratic_law,
        "latitude": ds.latitude_law, "difference": ds.difference_of_uniforms_law,
        "sum": ds.sum_of_uniforms_law}


def cmd_law(args) -> tuple[dict, Any]:
    model = LAWS[args.law]()
    s = ds.summarize(model)
    out = {"mean": s.mean, "median": s.median, "modulus": s.modulus}
    if args.m is not None:
        out["mean_deviation_limit"] = ds.mean_deviation_limit(s, args.m, args.P)
    if args.law == "latitude":
        out["mean_dms_degrees"] = list(ds.to_dms(90.0 * s.mean))
    if args.law == "difference" and args.a is not None:
        out["tail"] = ds.difference_tail(args.a)
        out["weighted_tail"] = ds.weighted_difference_tail(args.a)
    return {"law": args.law, "m": args.m, "P": args.P, "a": args.a}, out


def cmd_compare(args) -> tuple[dict, Any]:
    inputs = {k: getattr(args, k) for k in ("m1", "n1", "m2", "n2", "fixed", "alpha")}
    _need(args, "m1", "n1")
    s1 = inf.BinomialSeries(args.m1, args.n1, "first")
    if args.fixed is not None:
        r = inf.compare_with_fixed(s1, args.fixed, args.alpha)
    else:
        _need(args, "m2", "n2")
        r = inf.compare_two_series(s1, inf.BinomialSeries(args.m2, args.n2, "second"), args.alpha)
    out = r.as_dict()
    out["weight_first"] = inf.weight_of_chance(s1)
    return inputs, out


def _series_from_csv(path: str) -> dict[str, np.ndarray]:
    rows = _read_csv(path, ["value"])
    groups: dict[str, list[float]] = {}
    for r in rows:
        groups.setdefault(r.get("series") or "all", []).append(_num(r, "value"))
    return {k: np.asarray(v) for k, v in groups.items()}


def cmd_means(args) -> tuple[dict, Any]:
    if args.csv:
        groups = _series_from_csv(args.csv)
        src = args.csv
    elif args.dataset == "cavendish":
        groups, src = {"cavendish": load_cavendish()}, "bundled cavendish"
    else:
        groups, src = load_dumas(), "bundled dumas (synthetic)"
    out: dict[str, Any] = {}
    for name, x in groups.items():
        e = inf.empirical_modulus(x)
        d = {"m": e.m, "mean": e.M, "sum_sq": e.sum_sq, "modulus": e.gamma, "weight": e.weight,
             "limit_at_P": e.limit(args.P)}
        if args.l is not None:
            d["t"], d["P_within_l"] = e.probability(args.l)
        out[name] = d
    if len(groups) > 1:
        allx = np.concatenate(list(groups.values()))
        e = inf.empirical_modulus(allx)
        d = {"m": e.m, "mean": e.M, "sum_sq": e.sum_sq, "weight": e.weight}
        if args.l is not None:
            d["t"], d["P_within_l"] = e.probability(args.l)
        out["pooled"] = d
    if len(groups) == 2:
        a, b = (inf.EmpiricalSeries(v, k) for k, v in groups.items())
        out["comparison"] = inf.compare_two_means(a, b).as_dict()
    return {"source": src, "P": args.P, "l": args.l}, out


def cmd_lsq(args) -> tuple[dict, Any]:
    rows = _read_csv(args.csv, ["Delta"])
    ccols = [c for c in rows[0] if c.startswith("C")]
    if not ccols:
        raise InputError("need coefficient columns C1, C2, ...")
    crow = [ec.ConditionRow([_num(r, c) for c in ccols], _num(r, "Delta")) for r in rows]
    if len(ccols) == 1:
        fit = ec.laplace_ls_single(crow, P=args.P)
        return {"csv": args.csv, "P": args.P}, {"least_squares": fit.as_dict(),
                                               "mean_ratio_estimate": ec.cotes_estimate(crow)}
    fit = ec.least_squares_multi(crow)
    return {"csv": args.csv}, fit.as_dict()


def cmd_game(args) -> tuple[dict, Any]:
    k = args.kind
    if k == "punter":
        spec = gm.GameSpec(args.m, args.p, args.a, args.b)
        lim = gm.punter_limits(spec, args.P)
        return vars_of(args, "m", "p", "a", "b", "P"), {
            "mean_loss": lim.mean_loss, "loss_low": lim.loss_low, "loss_high": lim.loss_high,
            "max_gain": lim.max_gain, "max_loss": lim.max_loss}
    if k == "oscillation":
        o = gm.fair_game_oscillation(args.m, args.P)
        return vars_of(args, "m", "P"), {"asymptotic": o.asymptotic, "exact": o.exact}
    if k == "ruin":
        spec = gm.RuinSpec(args.alpha, args.n)
        return vars_of(args, "alpha", "n"), {
            m: gm.ruin_probability(spec, m) for m in ("main", "printed", "exact")}
    if k == "petersburg":
        return vars_of(args, "cap", "unit"), {"value": gm.petersburg_value(args.cap, args.unit)}
    fav, tot = gm.passe_dix_counts()
    return {}, {"favourable": fav, "total": tot, "chance": gm.passe_dix_favourable()}


def vars_of(args, *names) -> dict:
    return {n: getattr(args, n) for n in names}


def _portfolio(path: str) -> ins.Portfolio:
    rows = _read_csv(path, ["count", "value", "risk"])
    return ins.Portfolio([(_num(r, "count", int), _num(r, "value"), _num(r, "risk")) for r in rows])


_CENT = Decimal("0.01")


def _money(x) -> str:
    """Amount as an exact two-decimal string; full precision stays internal."""
    d = Decimal(x.numerator) / Decimal(x.denominator) if isinstance(x, Fraction) else Decimal(repr(x))
    return str(d.quantize(_CENT, rounding=ROUND_HALF_EVEN))


def _money_window(w) -> dict:
    out = w.as_dict()
    for key in ("centre", "halfwidth", "low", "high"):
        out[key] = _money(out[key])
    return out


def cmd_insure(args) -> tuple[dict, Any]:
    k = args.kind
    if k == "deficit":
        return vars_of(args, "m", "p", "w"), {
            "exact": ins.deficit_probability(args.m, args.p, args.w, "exact"),
            "normal": ins.deficit_probability(args.m, args.p, args.w, "normal")}
    if k == "boni":
        return vars_of(args, "m", "p", "w", "a", "P"), _money_window(ins.boni_limits(
            args.m, args.p, args.w, args.a, args.P))
    if k == "poisson":
        tab = ins.poisson_binomial_table(args.m, args.p, args.n_max)
        rows = [dict(zip(("n", "poisson_pmf", "binomial_pmf", "poisson_cdf", "binomial_cdf"),
                         map(float, r))) for r in tab]
        return vars_of(args, "m", "p", "n_max"), {
            "rows": rows, "max_cdf_gap": float(np.max(np.abs(tab[:, 3] - tab[:, 4])))}
    pf = _portfolio(args.csv)
    if k == "window":
        return {"csv": args.csv, "P": args.P}, _money_window(ins.aggregate_loss_limits(pf, args.P))
    if args.mu is None:
        raise InputError("allocate needs --mu")
    shares = ins.bienayme_allocation(pf, args.mu)
    return {"csv": args.csv, "mu": args.mu}, {"shares": [_money(s) for s in shares],
                                              "sum": _money(sum(shares))}


def cmd_jury(args) -> tuple[dict, Any]:
    if args.csv:
        rows = _read_csv(args.csv, ["c1", "c2", "weight"])
        tallies = [jd.JuryTally(_num(r, "c1"), _num(r, "c2"), label=r.get("label", ""))
                   for r in rows]
        w = [_num(r, "weight") for r in rows]
        res = jd.jury12_by_category(tallies, w, args.N, args.digits, args.rounding)
        return {"csv": args.csv, "N": args.N, "digits": args.digits,
                "rounding": args.rounding}, res.as_dict()
    _need(args, "c1", "c2")
    t = jd.JuryTally(args.c1, args.c2)
    out = {}
    if args.hypothesis in ("A", "both"):
        out["A"] = jd.jury12_hypothesis_A(t, args.N, args.digits, args.rounding).as_dict()
    if args.hypothesis in ("B", "both"):
        out["B"] = jd.jury12_hypothesis_B(t, args.N, args.digits, args.drop_term,
                                          args.rounding).as_dict()
    return vars_of(args, "c1", "c2", "N", "hypothesis", "digits", "rounding"), out


def cmd_tribunal(args) -> tuple[dict, Any]:
    if args.unanimity is not None:
        return {"unanimity": args.unanimity}, {"v": jd.laplace_equal_chance(args.unanimity)}
    if args.bare is not None:
        lo, hi = jd.v_from_bare_majority(args.bare, args.size)
        return {"bare": args.bare, "size": args.size}, {"v_low": lo, "v_high": hi}
    _need(args, "a", "b", "c")
    if args.d is not None:
        r = jd.solve_four_judges(args.a, args.b, args.c, args.d)
    else:
        r = jd.solve_three_judges(jd.TribunalTally(args.a, args.b, args.c))
    out = r.as_dict()
    if r.feasible and r.v is not None and len(r.v) == 3:
        out["reliability"] = jd.tribunal_reliability(*r.v)
    return vars_of(args, "a", "b", "c", "d"), out


def cmd_appeal(args) -> tuple[dict, Any]:
    if args.q_prime is not None or args.q_dprime is not None:
        _need(args, "q_prime", "q_dprime")
        b = jd.cassation_bounds(jd.AppealStats(q_prime=args.q_prime, q_dprime=args.q_dprime))
        return vars_of(args, "q_prime", "q_dprime"), b.as_dict()
    if (args.v is None) == (args.q is None):
        raise InputError("give exactly one of --v and --q (or --q-prime and --q-dprime)")
    return vars_of(args, "v", "q"), jd.appeal_system(q=args.q, v=args.v).as_dict()


def cmd_witness(args) -> tuple[dict, Any]:
    if args.agreement is not None:
        return {"agreement": args.agreement}, {"v": jd.pair_agreement_v(args.agreement)}
    if args.pooled_v is not None:
        return {"pooled_v": args.pooled_v}, jd.mixture_corrected_v(pooled_v=args.pooled_v)
    _need(args, "v1", "v2")
    out = jd.witness_agreement(args.v1, args.v2)
    out["unanimous"] = jd.unanimous_witnesses([args.v1, args.v2])
    if args.v3 is not None:
        out["opposed_by_third"] = jd.opposed_witness(args.v1, args.v2, args.v3)
    return vars_of(args, "v1", "v2", "v3"), out


def cmd_life(args) -> tuple[dict, Any]:
    if args.csv:
        rows = _read_csv(args.csv, ["age", "survivors"])
        table = dg.LifeTable.from_counts([_num(r, "age") for r in rows],
                                         [_num(r, "survivors") for r in rows])
        src = args.csv
    elif args.exponential is not None:
        table, src = dg.exponential_table(args.exponential), f"exponential {args.exponential}"
    else:
        table, src = dg.synthetic_life_table(), "synthetic"
    x = args.age
    out: dict[str, Any] = {"age": x, "survival": float(table.survival(x)),
                           "mean_life": dg.mean_life(table, x),
                           "probable_life": dg.probable_life(table, x)}
    if x + 1 <= table.terminal:
        out["yearly_danger"] = dg.yearly_danger(table, x)
    if args.births is not None:
        out["stationary"] = dg.stationary_population(table, args.births).as_dict()
    return {"source": src, "age": x, "births": args.births}, out


def cmd_sexratio(args) -> tuple[dict, Any]:
    if args.csv:
        rows = _read_csv(args.csv, ["m", "n"])
        series = [inf.BinomialSeries(_num(r, "m", int), _num(r, "n", int), r.get("label", ""))
                  for r in rows]
    else:
        _need(args, "m", "n")
        series = [inf.BinomialSeries(args.m, args.n, "series")]
    rep = dg.sex_ratio_report(series, args.unit_m, args.p)
    return {"csv": args.csv, "m": args.m, "n": args.n, "unit_m": args.unit_m,
            "p": args.p}, rep.as_dict()


def cmd_comets(args) -> tuple[dict, Any]:
    if args.csv:
        cat = cm.load_catalog(args.csv, args.retrograde)
        src = args.csv
    else:
        cat, src = load_comet_catalog(args.retrograde), "bundled (synthetic)"
    filt = {}
    if args.season:
        filt["season"] = args.season
    if args.q_max is not None:
        filt["q_max"] = args.q_max
    mask = cat.mask(**filt) if filt else np.ones(len(cat), bool)
    mags = np.abs(cat.angles[mask])
    n = int(mask.sum())
    splits = cm.split_counts(cat, args.threshold, **filt)
    means = dict(zip(cm.ANGLE_NAMES, mags.mean(axis=0).tolist()))
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        tests = {k: cm.mean_angle_test(v, n) for k, v in means.items()}
    out = {"records": n, "splits": {k: list(v) for k, v in splits.items()},
           "split_tests": {k: cm.proportion_test(v[0], n) for k, v in splits.items()},
           "means": means, "mean_tests": tests, "baseline": cm.uniform_sphere_baseline(),
           "symmetric_law": {k: v for k, v in cm.symmetric_law_check(splits).items()
                             if k != "expected"}}
    return {"source": src, "threshold": args.threshold, **filt,
            "retrograde": args.retrograde}, out


def _params(items: Sequence[str]) -> dict:
    out: dict[str, Any] = {}
    for it in items or ():
        if "=" not in it:
            raise InputError(f"parameter {it!r} is not key=value")
        k, v = it.split("=", 1)
        try:
            out[k] = json.loads(v)
        except json.JSONDecodeError:
            out[k] = v
    return out


def cmd_sim(args) -> tuple[dict, Any]:
    params = _params(args.param)
    if args.scheme.startswith("strategy:"):
        rule = args.scheme.split(":", 1)[1]
        rep = mc.strategy_invariance(args.seed, args.replicates, rule,
                                     int(params.get("horizon", 64)),
                                     float(params.get("bankroll", 1023)), args.workers)
    else:
        if args.scheme not in mc.SCHEMES:
            raise InputError(f"unknown scheme {args.scheme!r}; choose from "
                             f"{', '.join(mc.SCHEMES)} or strategy:<rule>")
        cfg = mc.SimulationConfig(args.seed, args.replicates, args.scheme, params)
        rep = mc.simulate_scheme(cfg, args.workers)
    return {"scheme": args.scheme, "seed": args.seed, "replicates": args.replicates,
            "params": params, "workers": args.workers}, rep.as_dict()


def cmd_reproduce(args):
    from . import reproduce as rp
    only = [t for x in (args.only or []) for t in x.split(",") if t]
    try:
        checks = rp.run(only or None)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return {"only": only}, checks


COMMANDS = {
    "table": cmd_table, "deviation": cmd_deviation, "law": cmd_law, "compare": cmd_compare,
    "means": cmd_means, "lsq": cmd_lsq, "game": cmd_game, "insure": cmd_insure,
    "jury": cmd_jury, "tribunal": cmd_tribunal, "appeal": cmd_appeal, "witness": cmd_witness,
    "life": cmd_life, "sexratio": cmd_sexratio, "comets": cmd_comets, "sim": cmd_sim,
    "reproduce": cmd_reproduce,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for simulations (default 0)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print the full JSON report")
    common.add_argument("--csv", metavar="PATH", default=argparse.SUPPRESS,
                        help="input CSV file (output file for 'table')")
    p = argparse.ArgumentParser(prog="chances", parents=[common],
                                description="Calculus of chances toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = add("table", "values of P(t) on a grid")
    s.add_argument("--step", type=float, default=0.01)
    s.add_argument("--tmax", type=float, default=3.0)

    s = add("deviation", "P(t), its inverse, or the deviation window of m trials")
    s.add_argument("--m", type=int)
    s.add_argument("--p", type=_prob)
    s.add_argument("--P", type=_prob)
    s.add_argument("--t", type=float)
    s.add_argument("--l", type=float, help="half-width on the ratio")

    s = add("law", "mean, median and modulus of a density law")
    s.add_argument("law", choices=sorted(LAWS))
    s.add_argument("--m", type=int)
    s.add_argument("--P", type=_prob, default=0.5)
    s.add_argument("--a", type=float, help="threshold for the difference law tail")

    s = add("compare", "compare two observed ratios, or one with a fixed chance")
    for k in ("m1", "n1", "m2", "n2"):
        s.add_argument(f"--{k}", type=int)
    s.add_argument("--fixed", type=_prob)
    s.add_argument("--alpha", type=float, default=0.0)

    s = add("means", "modulus and weight of measurement series (CSV columns series,value)")
    s.add_argument("--dataset", choices=("cavendish", "dumas"), default="cavendish")
    s.add_argument("--P", type=_prob, default=0.5)
    s.add_argument("--l", type=float)

    s = add("lsq", "least squares from condition rows (CSV columns C1.., Delta)")
    s.add_argument("--P", type=_prob, default=0.5)

    s = add("game", "punter limits, oscillation, ruin, Petersburg, passe-dix")
    s.add_argument("kind", choices=("punter", "oscillation", "ruin", "petersburg", "passedix"))
    s.add_argument("--m", type=int, default=3000)
    s.add_argument("--p", type=_prob, default=1 / 18)
    s.add_argument("--a", type=float, default=1.0)
    s.add_argument("--b", type=float, default=15.0)
    s.add_argument("--P", type=_prob, default=0.5)
    s.add_argument("--alpha", type=float, default=50.0)
    s.add_argument("--n", type=int, default=1000)
    s.add_argument("--cap", type=float, default=50e6)
    s.add_argument("--unit", type=float, default=1.0)

    s = add("insure", "insurance windows (portfolio CSV columns count,value,risk)")
    s.add_argument("kind", choices=("window", "deficit", "boni", "poisson", "allocate"))
    s.add_argument("--m", type=int, default=10_000)
    s.add_argument("--p", type=_prob, default=0.001)
    s.add_argument("--w", type=_prob, default=0.0015)
    s.add_argument("--a", type=float, default=1.0)
    s.add_argument("--P", type=_prob, default=0.5)
    s.add_argument("--n-max", dest="n_max", type=int, default=11)
    s.add_argument("--mu", type=float)

    s = add("jury", "twelve-juror verdict analysis (category CSV columns label,c1,c2,weight)")
    s.add_argument("--c1", type=_prob)
    s.add_argument("--c2", type=_prob)
    s.add_argument("--N", type=float)
    s.add_argument("--hypothesis", choices=("A", "B", "both"), default="both")
    s.add_argument("--digits", type=int)
    s.add_argument("--rounding", choices=("truncate", "round"), default="truncate")
    s.add_argument("--drop-term", dest="drop_term", action="store_true")

    s = add("tribunal", "judges' chances from lone-vote or unanimity rates")
    for k in ("a", "b", "c", "d"):
        s.add_argument(f"--{k}", type=_prob)
    s.add_argument("--unanimity", type=_prob)
    s.add_argument("--bare", type=_prob, help="bare-majority rate")
    s.add_argument("--size", type=int, default=3)

    s = add("appeal", "first instance and appeal reliabilities, cassation bounds")
    s.add_argument("--v", type=_prob)
    s.add_argument("--q", type=_prob)
    s.add_argument("--q-prime", dest="q_prime", type=_prob)
    s.add_argument("--q-dprime", dest="q_dprime", type=_prob)

    s = add("witness", "agreement of observers and witnesses")
    for k in ("v1", "v2", "v3"):
        s.add_argument(f"--{k}", type=_prob)
    s.add_argument("--agreement", type=_prob)
    s.add_argument("--pooled-v", dest="pooled_v", type=_prob)

    s = add("life", "life-table quantities (CSV columns age,survivors)")
    s.add_argument("--age", type=float, default=0.0)
    s.add_argument("--births", type=float)
    s.add_argument("--exponential", type=float, metavar="RATE")

    s = add("sexratio", "male-birth ratio analysis (CSV columns label,m,n)")
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--unit-m", dest="unit_m", type=float)
    s.add_argument("--p", type=_prob)

    s = add("comets", "orbit-orientation statistics of a catalog")
    s.add_argument("--threshold", type=float, default=60.0)
    s.add_argument("--season", choices=("winter", "summer"))
    s.add_argument("--q-max", dest="q_max", type=float)
    s.add_argument("--retrograde", choices=("backward", "forward"), default="backward")

    s = add("sim", "seeded simulation of a scheme")
    s.add_argument("--scheme", required=True)
    s.add_argument("--replicates", type=int, default=100_000)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="scheme parameter; VALUE is parsed as JSON when possible")

    s = add("reproduce", "rerun every pinned check")
    s.add_argument("--only", action="append", metavar="TOPIC",
                   help="topic name or criterion number; repeatable or comma-separated")
    return p


def _pinned(x: Any) -> str:
    # checks echo pinned values at full printed precision
    if isinstance(x, float):
        return f"{x:.8g}"
    if isinstance(x, dict) and set(x) == {"fraction", "value"}:
        return x["fraction"]
    return _fmt(x)


def _print_checks(checks, out=None) -> None:
    for c in checks:
        d = c.as_dict()
        flag = "PASS" if c.passed else "FAIL"
        line = (f"{flag} [{c.criterion:2d} {c.topic}] {c.name}: expected {_pinned(d['expected'])}"
                f", computed {_pinned(d['computed'])}")
        if c.tol:
            line += f" (tol {c.tol:g})"
        if c.note:
            line += f"  # {c.note}"
        print(line, file=out)
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed", file=out)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in (("seed", 0), ("json", False), ("csv", None)):
        if not hasattr(args, k):
            setattr(args, k, v)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            inputs, outputs = COMMANDS[args.command](args)
    except (InputError, DomainError, ValueError, KeyError) as exc:
        msg = str(exc) if not isinstance(exc, KeyError) else f"missing parameter {exc}"
        if args.json:
            print(json.dumps({"command": args.command, "error": msg}))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_REJECTED
    if args.command == "reproduce":
        report = make_report("reproduce", inputs, [c.as_dict() for c in outputs], caught)
        if args.json:
            print(json.dumps(report, indent=2))
        else:
            _print_checks(outputs)
        return EXIT_OK if all(c.passed for c in outputs) else EXIT_CHECK_FAILED
    report = make_report(args.command, inputs, outputs, caught)
    if args.json:
        print(json.dumps(report, indent=2))
    elif args.command == "table":
        if not args.csv:
            print("\n".join(dv.table_rows(args.step, args.tmax)))
    else:
        _print_text(report["outputs"])
        for w in report["warnings"]:
            print(f"warning: {w}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
