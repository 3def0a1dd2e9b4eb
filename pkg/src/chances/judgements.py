"""Reliability of judges, tribunals, appeal chains, juries and witnesses.

Every voter is right with chance ``v`` independently of the others unless
stated. Solvers that can fail return a result with ``feasible=False`` and
a diagnosis instead of raising: an impossible tally is evidence against
the independence hypothesis, not a programming error.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import optimize, stats

from .combinatorics import DomainError

__all__ = [
    "TribunalTally",
    "JuryTally",
    "AppealStats",
    "SolveResult",
    "tribunal_tally",
    "solve_three_judges",
    "laplace_equal_chance",
    "tribunal_reliability",
    "three_judge_reliability",
    "four_judge_rates",
    "solve_four_judges",
    "panel_reliability",
    "bare_majority_rate",
    "v_from_bare_majority",
    "majority_posterior",
    "appeal_reversal_rate",
    "AppealSolution",
    "appeal_system",
    "CassationBounds",
    "cassation_bounds",
    "proportional_courts",
    "invert_three_judge",
    "invert_panel",
    "JuryResultA",
    "JuryResultB",
    "jury12_rates",
    "jury12_hypothesis_A",
    "jury12_hypothesis_B",
    "CategoryResult",
    "jury12_by_category",
    "pair_agreement_v",
    "mixture_corrected_v",
    "witness_agreement",
    "unanimous_witnesses",
    "opposed_witness",
]

INDEPENDENCE_REJECTED = "independence hypothesis rejected"
BRACKET = (0.5 + 1e-9, 1.0 - 1e-9)
XTOL = 1e-12


def _root(f, lo: float = BRACKET[0], hi: float = BRACKET[1]) -> float | None:
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        return None
    return optimize.brentq(f, lo, hi, xtol=XTOL, rtol=4 * np.finfo(float).eps)


def _truncate(x: float, digits: int | None, rounding: str = "truncate") -> float:
    if digits is None:
        return x
    if rounding == "round":
        return round(x, digits)
    if rounding != "truncate":
        raise DomainError(f"unknown rounding {rounding!r}")
    s = 10.0**digits
    return math.floor(x * s + 1e-9) / s


@dataclass(frozen=True)
class TribunalTally:
    """Rates at which each of three judges votes alone (``a, b, c``) and of unanimity ``p``."""

    a: float
    b: float
    c: float
    p: float | None = None

    def __post_init__(self):
        p = 1.0 - (self.a + self.b + self.c) if self.p is None else self.p
        object.__setattr__(self, "p", p)
        vals = (self.a, self.b, self.c, p)
        if any(x < -1e-12 or x > 1 + 1e-12 for x in vals):
            raise DomainError("tally rates must lie in [0, 1]")
        if abs(sum(vals) - 1.0) > 1e-9:
            raise DomainError("tally rates must sum to 1")


@dataclass(frozen=True)
class JuryTally:
    """Conviction rates by more than 7 of 12 (``c1``) and by exactly 7 (``c2``)."""

    c1: float
    c2: float
    a: float | None = None
    label: str = ""

    def __post_init__(self):
        if self.c1 < 0 or self.c2 < 0 or self.c1 + self.c2 > 1:
            raise DomainError("need c1, c2 >= 0 and c1 + c2 <= 1")


@dataclass(frozen=True)
class AppealStats:
    """Reversal rate ``q`` and cassation rates ``q_prime`` (first instance), ``q_dprime`` (appeal)."""

    q: float | None = None
    q_prime: float | None = None
    q_dprime: float | None = None

    def __post_init__(self):
        for x in (self.q, self.q_prime, self.q_dprime):
            if x is not None and not 0 <= x <= 1:
                raise DomainError("rates must lie in [0, 1]")


@dataclass(frozen=True)
class SolveResult:
    """Chosen solution (``None`` when none has every chance above one half) and all branches."""

    feasible: bool
    v: tuple | None
    branches: tuple = ()
    diagnosis: str = ""
    residual: float = math.nan

    def as_dict(self) -> dict:
        return {"feasible": self.feasible, "v": None if self.v is None else list(self.v),
                "branches": [list(b) for b in self.branches], "diagnosis": self.diagnosis,
                "residual": self.residual}


# three judges

def tribunal_tally(v1: float, v2: float, v3: float) -> TribunalTally:
    """Forward model: rates of each judge alone and of unanimity."""
    a = v1 * (1 - v2 - v3) + v2 * v3
    b = v2 * (1 - v1 - v3) + v1 * v3
    c = v3 * (1 - v1 - v2) + v1 * v2
    return TribunalTally(a, b, c, 1 - (v1 + v2 + v3) + v1 * v2 + v1 * v3 + v2 * v3)


def solve_three_judges(tally: TribunalTally, tol: float = 1e-9) -> SolveResult:
    """Invert the three-judge tally.

    With ``v_i = 1/2 + z_i`` the pair products are
    ``z1 z2 = -(a + b - 1/2)/2`` and cyclically, so
    ``z1^2 = (a+b-1/2)(a+c-1/2) / (1 - 2(b+c))``. The products fix the
    relative signs; the branch with every ``v_i >= 1/2`` is preferred.
    """
    a, b, c = tally.a, tally.b, tally.c
    s_ab, s_ac, s_bc = a + b - 0.5, a + c - 0.5, b + c - 0.5
    signs = [np.sign(x) for x in (s_ab, s_ac, s_bc)]
    n_pos = sum(1 for s in signs if s > 0)
    n_neg = sum(1 for s in signs if s < 0)
    zero = n_pos + n_neg < 3
    if not zero and not (n_neg == 3 or (n_pos == 2 and n_neg == 1)):
        return SolveResult(False, None, (), f"{INDEPENDENCE_REJECTED}: radicands negative")
    z12, z13, z23 = -s_ab / 2, -s_ac / 2, -s_bc / 2
    if zero:
        # some z_i is zero; recover the others from the surviving products
        return _three_judges_degenerate(tally, tol)
    zsq = (z12 * z13 / z23, z12 * z23 / z13, z13 * z23 / z12)
    if min(zsq) < -1e-15:
        return SolveResult(False, None, (), f"{INDEPENDENCE_REJECTED}: radicands negative")
    mag = [math.sqrt(max(x, 0.0)) for x in zsq]
    branches = []
    for s1 in (1, -1):
        s2 = s1 * (1 if z12 >= 0 else -1)
        s3 = s1 * (1 if z13 >= 0 else -1)
        z = (s1 * mag[0], s2 * mag[1], s3 * mag[2])
        branches.append(tuple(0.5 + zi for zi in z))
    return _choose(branches, lambda v: tribunal_tally(*v), tally, tol)


def _three_judges_degenerate(tally: TribunalTally, tol: float) -> SolveResult:
    def resid(x):
        t = tribunal_tally(*x)
        return [t.a - tally.a, t.b - tally.b, t.c - tally.c]
    sol = optimize.least_squares(resid, x0=[0.75, 0.75, 0.75], bounds=(0.5, 1.0))
    return _choose([tuple(sol.x)], lambda v: tribunal_tally(*v), tally, max(tol, 1e-8))


def _choose(branches, forward, tally, tol) -> SolveResult:
    ok = []
    for v in branches:
        if all(-1e-12 <= x <= 1 + 1e-12 for x in v):
            f = forward(v)
            r = max(abs(f.a - tally.a), abs(f.b - tally.b), abs(f.c - tally.c),
                    abs(getattr(f, "d", 0.0) - getattr(tally, "d", 0.0)))
            if r <= max(tol, 1e-9):
                ok.append((tuple(min(1.0, max(0.0, x)) for x in v), r))
    if not ok:
        return SolveResult(False, None, tuple(branches),
                           f"{INDEPENDENCE_REJECTED}: no branch within [0, 1] fits the tally")
    upper = [(v, r) for v, r in ok if all(x >= 0.5 - 1e-12 for x in v)]
    chosen = upper[0] if upper else (None, min(r for _, r in ok))
    diag = "" if upper else "no branch with every chance above one half"
    return SolveResult(True, chosen[0], tuple(v for v, _ in ok), diag, chosen[1])


def laplace_equal_chance(p: float) -> float:
    """Common chance from the unanimity rate: ``1/2 + (1/2) sqrt((4p - 1)/3)``."""
    if p < 0.25:
        raise DomainError(f"{INDEPENDENCE_REJECTED}: unanimity rate below 1/4")
    if p > 1:
        raise DomainError("p must not exceed 1")
    return 0.5 + 0.5 * math.sqrt((4.0 * p - 1.0) / 3.0)


def tribunal_reliability(v1: float, v2: float, v3: float) -> float:
    """Chance of a correct majority of three: ``v1 v2 + v1 v3 + v2 v3 - 2 v1 v2 v3``."""
    return v1 * v2 + v1 * v3 + v2 * v3 - 2.0 * v1 * v2 * v3


def three_judge_reliability(v):
    """Equal-chance three-judge reliability ``3 v^2 - 2 v^3``, i.e. ``v^3 + 3 v^2 (1-v)``."""
    return 3.0 * v * v - 2.0 * v**3


# four judges

@dataclass(frozen=True)
class FourTally:
    a: float
    b: float
    c: float
    d: float


def four_judge_rates(v: Sequence[float]) -> FourTally:
    """Rate at which each of four judges stands alone against the other three."""
    v = np.asarray(v, float)
    out = []
    for i in range(4):
        o = np.delete(v, i)
        out.append((1 - v[i]) * np.prod(o) + v[i] * np.prod(1 - o))
    return FourTally(*map(float, out))


def solve_four_judges(a: float, b: float, c: float, d: float, tol: float = 1e-9) -> SolveResult:
    """Invert the four lone-judge rates.

    With ``alpha = 2a - 1/4`` (and likewise ``beta, gamma, delta``),
    ``8 z1 z2 = (gamma+delta) - (alpha+beta) +- R`` and
    ``8 z3 z4 = (alpha+beta) - (gamma+delta) +- R`` with the same sign,
    ``R = sqrt([(alpha+beta) - (gamma+delta)]^2 - 4(alpha+beta+gamma+delta))``;
    the other two pairings follow by permutation and
    ``z1 = +- sqrt(z1z2 z1z3 / z2z3)``. All sign systems are enumerated and
    kept when they reproduce the rates.
    """
    rates = (a, b, c, d)
    if any(x < 0 for x in rates) or sum(rates) > 1 + 1e-12:
        raise DomainError("rates must be non-negative with sum at most 1")
    g = [2 * x - 0.25 for x in rates]

    def pair(i, j):
        k, l = [x for x in range(4) if x not in (i, j)]
        S, T = g[i] + g[j], g[k] + g[l]
        disc = (S - T) ** 2 - 4 * (S + T)
        if disc < -1e-14:
            return None
        R = math.sqrt(max(disc, 0.0))
        return [((T - S + s * R) / 8, (S - T + s * R) / 8) for s in (1, -1)]

    p12, p13, p14 = pair(0, 1), pair(0, 2), pair(0, 3)
    if p12 is None or p13 is None or p14 is None:
        return SolveResult(False, None, (), f"{INDEPENDENCE_REJECTED}: negative radicand")
    branches = []
    for (z12, z34), (z13, z24), (z14, z23) in itertools.product(p12, p13, p14):
        sq = [_safe_ratio(z12 * z13, z23), _safe_ratio(z12 * z23, z13),
              _safe_ratio(z13 * z23, z12), _safe_ratio(z14 * z24, z12)]
        if any(x is None or x < -1e-14 for x in sq):
            continue
        m = [math.sqrt(max(x, 0.0)) for x in sq]
        for s1 in (1, -1):
            z1 = s1 * m[0]
            z = [z1, _sgn(z12, z1) * m[1], _sgn(z13, z1) * m[2], _sgn(z14, z1) * m[3]]
            cand = tuple(round(0.5 + zi, 15) for zi in z)
            if cand not in branches:
                branches.append(cand)
    tally = FourTally(a, b, c, d)
    res = _choose(branches, lambda v: four_judge_rates(v), tally, tol)
    return res


def _safe_ratio(num: float, den: float) -> float | None:
    if abs(den) < 1e-15:
        return None
    return num / den


def _sgn(prod: float, z1: float) -> int:
    # sign of z_j given z1 z_j = prod
    if z1 == 0:
        return 1
    return 1 if prod * z1 >= 0 else -1


# panels of equal judges

def panel_reliability(v, m: int):
    """Chance that a majority of ``2m + 1`` equal judges is right."""
    n = 2 * m + 1
    return stats.binom.sf(m, n, v) if np.ndim(v) else float(stats.binom.sf(m, n, v))


def _bare_majority_coeff(size: int) -> int:
    m = size // 2
    # odd: (2m+1) 2m ... (m+2) / m!  ;  even: 2m (2m-1) ... (m+1) / m!
    return math.comb(size, m)


def bare_majority_rate(v: float, size: int) -> float:
    """Rate of decisions by the barest majority (or of ties for an even panel)."""
    m = size // 2
    return _bare_majority_coeff(size) * (v * (1 - v)) ** m


def v_from_bare_majority(q: float, size: int) -> tuple[float, float]:
    """Both roots ``1/2 +- sqrt(1/4 - (q / C)^(1/m))`` of the bare-majority rate.

    ``C`` is ``(2m+1) 2m ... (m+2) / m!`` for ``2m + 1`` judges and
    ``2m (2m-1) ... (m+1) / m!`` for ``2m`` judges; for three judges
    (``m = 1``) this is ``1/2 +- sqrt(1/4 - q/3)``.
    """
    if size < 2:
        raise DomainError("a panel needs at least two judges")
    m = size // 2
    C = _bare_majority_coeff(size)
    if q < 0:
        raise DomainError("q must be non-negative")
    prod = (q / C) ** (1.0 / m)
    rad = 0.25 - prod
    if rad < -1e-15:
        raise DomainError(f"{INDEPENDENCE_REJECTED}: q exceeds its maximum {C * 0.25 ** m}")
    r = math.sqrt(max(rad, 0.0))
    return 0.5 - r, 0.5 + r


def majority_posterior(v: float, i: int) -> float:
    """Chance that a decision carried by ``i`` surplus votes is right."""
    if not 0 < v < 1 or i < 1:
        raise DomainError("need 0 < v < 1 and i >= 1")
    return v**i / (v**i + (1 - v) ** i)


# appeals and cassation

def appeal_reversal_rate(V: float, Vp: float) -> float:
    """Chance that the appeal court reverses: ``V + V' - 2 V V'``."""
    return V + Vp - 2.0 * V * Vp


def invert_three_judge(V: float) -> float:
    """``v`` in ``[1/2, 1]`` with ``3 v^2 - 2 v^3 = V``."""
    if not 0.5 <= V <= 1:
        raise DomainError("V must lie in [1/2, 1]")
    r = _root(lambda v: three_judge_reliability(v) - V, 0.5, 1.0)
    return float(r)


def invert_panel(V: float, m: int) -> float:
    """``v`` in ``[1/2, 1]`` with panel reliability ``V`` for ``2m + 1`` judges."""
    if not 0.5 <= V <= 1:
        raise DomainError("V must lie in [1/2, 1]")
    return float(_root(lambda v: panel_reliability(v, m) - V, 0.5, 1.0))


@dataclass(frozen=True)
class AppealSolution:
    v: float
    V: float
    V_prime: float
    q: float
    confirmed_reliability: float
    reversed_reliability: float
    note: str = "three-judge reliability taken as 3v^2 - 2v^3"

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _appeal_from_v(v: float) -> AppealSolution:
    V = three_judge_reliability(v)
    Vp = panel_reliability(v, 3)
    q = appeal_reversal_rate(V, Vp)
    conf = V * Vp / (V * Vp + (1 - V) * (1 - Vp))
    rev = Vp * (1 - V) / q if q > 0 else math.nan
    return AppealSolution(v, V, Vp, q, conf, rev)


def appeal_system(q: float | None = None, v: float | None = None) -> AppealSolution:
    """First-instance (3 judges) and appeal (7 judges) reliabilities at a common ``v``.

    Give ``q`` to solve ``q = V + V' - 2 V V'`` for ``v`` in ``(1/2, 1)``,
    or ``v`` for the forward map.
    """
    if (q is None) == (v is None):
        raise DomainError("give exactly one of q and v")
    if v is not None:
        return _appeal_from_v(v)
    if not 0 < q < 0.5:
        raise DomainError("q must lie in (0, 1/2)")
    root = _root(lambda x: _appeal_from_v(x).q - q)
    if root is None:
        raise DomainError("no root in (1/2, 1)")
    return _appeal_from_v(root)


@dataclass(frozen=True)
class CassationBounds:
    V: tuple
    V_prime: tuple
    v: tuple
    v_prime: tuple
    V_dprime_min: float
    V_refined: tuple
    v_refined: tuple
    feasible: bool = True
    diagnosis: str = ""

    def as_dict(self) -> dict:
        return {k: (list(x) if isinstance(x, tuple) else x) for k, x in self.__dict__.items()}


def _bounds_from_cassation(q: float) -> tuple[float, float]:
    # q = V + V'' - 2 V V'': V'' = 1 gives V = 1 - q, V'' = V gives 2V(1-V) = q
    rad = 0.25 - q / 2.0
    if rad < 0:
        raise DomainError(f"{INDEPENDENCE_REJECTED}: imaginary bound")
    return 1.0 - q, 0.5 + math.sqrt(rad)


def cassation_bounds(stats_: AppealStats) -> CassationBounds:
    """Bounds on the court reliabilities from cassation rates.

    ``q' = V + V'' - 2 V V''`` with ``V <= V'' <= 1`` brackets ``V``; the
    same for ``V'`` from ``q''``. At the upper end of ``V'`` the cassation
    reliability is ``V'' = (q'' - V') / (1 - 2 V')``, a lower bound on
    ``V''`` that tightens the upper bound of ``V``.
    """
    qp, qpp = stats_.q_prime, stats_.q_dprime
    if qp is None or qpp is None:
        raise DomainError("both cassation rates are required")
    try:
        V = _bounds_from_cassation(qp)
        Vp = _bounds_from_cassation(qpp)
    except DomainError as exc:
        nan2 = (math.nan, math.nan)
        return CassationBounds(nan2, nan2, nan2, nan2, math.nan, nan2, nan2, False, str(exc))
    Vpp_min = (qpp - Vp[1]) / (1.0 - 2.0 * Vp[1])
    V_hi = (qp - Vpp_min) / (1.0 - 2.0 * Vpp_min)
    V_ref = (V[0], min(V[1], V_hi))
    v = tuple(invert_three_judge(x) for x in V)
    vp = tuple(invert_panel(x, 3) for x in Vp)
    v_ref = tuple(invert_three_judge(x) for x in V_ref)
    return CassationBounds(V, Vp, v, vp, Vpp_min, V_ref, v_ref)


def proportional_courts(q: float, ratio: float = 1.5) -> tuple[float, float, float]:
    """Solve ``q = V + V' - 2 V V'`` with ``V' = ratio V``; returns ``(V, V', v)``."""
    # 2 ratio V^2 - (1 + ratio) V + q = 0, smaller root admissible only when V' <= 1
    A, B = 2.0 * ratio, -(1.0 + ratio)
    disc = B * B - 4 * A * q
    if disc < 0:
        raise DomainError("no real solution")
    roots = sorted(((-B - math.sqrt(disc)) / (2 * A), (-B + math.sqrt(disc)) / (2 * A)))
    V = next((r for r in roots if r >= 0.5), roots[-1])
    return V, ratio * V, invert_three_judge(min(max(V, 0.5), 1.0))


# juries of twelve

def _lhs_A(v):
    # sum_{j=8..12} C(12, j) v^(j-7) (1-v)^(12-j)
    return sum(math.comb(12, j) * v ** (j - 7) * (1 - v) ** (12 - j) for j in range(8, 13))


def jury12_rates(k1: float, v1: float, v2: float) -> tuple[float, float, float]:
    """Forward rates ``(c1, c2, a)`` of convictions by 8+, by exactly 7, and 6-6 splits."""
    conv = lambda p, j: math.comb(12, j) * p**j * (1 - p) ** (12 - j)
    c1 = sum(k1 * conv(v1, j) + (1 - k1) * conv(1 - v2, j) for j in range(8, 13))
    c2 = k1 * conv(v1, 7) + (1 - k1) * conv(1 - v2, 7)
    a = k1 * conv(v1, 6) + (1 - k1) * conv(1 - v2, 6)
    return c1, c2, a


def _V1(v: float) -> float:
    return float(stats.binom.sf(6, 12, v))


@dataclass(frozen=True)
class JuryResultA:
    v1: float
    V1: float
    k1: float
    P: float | None
    N: int | None
    digits: int | None = None

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class JuryResultB:
    v: float
    k1: float
    V1: float
    V2: float
    Q: float | None
    N: int | None
    digits: int | None = None
    drop_term: bool = False

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def jury12_hypothesis_A(tally: JuryTally, N: float | None = None, digits: int | None = None,
                        rounding: str = "truncate") -> JuryResultA:
    """Absolvable jurors never err (``v2 = 1``).

    ``v1`` solves the quintic
    ``sum_{j=8..12} C(12,j) v^(j-7) (1-v)^(12-j) = 792 (c1/c2) (1-v)^5``;
    then ``V1`` is the chance of 7 or more right votes, ``k1 = (c1+c2)/V1``
    and ``P = k1 (1 - V1) N`` convictable accused are acquitted.

    ``digits`` cuts ``V1`` and ``k1`` to that many decimals before forming
    ``P`` (``rounding`` is ``"truncate"`` or ``"round"``), the precision at
    which hand tables carried them.
    """
    if tally.c2 <= 0:
        raise DomainError("c2 must be positive")
    r = tally.c1 / tally.c2
    v1 = _root(lambda v: _lhs_A(v) - 792.0 * r * (1 - v) ** 5)
    if v1 is None:
        raise DomainError("no admissible root in (1/2, 1)")
    V1 = _V1(v1)
    k1 = (tally.c1 + tally.c2) / V1
    P = None
    if N is not None:
        P = _truncate(k1, digits, rounding) * (1 - _truncate(V1, digits, rounding)) * N
    return JuryResultA(v1, V1, k1, P, N, digits)


def _k1_B(v: float, c2: float) -> float:
    return (c2 / (792.0 * v**5 * (1 - v) ** 5) - (1 - v) ** 2) / (2 * v - 1)


def jury12_hypothesis_B(tally: JuryTally, N: float | None = None, digits: int | None = None,
                        drop_term: bool = False, rounding: str = "truncate") -> JuryResultB:
    """All jurors share one chance ``v`` (``v1 = v2``).

    ``k1`` follows from the simple-majority rate,
    ``c2 = 792 v^5 (1-v)^5 [k1 (2v - 1) + (1-v)^2]``, and ``v`` solves
    ``k1 V1 + (1 - k1)(1 - V2) = c1 + c2`` with
    ``V2 = V1 + 924 v^6 (1-v)^6``. ``drop_term=True`` uses the simplified
    ``k1 (1 - 924 v^6 (1-v)^6) = c1 + c2``. ``Q = (1 - k1)(1 - V2) N``.
    """
    if tally.c2 <= 0:
        raise DomainError("c2 must be positive")
    s = tally.c1 + tally.c2

    def V2_of(v):
        return _V1(v) + 924.0 * v**6 * (1 - v) ** 6

    def f(v):
        k1 = _k1_B(v, tally.c2)
        if drop_term:
            return k1 * (1 - 924.0 * v**6 * (1 - v) ** 6) - s
        return k1 * _V1(v) + (1 - k1) * (1 - V2_of(v)) - s

    # k1 must stay in (0, 1): search where it is admissible
    grid = np.linspace(0.5 + 1e-6, 1 - 1e-6, 4001)
    ok = [(x) for x in grid if 0 < _k1_B(x, tally.c2) < 1]
    if not ok:
        raise DomainError("no admissible root in (1/2, 1)")
    vals = [f(x) for x in ok]
    root = None
    for (x0, f0), (x1, f1) in zip(zip(ok, vals), zip(ok[1:], vals[1:])):
        if np.sign(f0) != np.sign(f1) and x1 - x0 < 1e-3:
            root = optimize.brentq(f, x0, x1, xtol=XTOL)
            break
    if root is None:
        raise DomainError("no admissible root in (1/2, 1)")
    k1 = _k1_B(root, tally.c2)
    V1, V2 = _V1(root), V2_of(root)
    Q = None
    if N is not None:
        Q = (1 - _truncate(k1, digits, rounding)) * (1 - _truncate(V2, digits, rounding)) * N
    return JuryResultB(root, k1, V1, V2, Q, N, digits, drop_term)


@dataclass(frozen=True)
class CategoryResult:
    per_category: tuple
    weights: tuple
    v1: float
    k1: float
    P_total: float | None
    P_parts: tuple = field(default=())

    def as_dict(self) -> dict:
        return {"per_category": [r.as_dict() for r in self.per_category],
                "weights": list(self.weights), "v1": self.v1, "k1": self.k1,
                "P_total": self.P_total, "P_parts": list(self.P_parts)}


def jury12_by_category(tallies: Sequence[JuryTally], weights: Sequence[float],
                       N: float | None = None, digits: int | None = None,
                       rounding: str = "truncate") -> CategoryResult:
    """Solve hypothesis A per category and recombine with the category weights.

    ``v1 = sum k v1_i`` and ``k1 = sum k k1_i``; category ``i`` holds
    ``weights[i] N`` accused.
    """
    w = np.asarray(weights, float)
    if len(tallies) != w.size:
        raise DomainError("one weight per category is required")
    if abs(w.sum() - 1) > 1e-9 or np.any(w < 0):
        raise DomainError("weights must be non-negative and sum to 1")
    res = tuple(jury12_hypothesis_A(t, None if N is None else w_i * N, digits, rounding)
                for t, w_i in zip(tallies, w))
    v1 = float(sum(wi * r.v1 for wi, r in zip(w, res)))
    k1 = float(sum(wi * r.k1 for wi, r in zip(w, res)))
    parts = tuple(r.P for r in res) if N is not None else ()
    total = float(sum(parts)) if N is not None else None
    return CategoryResult(res, tuple(w.tolist()), v1, k1, total, parts)


# pairs of observers and witnesses

def pair_agreement_v(p: float) -> float:
    """Common chance of two observers from their agreement rate: ``1/2 + sqrt(2p-1)/2``."""
    if not 0.5 <= p <= 1:
        raise DomainError("agreement rate must lie in [1/2, 1]")
    return 0.5 + 0.5 * math.sqrt(2 * p - 1)


def mixture_corrected_v(ps: Sequence[float] | None = None, ks: Sequence[float] | None = None,
                        pooled_v: float | None = None) -> dict:
    """Chance of an observer corrected for causes acting on all observers at once.

    Per category ``v = 1/2 + (1/2) sum k_i sqrt(2 p_i - 1)``; the pooled
    agreement rate gives the larger ``1/2 + (1/2) sqrt(2 sum k p - 1)``.
    Knowing only the pooled ``v = 1/2 + z``, the corrected value is at
    least ``1/2 + sqrt(z^2 - 1/16)``.
    """
    out = {}
    if ps is not None:
        p = np.asarray(ps, float)
        k = np.ones_like(p) / p.size if ks is None else np.asarray(ks, float)
        if p.shape != k.shape:
            raise DomainError("one weight per category is required")
        if np.any(p < 0.5) or np.any(p > 1):
            raise DomainError("agreement rates must lie in [1/2, 1]")
        if abs(k.sum() - 1) > 1e-9 or np.any(k < 0):
            raise DomainError("weights must be non-negative and sum to 1")
        out["v"] = 0.5 + 0.5 * float(np.sum(k * np.sqrt(2 * p - 1)))
        out["pooled_v"] = pair_agreement_v(float(k @ p))
        pooled_v = out["pooled_v"] if pooled_v is None else pooled_v
    if pooled_v is not None:
        z = pooled_v - 0.5
        out["lower_bound"] = 0.5 + math.sqrt(z * z - 1 / 16) if z * z >= 1 / 16 else math.nan
    return out


def witness_agreement(v1: float, v2: float) -> dict:
    """Agreement rate of two witnesses and the chances of truth in each case."""
    p = 1 - (v1 + v2) + 2 * v1 * v2
    q = 1 - p
    V = v1 * v2 / p if p > 0 else math.nan
    VA = v1 * (1 - v2) / q if q > 0 else math.nan
    return {"p_agree": p, "q_disagree": q, "V_truth_given_agree": V, "V_A_given_disagree": VA}


def unanimous_witnesses(vs: Sequence[float]) -> float:
    """Chance that agreeing independent witnesses tell the truth."""
    v = np.asarray(vs, float)
    if v.size == 0:
        raise DomainError("need at least one witness")
    a, b = float(np.prod(v)), float(np.prod(1 - v))
    return a / (a + b)


def opposed_witness(v1: float, v2: float, v3: float) -> float:
    """Chance that A and B are right when C contradicts them.

    ``v1 v2 (1-v3) / (v1 v2 (1-v3) + (1-v1)(1-v2) v3)``; equals ``v1`` when
    ``v2 = v3``.
    """
    num = v1 * v2 * (1 - v3)
    return num / (num + (1 - v1) * (1 - v2) * v3)
