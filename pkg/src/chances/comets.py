"""Angular statistics of orbit catalogs.

Axes: ``x`` towards the vernal equinox, ``y`` towards the summer solstice,
``z`` towards the north ecliptic pole. The orbit pole is the direction of
the orbital angular momentum, so it lies in the north for direct motion.
Each of the six angles is the distance of the pole (``theta`` family) or
of the perihelion (``t`` family) from the nearer end of one axis, folded
into ``[0, 90]`` degrees, with a minus sign when the nearer end is the
negative one.
"""

from __future__ import annotations

import csv
import datetime as _dt
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .combinatorics import DomainError
from .deviation_function import p_of_t
from .distribution_summaries import latitude_law_summary, to_dms
from .repetition_laws import SmallSampleWarning

__all__ = [
    "ANGLE_NAMES",
    "MIN_SUM_DEG",
    "OrbitRecord",
    "AngleSextet",
    "Catalog",
    "pole_and_perihelion",
    "angles_from_elements",
    "angles_array",
    "sample_uniform_elements",
    "uniform_sphere_baseline",
    "mean_angle_test",
    "running_means",
    "split_counts",
    "symmetric_law_check",
    "proportion_test",
    "proportion_test_over_prefixes",
    "is_winter",
    "load_catalog",
]

ANGLE_NAMES = ("theta", "theta1", "theta2", "t", "t1", "t2")
MIN_SUM_DEG = 3.0 * math.degrees(math.atan(math.sqrt(2.0)))
_SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class OrbitRecord:
    """Catalogued elements of one orbit.

    ``theta`` is the inclination in ``[0, 180]``; ``lam`` the longitude of
    the ascending node and ``l`` that of the perihelion, both in degrees.
    A retrograde orbit may be listed either with ``theta > 90`` or with
    ``theta <= 90`` and ``motion="retrograde"``.
    """

    theta: float
    lam: float
    l: float
    motion: str = "direct"
    q_AU: float = math.nan
    epoch: _dt.date | None = None
    label: str = ""

    def __post_init__(self):
        if not 0 <= self.theta <= 180:
            raise DomainError("inclination must lie in [0, 180]")
        if self.motion not in ("direct", "retrograde"):
            raise DomainError("motion must be 'direct' or 'retrograde'")
        if self.theta > 90 and self.motion == "direct":
            raise DomainError("an inclination above 90 degrees means retrograde motion")
        object.__setattr__(self, "lam", self.lam % 360.0)
        object.__setattr__(self, "l", self.l % 360.0)

    def elements(self, retrograde_longitudes: str = "backward") -> tuple[float, float, float]:
        """``(i, node, argument of perihelion)`` in degrees.

        A retrograde orbit listed with ``theta <= 90`` gets ``i = 180 - theta``.
        Its perihelion longitude is read as node minus the argument when
        ``retrograde_longitudes="backward"`` and as node plus the argument
        when ``"forward"``.
        """
        i, lam, l = self.theta, self.lam, self.l
        if self.motion == "retrograde" and self.theta <= 90:
            i = 180.0 - self.theta
            if retrograde_longitudes == "backward":
                return i, lam, (lam - l) % 360.0
            if retrograde_longitudes != "forward":
                raise DomainError(f"unknown convention {retrograde_longitudes!r}")
        return i, lam, (l - lam) % 360.0


@dataclass(frozen=True)
class AngleSextet:
    """Signed angles in degrees; magnitudes lie in ``[0, 90]``."""

    theta: float
    theta1: float
    theta2: float
    t: float
    t1: float
    t2: float
    singular: bool = False

    def values(self) -> tuple:
        return tuple(getattr(self, k) for k in ANGLE_NAMES)

    def magnitudes(self) -> tuple:
        return tuple(abs(v) for v in self.values())


def _fold(c):
    # signed folded angle from a direction cosine
    c = np.clip(c, -1.0, 1.0)
    return np.where(c >= 0, 1.0, -1.0) * np.degrees(np.arccos(np.abs(c)))


def pole_and_perihelion(i, node, arg):
    """Unit pole and perihelion vectors from elements in degrees (array-friendly)."""
    i, node, arg = (np.radians(np.asarray(v, float)) for v in (i, node, arg))
    si, ci = np.sin(i), np.cos(i)
    sn, cn = np.sin(node), np.cos(node)
    sw, cw = np.sin(arg), np.cos(arg)
    pole = np.stack([si * sn, -si * cn, ci], axis=-1)
    peri = np.stack([cn * cw - sn * sw * ci, sn * cw + cn * sw * ci, sw * si], axis=-1)
    return pole, peri


def angles_array(i, node, arg) -> np.ndarray:
    """Signed angles, shape ``(..., 6)``, from elements in degrees.

    Uses the direction-cosine relations
    ``cos theta' = sin theta sin lambda``, ``cos theta'' = -sin theta cos lambda``,
    ``tan w = cos theta tan(l - lambda)``, ``cos t = sin theta sin(l - lambda)``,
    ``cos t' = sin t cos(lambda + w)``, ``cos t'' = sin t sin(lambda + w)``.
    """
    ir, nr, ar = (np.radians(np.asarray(v, float)) for v in (i, node, arg))
    si, ci = np.sin(ir), np.cos(ir)
    c_theta1 = si * np.sin(nr)
    c_theta2 = -si * np.cos(nr)
    # projection of the perihelion on the ecliptic, longitude node + w
    w = np.arctan2(ci * np.sin(ar), np.cos(ar))
    c_t = si * np.sin(ar)
    s_t = np.sqrt(np.clip(1.0 - c_t * c_t, 0.0, 1.0))
    c_t1 = s_t * np.cos(nr + w)
    c_t2 = s_t * np.sin(nr + w)
    cos = np.stack([ci, c_theta1, c_theta2, c_t, c_t1, c_t2], axis=-1)
    return _fold(cos)


def angles_from_elements(record: OrbitRecord, retrograde_longitudes: str = "backward") -> AngleSextet:
    """The six signed angles of one record.

    An orbit in the ecliptic has no node; it is flagged ``singular`` and its
    perihelion is placed at longitude ``l``.
    """
    i, node, arg = record.elements(retrograde_longitudes)
    a = angles_array(i, node, arg)
    singular = abs(math.sin(math.radians(i))) < _SINGULAR_TOL
    return AngleSextet(*map(float, a), singular=singular)


def sample_uniform_elements(rng: np.random.Generator, n: int) -> np.ndarray:
    """Elements ``(i, node, arg)`` in degrees for ``n`` uniformly oriented orbits."""
    i = np.degrees(np.arccos(rng.uniform(-1.0, 1.0, n)))
    node = rng.uniform(0.0, 360.0, n)
    arg = rng.uniform(0.0, 360.0, n)
    return np.column_stack([i, node, arg])


def uniform_sphere_baseline() -> dict:
    """Mean folded polar distance of a uniform direction and its modulus.

    The mean is one radian; the modulus is in quarter-circumference units.
    """
    s = latitude_law_summary()
    mean = 90.0 * (1.0 - s.mean)
    return {"mean_deg": mean, "mean_dms": to_dms(mean), "modulus": s.modulus,
            "median_deg": 90.0 * (1.0 - s.median)}


def mean_angle_test(observed_mean: float, n: int) -> float:
    """Chance that the mean of ``n`` uniform draws lies closer to the baseline.

    ``t = gamma sqrt(n) |observed - baseline| / 90``.
    """
    if n < 30:
        import warnings
        warnings.warn("asymptotic test used with fewer than 30 draws", SmallSampleWarning,
                      stacklevel=2)
    b = uniform_sphere_baseline()
    t = b["modulus"] * math.sqrt(n) * abs(observed_mean - b["mean_deg"]) / 90.0
    return p_of_t(t)


def is_winter(date: _dt.date) -> bool:
    """Perihelion passage between 22 September and 22 March."""
    md = (date.month, date.day)
    return md >= (9, 22) or md < (3, 22)


class Catalog:
    """Records in chronological order with their angle sextets."""

    def __init__(self, records: Sequence[OrbitRecord], retrograde_longitudes: str = "backward"):
        if not records:
            raise DomainError("catalog is empty")
        self.records = tuple(records)
        self.sextets = tuple(angles_from_elements(r, retrograde_longitudes) for r in self.records)
        self.angles = np.array([s.values() for s in self.sextets])

    def __len__(self) -> int:
        return len(self.records)

    def mask(self, season: str | None = None, sign: tuple[str, int] | None = None,
             q_max: float | None = None, q_min: float | None = None) -> np.ndarray:
        """Boolean selection by season, sign of one angle, and perihelion distance."""
        m = np.ones(len(self), bool)
        if season is not None:
            if season not in ("winter", "summer"):
                raise DomainError("season must be 'winter' or 'summer'")
            if any(r.epoch is None for r in self.records):
                raise DomainError("season filter needs every epoch")
            w = np.array([is_winter(r.epoch) for r in self.records])
            m &= w if season == "winter" else ~w
        if sign is not None:
            name, s = sign
            col = self.angles[:, ANGLE_NAMES.index(name)]
            m &= (col >= 0) if s > 0 else (col < 0)
        q = np.array([r.q_AU for r in self.records])
        if q_max is not None:
            m &= q < q_max
        if q_min is not None:
            m &= q >= q_min
        return m


def _magnitudes(catalog) -> np.ndarray:
    if isinstance(catalog, Catalog):
        return np.abs(catalog.angles)
    a = np.array([s.values() for s in catalog], float)
    if a.size == 0:
        raise DomainError("catalog is empty")
    return np.abs(a)


def running_means(catalog, step: int = 10) -> list[dict]:
    """Means of the unsigned angles over the first 10, 20, ... records and all of them."""
    a = _magnitudes(catalog)
    n = a.shape[0]
    stops = list(range(step, n, step)) + [n]
    return [{"n": k, **dict(zip(ANGLE_NAMES, a[:k].mean(axis=0).tolist()))} for k in stops]


def split_counts(catalog, threshold: float = 60.0, **filters) -> dict:
    """``(above, below)`` counts of each unsigned angle about ``threshold``.

    An angle equal to the threshold counts as above. ``filters`` go to
    :meth:`Catalog.mask`.
    """
    a = _magnitudes(catalog)
    if filters:
        if not isinstance(catalog, Catalog):
            raise DomainError("filters need a Catalog")
        a = a[catalog.mask(**filters)]
    above = (a >= threshold).sum(axis=0)
    return {k: (int(above[j]), int(a.shape[0] - above[j])) for j, k in enumerate(ANGLE_NAMES)}


def symmetric_law_check(splits: dict) -> dict:
    """Fit the pattern theta m:n, theta' p:p, theta'' n:m, t n:m, t' p:p, t'' m:n.

    ``m`` is the least-squares value, ``p = (m + n) / 2``; the residual is
    the largest absolute count deviation.
    """
    N = {sum(v) for v in splits.values()}
    if len(N) != 1:
        raise DomainError("splits must share the number of records")
    N = N.pop()
    # above counts expected: m, p, n, n, p, m ; with n = N - m
    obs_m = [splits["theta"][0], splits["theta2"][1], splits["t"][1], splits["t2"][0]]
    m = float(np.mean(obs_m))
    n, p = N - m, N / 2.0
    expected = {"theta": (m, n), "theta1": (p, p), "theta2": (n, m),
                "t": (n, m), "t1": (p, p), "t2": (m, n)}
    resid = max(abs(splits[k][j] - expected[k][j]) for k in ANGLE_NAMES for j in (0, 1))
    return {"m": m, "n": n, "p": p, "expected": expected, "residual": float(resid)}


def proportion_test(k: int, m: int) -> dict:
    """Is a split ``k : m - k`` unequal?

    ``P`` is the chance, under equal odds, that the count lies strictly
    closer to ``m/2`` than ``k`` does, summed exactly; ``Pi = (1 + P)/2``
    is the chance that the larger side has the larger chance. ``P`` below
    one half reads as near equality.
    """
    from scipy import stats
    if not 0 <= k <= m or m < 1:
        raise DomainError("need 0 <= k <= m")
    d = abs(k - m / 2.0)
    lo, hi = math.floor(m / 2.0 - d) + 1, math.ceil(m / 2.0 + d) - 1
    P = float(stats.binom.cdf(hi, m, 0.5) - stats.binom.cdf(lo - 1, m, 0.5)) if hi >= lo else 0.0
    Pi = 0.5 * (1.0 + P)
    return {"k": k, "m": m, "P": P, "Pi": Pi,
            "verdict": "near equality" if P < 0.5 else "unequal"}


def proportion_test_over_prefixes(catalog: Catalog, predicate: Callable[[OrbitRecord, AngleSextet], bool],
                                  step: int = 10) -> dict:
    """Running counts of ``predicate`` over chronological prefixes and the final test."""
    flags = np.array([bool(predicate(r, s)) for r, s in zip(catalog.records, catalog.sextets)])
    n = flags.size
    stops = list(range(step, n, step)) + [n]
    rows = [{"n": k, "yes": int(flags[:k].sum()), "no": int(k - flags[:k].sum())} for k in stops]
    return {"rows": rows, "final": proportion_test(int(flags.sum()), n)}


def _parse_date(s: str) -> _dt.date | None:
    s = s.strip()
    if not s:
        return None
    return _dt.date.fromisoformat(s)


def load_catalog(path_or_lines: str | Iterable[str], retrograde_longitudes: str = "backward") -> Catalog:
    """Read a CSV with columns ``theta,lambda,l,motion,q_AU,epoch`` (plus optional ``label``)."""
    if isinstance(path_or_lines, str):
        with open(path_or_lines, newline="", encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
    else:
        rows = list(csv.DictReader(path_or_lines))
    need = {"theta", "lambda", "l", "motion", "q_AU", "epoch"}
    if rows and not need <= set(rows[0]):
        raise DomainError(f"catalog columns must include {sorted(need)}")
    recs = []
    for i, r in enumerate(rows):
        try:
            recs.append(OrbitRecord(float(r["theta"]), float(r["lambda"]), float(r["l"]),
                                    r["motion"].strip(), float(r["q_AU"] or "nan"),
                                    _parse_date(r["epoch"]), r.get("label", "") or ""))
        except (ValueError, DomainError) as exc:
            raise DomainError(f"row {i + 1}: {exc}") from exc
    return Catalog(recs, retrograde_longitudes)
