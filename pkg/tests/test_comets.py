import datetime as dt
import math

import numpy as np
import pytest

from chances.combinatorics import DomainError
from chances.comets import (ANGLE_NAMES, MIN_SUM_DEG, OrbitRecord, angles_array,
                            angles_from_elements, is_winter, load_catalog, mean_angle_test,
                            pole_and_perihelion, proportion_test,
                            proportion_test_over_prefixes, running_means, sample_uniform_elements,
                            split_counts, symmetric_law_check, uniform_sphere_baseline)
from chances.datasets import load_comet_catalog, read_text
from chances.distribution_summaries import from_dms
from chances.repetition_laws import SmallSampleWarning


@pytest.fixture(scope="module")
def catalog():
    return load_comet_catalog()


def _oracle(e):
    pole, peri = pole_and_perihelion(e[:, 0], e[:, 1], e[:, 2])
    # columns ordered z, x, y for each vector
    comp = np.column_stack([pole[:, 2], pole[:, 0], pole[:, 1], peri[:, 2], peri[:, 0], peri[:, 1]])
    return np.sign(comp) * np.degrees(np.arccos(np.clip(np.abs(comp), 0, 1)))


def test_transform_matches_vector_oracle():
    e = sample_uniform_elements(np.random.default_rng(1), 10_000)
    got = angles_array(e[:, 0], e[:, 1], e[:, 2])
    assert np.max(np.abs(got - _oracle(e))) <= 1e-9


def test_angle_sums_within_bounds():
    e = sample_uniform_elements(np.random.default_rng(2), 20_000)
    a = np.abs(angles_array(e[:, 0], e[:, 1], e[:, 2]))
    for cols in (a[:, :3], a[:, 3:]):
        s = cols.sum(axis=1)
        assert s.min() >= MIN_SUM_DEG - 1e-9
        assert s.max() <= 180 + 1e-9
    assert MIN_SUM_DEG == pytest.approx(from_dms(164, 13), abs=1 / 60)


def test_ecliptic_orbit_is_singular():
    s = angles_from_elements(OrbitRecord(0.0, 10.0, 50.0))
    assert s.singular
    assert s.theta == pytest.approx(0.0)
    assert abs(s.t) == pytest.approx(90.0)


def test_retrograde_conventions_differ():
    r = OrbitRecord(30.0, 40.0, 100.0, "retrograde")
    assert r.elements("backward") != r.elements("forward")
    assert r.elements()[0] == pytest.approx(150.0)
    with pytest.raises(DomainError):
        OrbitRecord(120.0, 0.0, 0.0, "direct")


def test_uniform_baseline():
    b = uniform_sphere_baseline()
    assert b["mean_deg"] * 3600 == pytest.approx(from_dms(57, 17, 44.8) * 3600, abs=1.0)
    assert b["modulus"] == pytest.approx(2.951784, abs=1e-6)
    assert b["median_deg"] == pytest.approx(60.0)


def test_mean_angle_test_small_sample_warns():
    with pytest.warns(SmallSampleWarning):
        mean_angle_test(50.0, 10)


def test_winter_boundaries():
    assert is_winter(dt.date(1800, 9, 22)) and is_winter(dt.date(1800, 3, 21))
    assert not is_winter(dt.date(1800, 3, 22)) and not is_winter(dt.date(1800, 9, 21))


def test_proportion_test_values():
    r = proportion_test(71, 125)
    assert r["P"] == pytest.approx(0.847879, abs=1e-6)
    assert r["Pi"] == pytest.approx(0.924, abs=1e-3)
    assert proportion_test(65, 125)["verdict"] == "near equality"
    assert proportion_test(50, 100)["P"] == 0.0


def test_catalog_full_splits(catalog):
    assert len(catalog) == 125
    sp = split_counts(catalog)
    assert sp == {"theta": (48, 77), "theta1": (65, 60), "theta2": (69, 56),
                  "t": (77, 48), "t1": (66, 59), "t2": (44, 81)}


def test_catalog_winter_splits(catalog):
    sp = split_counts(catalog, season="winter")
    assert sp == {"theta": (24, 47), "theta1": (36, 35), "theta2": (46, 25),
                  "t": (46, 25), "t1": (36, 35), "t2": (27, 44)}


def test_catalog_counts(catalog):
    assert catalog.mask(season="winter").sum() == 71
    assert catalog.mask(season="winter")[:40].sum() == 24
    assert catalog.mask(sign=("theta", 1)).sum() == 65
    assert catalog.mask(sign=("theta1", 1)).sum() == 69
    assert catalog.mask(sign=("t", 1)).sum() == 68
    assert catalog.mask(q_max=0.75).sum() == 65
    assert catalog.mask(q_max=0.75)[:60].sum() == 40


def test_symmetric_law_residual(catalog):
    assert symmetric_law_check(split_counts(catalog, season="winter"))["residual"] == pytest.approx(1.75)


def test_mean_tests(catalog):
    means = np.abs(catalog.angles).mean(axis=0)
    P = [mean_angle_test(m, 125) for m in means]
    assert P[0] == pytest.approx(0.99991, abs=5e-4)
    assert P[5] == pytest.approx(0.9986, abs=5e-4)


def test_running_means_and_prefixes(catalog):
    rows = running_means(catalog, 10)
    assert rows[-1]["n"] == 125
    out = proportion_test_over_prefixes(catalog, lambda r, s: s.theta >= 0)
    assert out["final"]["k"] == 65


def test_load_catalog_from_lines_and_bad_columns():
    lines = read_text("comets_synthetic.csv").splitlines()
    assert len(load_catalog(lines)) == 125
    with pytest.raises(DomainError):
        load_catalog(["a,b", "1,2"])
