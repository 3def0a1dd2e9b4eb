"""Bundled data sets.

``cavendish.csv`` holds the 29 published density determinations, with the
third value read as 5.88 so that the published mean 5.48 and sum of
squares 1.1967 are reproduced. ``dumas_synthetic.csv`` and
``comets_synthetic.csv`` are SYNTHETIC: they match published summaries
only, and the scripts in ``tools/`` regenerate them.
"""

from __future__ import annotations

import csv
import io
from importlib import resources

import numpy as np

from .comets import Catalog, load_catalog

__all__ = ["read_text", "load_cavendish", "load_dumas", "load_comet_catalog"]


def read_text(name: str) -> str:
    """Contents of a bundled file."""
    return resources.files("chances").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def _rows(name: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(read_text(name))))


def load_cavendish() -> np.ndarray:
    """The 29 density values (water = 1)."""
    return np.array([float(r["density"]) for r in _rows("cavendish.csv")])


def load_dumas() -> dict[str, np.ndarray]:
    """Synthetic atomic-weight values keyed by method, in file order."""
    out: dict[str, list] = {}
    for r in _rows("dumas_synthetic.csv"):
        out.setdefault(r["method"], []).append(float(r["value"]))
    return {k: np.array(v) for k, v in out.items()}


def load_comet_catalog(retrograde_longitudes: str = "backward") -> Catalog:
    """The synthetic 125-orbit catalog in chronological order."""
    return load_catalog(io.StringIO(read_text("comets_synthetic.csv")), retrograde_longitudes)
