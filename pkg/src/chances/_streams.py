"""Counter-based random streams.

A stream is identified by ``(seed, scheme, index)``. The Philox key comes
from hashing that triple with :class:`numpy.random.SeedSequence`, so the
numbers a replicate block sees never depend on which worker draws them or
in what order.
"""

from __future__ import annotations

import zlib

import numpy as np

__all__ = ["stream", "scheme_id"]


def scheme_id(scheme: str) -> int:
    """Stable 32-bit identifier of a scheme name."""
    return zlib.crc32(scheme.encode("utf-8"))


def stream(seed: int, scheme: str, index: int = 0) -> np.random.Generator:
    """Independent generator for block ``index`` of ``scheme`` under ``seed``."""
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1), scheme_id(scheme), int(index)])
    return np.random.Generator(np.random.Philox(key=ss.generate_state(2, dtype=np.uint64)))
