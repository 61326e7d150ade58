"""Deterministic random-number streams.

Every stochastic operation in this package takes an explicit
``numpy.random.Generator``.  Streams are derived from an integer key path
(seed, run, particle, cluster, step, ...) so that results are
bit-reproducible regardless of how work is scheduled across workers.
"""

from __future__ import annotations

import numpy as np

__all__ = ["stream"]


def stream(*key: int) -> np.random.Generator:
    """Return a counter-based generator for the given integer key path.

    Distinct key paths give statistically independent streams; the same
    path always gives the same stream.  Philox is counter-based, so
    streams are cheap to create on demand.
    """
    if not key:
        raise ValueError("stream() requires at least one integer key")
    seq = np.random.SeedSequence([int(k) & 0xFFFFFFFFFFFFFFFF for k in key])
    return np.random.Generator(np.random.Philox(seq))
