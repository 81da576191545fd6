"""Seeded randomness plumbing shared by every stochastic component."""

import numpy as np


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based generator (Philox) keyed by a nonnegative integer seed.

    Distinct seeds key independent streams, so per-trial generators can be
    built as ``make_rng(base_seed + trial)`` without any shared state.
    """
    seed = int(seed)
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return np.random.Generator(np.random.Philox(key=seed))
