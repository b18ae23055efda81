# smcmartin/utils/rng.py
"""Seeded random number generator for reproducible simulations."""
from __future__ import annotations

import random

import numpy as np


class SeededRNG:
    """Wrapper around random.Random for deterministic simulation.

    Exact discrete draws (`randbelow`) use arbitrary-precision integers, so
    rational weights with large denominators are sampled without rounding.
    Vectorised experiments get a numpy Generator seeded from the same stream.
    """

    def __init__(self, seed: int):
        self._rng = random.Random(seed)
        self._seed = seed

    @property
    def seed(self) -> int:
        return self._seed

    def randbelow(self, n: int) -> int:
        return self._rng.randrange(n)

    def randint(self, a: int, b: int) -> int:
        return self._rng.randint(a, b)

    def random(self) -> float:
        return self._rng.random()

    def fork(self) -> SeededRNG:
        """Create a child RNG with a derived seed for sub-tasks."""
        child_seed = self._rng.randint(0, 2**31 - 1)
        return SeededRNG(child_seed)

    def numpy(self) -> np.random.Generator:
        return np.random.default_rng(self._rng.randint(0, 2**63 - 1))
