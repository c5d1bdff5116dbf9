"""Seeded vector samplers used by the axiom checkers and hypothesis verifiers.

Each factory returns a zero-argument callable that owns its own random
generator, so identical seeds reproduce identical sample streams.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import UsageError
from .ordered_algebra import Vector

__all__ = ["uniform_sampler", "cone_sampler", "interior_sampler"]

Sampler = Callable[[], Vector]


def uniform_sampler(n: int, seed: int = 0, low: float = -10.0, high: float = 10.0) -> Sampler:
    """Points of R^n with independent uniform components in [low, high)."""
    if n < 1:
        raise UsageError("sampler dimension must be at least 1")
    if not low < high:
        raise UsageError("sampler bounds must satisfy low < high")
    rng = np.random.default_rng(seed)

    def draw() -> Vector:
        return Vector._wrap(rng.uniform(low, high, n))

    return draw


def cone_sampler(n: int, seed: int = 0, high: float = 10.0) -> Sampler:
    """Cone points: componentwise uniform in [0, high)."""
    if high <= 0.0:
        raise UsageError("cone sampler needs high > 0")
    return uniform_sampler(n, seed=seed, low=0.0, high=high)


def interior_sampler(n: int, seed: int = 0, low: float = 1e-3, high: float = 10.0) -> Sampler:
    """Interior cone points: components bounded away from zero."""
    if low <= 0.0:
        raise UsageError("interior sampler needs low > 0")
    return uniform_sampler(n, seed=seed, low=low, high=high)
