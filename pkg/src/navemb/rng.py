"""Seeded, splittable random streams.

Every random draw in the package traces back to a single master seed through
a labeled derivation path, so parallel work (sweep cells, routing trials) is
reproducible independent of scheduling.  Derivation uses numpy's
``SeedSequence`` spawn-key mechanism: distinct paths give statistically
independent streams.
"""
from __future__ import annotations

import numpy as np

# Path-label namespaces, so different consumers can never collide even if
# their remaining path indices coincide.
GRAPH = 0
EMBED = 1
ROUTE = 2
TRIAL = 3
PROBE = 4


def _as_path_element(value: int | float) -> tuple[int, ...]:
    """Encode one path element as uint32 words for a spawn key.

    Floats are encoded through their IEEE-754 bit pattern, so derivation
    depends on the exact value, never on a position in some grid.
    """
    if isinstance(value, float):
        bits = int(np.float64(value).view(np.uint64))
        return (bits & 0xFFFFFFFF, bits >> 32, 1)
    v = int(value)
    if v < 0:
        v &= 0xFFFFFFFFFFFFFFFF
    return (v & 0xFFFFFFFF, v >> 32, 0)


def seed_sequence(master_seed: int, *path: int | float) -> np.random.SeedSequence:
    """Deterministic SeedSequence for ``(master_seed, path)``."""
    key: list[int] = []
    for element in path:
        key.extend(_as_path_element(element))
    return np.random.SeedSequence(master_seed, spawn_key=tuple(key))


def stream(master_seed: int, *path: int | float) -> np.random.Generator:
    """Independent Generator for the given derivation path."""
    return np.random.default_rng(seed_sequence(master_seed, *path))


def derive_seed(master_seed: int, *path: int | float) -> int:
    """64-bit integer seed derived from the path (for params that carry one)."""
    words = seed_sequence(master_seed, *path).generate_state(1, dtype=np.uint64)
    return int(words[0])
