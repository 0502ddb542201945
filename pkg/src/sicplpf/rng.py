"""Per-replicate random streams.

Every replicate gets its own Philox (counter-based) generator keyed by a
64-bit mix of ``(master_seed, replicate_index)``, so a replicate's draws do
not depend on how replicates are split across workers.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def replicate_key(master_seed: int, replicate_index: int) -> int:
    """128-bit Philox key for one replicate."""
    hi = splitmix64(master_seed & _MASK)
    lo = splitmix64(hi ^ splitmix64(replicate_index & _MASK))
    return (hi << 64) | lo


def replicate_generator(master_seed: int, replicate_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=replicate_key(master_seed, replicate_index)))
