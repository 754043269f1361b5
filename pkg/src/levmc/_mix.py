"""Counter-based pseudo-randomness built on the splitmix64 finalizer.

All sampling in this package derives per-entry randomness from
``(seed, counter)`` pairs instead of a stateful stream, so results are
independent of evaluation order and safe to reproduce across threads.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(*words: int) -> int:
    """Fold integers into one well-mixed 64-bit value.

    Order-sensitive and avalanching; used to derive independent child
    seeds from ``(master_seed, index, ...)`` tuples.
    """
    h = 0
    for w in words:
        h = ((h + (int(w) & _MASK64)) * _GOLDEN + _GOLDEN) & _MASK64
        h ^= h >> 30
        h = (h * _MIX1) & _MASK64
        h ^= h >> 27
        h = (h * _MIX2) & _MASK64
        h ^= h >> 31
    return h


def mix64_str(seed: int, text: str) -> int:
    """Fold a string into a seed; stable across runs and platforms."""
    return mix64(seed, len(text), *text.encode("utf-8"))


def unit_uniforms(seed: int, count: int) -> np.ndarray:
    """Return ``count`` uniforms on [0, 1); the k-th depends only on (seed, k).

    Vectorised splitmix64: output k is the finalizer applied to
    ``seed + (k+1) * golden_ratio`` with wrapping uint64 arithmetic.
    """
    k = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + k * np.uint64(_GOLDEN)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53
