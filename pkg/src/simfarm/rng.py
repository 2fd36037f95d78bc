"""Reproducible random streams.

All stochastic components draw from Philox4x64-10, a counter-based generator
whose streams are fully determined by a 128-bit key.  We key each stream with
``(seed, mixed_index)`` where ``mixed_index`` chains SplitMix64 over the
caller-supplied stream indices.  Distinct keys yield statistically independent
streams, so e.g. the column stream of factor ``j`` never changes when factors
are added, and per-row / per-configuration streams are invariant under
chunking or parallel scheduling.

The exact construction (so results reproduce anywhere):

* ``mix = 0``; for each index ``i``: ``mix = splitmix64(mix XOR (i mod 2^64))``
* ``splitmix64(z)``: ``z += 0x9E3779B97F4A7C15``;
  ``z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9``;
  ``z = (z ^ (z >> 27)) * 0x94D049BB133111EB``; ``z = z ^ (z >> 31)``
  (all arithmetic modulo 2^64)
* stream = ``numpy.random.Generator(numpy.random.Philox(key=[seed, mix]))``
"""

from __future__ import annotations

import numpy as np

__all__ = ["splitmix64", "stream_index", "substream"]

_MASK64 = (1 << 64) - 1


def splitmix64(z: int) -> int:
    """One SplitMix64 output step (Steele, Lea & Flood 2014)."""
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def stream_index(*indices: int) -> int:
    """Fold stream indices into the 64-bit key word used beside the seed."""
    mix = 0
    for i in indices:
        mix = splitmix64(mix ^ (int(i) & _MASK64))
    return mix


def substream(seed: int, *indices: int) -> np.random.Generator:
    """Independent generator for the stream ``(seed, *indices)``."""
    key = np.array([int(seed) & _MASK64, stream_index(*indices)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
