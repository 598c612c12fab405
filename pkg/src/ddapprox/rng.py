"""Seedable 64-bit generator with a fixed, documented stream.

Every stochastic result in this package is a pure function of the seeds fed
into these helpers, so runs are reproducible bit-for-bit.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _scramble(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """splitmix64: the state steps by the golden gamma, outputs are scrambled."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        return _scramble(self._state)

    def random(self) -> float:
        """Uniform double in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53


def derive_seed(seed: int, index: int) -> int:
    """Seed for substream `index`: scramble(seed + (index + 1) * gamma).

    Pure in (seed, index), so substreams can be drawn in any order or in
    parallel without changing results.
    """
    return _scramble((seed + (index + 1) * _GOLDEN) & _MASK64)
