"""Deterministic random stream for data generation.

SplitMix64 underneath: a tiny, portable, well-studied 64-bit generator.
Sub-streams are made by ``split()``, which seeds a child from the parent
stream, so independent generations (e.g. the items of a sample) never
share state and any corpus is reproducible from one root seed on any
platform.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4B5B9 & _MASK
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
    return z ^ (z >> 31)


class Rng:
    """One SplitMix64 stream."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return _mix(self._state)

    def split(self) -> "Rng":
        """A child stream seeded from this one."""
        return Rng(self.next_u64())

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive; rejection-sampled, unbiased."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            draw = self.next_u64()
            if draw < limit:
                return lo + draw % span

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) / float(1 << 53)

    def choice(self, items):
        return items[self.randint(0, len(items) - 1)]

    def chance(self, p: float) -> bool:
        return self.random() < p
