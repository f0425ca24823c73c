"""Deterministic 64-bit random number generator for instance generation.

The generator is a splitmix64-style mixer.  It is pinned by its recurrence so
instances are bit-identical across platforms and languages: no dependence on
numpy's or the stdlib's RNG internals, and every ranged draw goes through
rejection sampling on the raw 64-bit stream.
"""
from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    """Deterministic stream of 64-bit words with ranged integer/float draws."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], both ends inclusive.

        Rejection sampling: draws whose value falls in the tail of the 64-bit
        range that does not divide evenly by the span are discarded, so the
        result is exactly uniform.
        """
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            z = self.next_u64()
            if z < limit:
                return lo + (z % span)

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform float in [lo, hi) from the top 53 bits of one word."""
        u = (self.next_u64() >> 11) * (2.0**-53)
        return lo + u * (hi - lo)

    def sample_without_replacement(self, n: int, k: int) -> list[int]:
        """k distinct indices from range(n), by partial Fisher-Yates.

        The returned order is the draw order, which callers rely on for
        reproducibility.
        """
        if not 0 <= k <= n:
            raise ValueError(f"cannot draw {k} from {n}")
        arr = list(range(n))
        for t in range(k):
            j = self.randint(t, n - 1)
            arr[t], arr[j] = arr[j], arr[t]
        return arr[:k]
