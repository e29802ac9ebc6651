"""Portable 64-bit PRNG used for the agent's random button choice.

xoshiro256** seeded through splitmix64, so a seed maps to the same stream
on any platform and any implementation of the same two algorithms.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

T = TypeVar("T")

MASK64 = (1 << 64) - 1


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


class Xoshiro256StarStar:
    """xoshiro256** generator.

    Construct with an integer seed (expanded with splitmix64) or use
    :meth:`from_state` to load the raw 256-bit state.
    """

    def __init__(self, seed: int = 0) -> None:
        sm = SplitMix64(seed)
        self.s = [sm.next() for _ in range(4)]

    @classmethod
    def from_state(cls, state: Sequence[int]) -> "Xoshiro256StarStar":
        if len(state) != 4:
            raise ValueError("xoshiro256** state is four 64-bit words")
        if not any(state):
            raise ValueError("all-zero state is a fixed point")
        rng = cls.__new__(cls)
        rng.s = [w & MASK64 for w in state]
        return rng

    def getstate(self) -> tuple[int, int, int, int]:
        return tuple(self.s)  # type: ignore[return-value]

    def next_u64(self) -> int:
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def choice(self, seq: Sequence[T]) -> T:
        if not seq:
            raise IndexError("cannot choose from an empty sequence")
        return seq[self.below(len(seq))]
