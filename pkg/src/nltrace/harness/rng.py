"""Portable seeded generator: xoshiro256** seeded through splitmix64.

Everything is integer arithmetic on Python ints masked to 64 bits, so a seed
produces the same stream on every platform.

State transition (``s0..s3``, all mod 2**64)::

    out = rotl(s1 * 5, 7) * 9
    t   = s1 << 17
    s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3
    s2 ^= t;  s3 = rotl(s3, 45)

Seeding runs splitmix64 four times from the 64-bit seed::

    x  += 0x9E3779B97F4A7C15
    z   = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9
    z   = (z ^ (z >> 27)) * 0x94D049BB133111EB
    out = z ^ (z >> 31)

Conversions: ``random() = (next >> 11) * 2**-53`` in ``[0, 1)``; normals by
Box-Muller on ``u1 = 1 - random()`` and ``u2 = random()``, returning the
cosine branch then the cached sine branch.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["Xoshiro256", "splitmix64", "trial_seed", "MASK64"]

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> tuple[int, int]:
    """One splitmix64 step; returns ``(new_state, output)``."""
    x = (x + _GOLDEN) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return x, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


def trial_seed(master: int, index: int) -> int:
    """Sub-seed for trial ``index``; depends only on ``(master, index)`` so any
    sharding of trials reproduces the serial run."""
    _, a = splitmix64((master ^ (index * _GOLDEN)) & MASK64)
    _, b = splitmix64(a ^ index)
    return b


class Xoshiro256:
    """xoshiro256** with splitmix64 seeding."""

    def __init__(self, seed: int):
        self.seed = int(seed) & MASK64
        x = self.seed
        s = []
        for _ in range(4):
            x, out = splitmix64(x)
            s.append(out)
        self._s = s
        self._spare: float | None = None

    @classmethod
    def for_trial(cls, master: int, index: int) -> "Xoshiro256":
        return cls(trial_seed(master, index))

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        out = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return out

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        return lo + (hi - lo) * self.random()

    def integers(self, lo: int, hi: int) -> int:
        """Integer in ``[lo, hi]`` by multiply-shift."""
        span = hi - lo + 1
        return lo + ((self.next_u64() * span) >> 64)

    def choice(self, seq):
        return seq[self.integers(0, len(seq) - 1)]

    def normal(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = 1.0 - self.random()
        u2 = self.random()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def normals(self, *shape: int) -> np.ndarray:
        n = math.prod(shape)
        return np.array([self.normal() for _ in range(n)]).reshape(shape)

    def uniforms(self, *shape: int) -> np.ndarray:
        n = math.prod(shape)
        return np.array([self.random() for _ in range(n)]).reshape(shape)

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates shuffle of ``0..n-1``."""
        p = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.integers(0, i)
            p[i], p[j] = p[j], p[i]
        return np.array(p, dtype=np.int64)
