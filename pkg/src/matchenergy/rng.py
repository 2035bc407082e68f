"""Pinned random streams and seed derivation.

All randomness in the package flows through :class:`SplitMix64`, a 64-bit
generator (Steele, Lea & Flood 2014) whose output function doubles as the
avalanche mixer used for seed derivation.  Both are frozen: changing any
constant here changes every experiment artifact.

Derivation of a child seed from ``master`` and integer labels ``l1..lk``::

    h = mix64(master)
    for l in labels:
        h = mix64(h ^ mix64(l + GOLDEN))

Uniform variates take the top 53 bits: ``(next() >> 11) * 2**-53``.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 finalizer (variant 13 of Stafford's mixers)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, *labels: int) -> int:
    h = mix64(master)
    for label in labels:
        h = mix64(h ^ mix64((label + GOLDEN) & MASK64))
    return h


def label_of(name: str) -> int:
    """Stable integer label for a string identifier (CRC-32)."""
    return zlib.crc32(name.encode("utf-8"))


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def random(self) -> float:
        """Uniform float in [0, 1)."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n


@dataclass(frozen=True)
class SeedSpec:
    """A master seed plus derivation labels; identical specs give identical streams."""

    master_seed: int
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.master_seed <= MASK64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")

    def child(self, *labels: int) -> SeedSpec:
        return SeedSpec(self.master_seed, self.labels + tuple(labels))

    def derived(self) -> int:
        return derive_seed(self.master_seed, *self.labels)

    def stream(self) -> SplitMix64:
        return SplitMix64(self.derived())


def as_seed(seed: SeedSpec | int) -> SeedSpec:
    if isinstance(seed, SeedSpec):
        return seed
    return SeedSpec(int(seed))
