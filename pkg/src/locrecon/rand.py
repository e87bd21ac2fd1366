"""Keyed pseudorandom values for consistent, stateless oracles.

Every value is a pure function of ``(seed, namespace, arguments)``: a
SplitMix64 finalizer chained over the 64-bit words.  Nothing is stored, so an
oracle can answer any query in any order and always see the same coins.
"""
from __future__ import annotations

import hashlib
from functools import lru_cache

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TWO53 = float(1 << 53)


def mix64(z: int) -> int:
    """SplitMix64 output function (bijective avalanche mix on 64 bits)."""
    z = (z + _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def hash_words(key: int, *words: int) -> int:
    h = key
    for w in words:
        h = mix64(h ^ (w & MASK64))
    return h


def unit_value(h: int) -> float:
    """Map 64 hash bits to a float in (0, 1]."""
    return ((h >> 11) + 1) / _TWO53


@lru_cache(maxsize=None)
def namespace_key(seed: int, namespace: str) -> int:
    digest = hashlib.blake2b(namespace.encode("utf-8"), digest_size=8).digest()
    return mix64((seed & MASK64) ^ int.from_bytes(digest, "little"))


class RandomSource:
    """Seeded generator for one namespace (``rank``, ``weight/3``, ``mis`` ...).

    >>> r = RandomSource(7, "rank")
    >>> r.rank(5) == r.rank(5)
    True
    """

    __slots__ = ("seed", "namespace", "key")

    def __init__(self, seed: int, namespace: str = "rank"):
        self.seed = int(seed)
        self.namespace = namespace
        self.key = namespace_key(self.seed, namespace)

    def child(self, namespace: str) -> "RandomSource":
        return RandomSource(self.seed, namespace)

    def bits(self, *args: int) -> int:
        return hash_words(self.key, *args)

    def value(self, *args: int) -> float:
        return unit_value(hash_words(self.key, *args))

    def rank(self, v: int) -> tuple[float, int]:
        # ties on value are broken by vertex id, giving a strict total order
        return (unit_value(hash_words(self.key, v)), v)

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, namespace={self.namespace!r})"
