"""Super-node layout: V0 = {1..n0}, the hash h, its inversion, and the ring."""
from __future__ import annotations

import math
from fractions import Fraction


class ConfigError(ValueError):
    """Parameters violate a reconstructor's preconditions."""


def exact(x) -> Fraction:
    """Exact rational for a user-facing float (0.1 -> 1/10, not the binary value)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(repr(float(x)))


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


class SupernodeLayout:
    """Super-nodes ``1..n0`` with ``n0 = ceil(c*n)``.

    A non-super-node ``x`` is assigned ``first(x) = ceil(x*c)``; its k-member
    hash is ``first(x), first(x)+1, ...`` wrapped into ``1..n0``.
    """

    def __init__(self, n: int, c, k: int = 1):
        self.n = n
        self.c = exact(c)
        if not 0 < self.c < 1:
            raise ConfigError("super-node density c must lie in (0, 1)")
        self.k = k
        self.n0 = max(1, ceil_frac(self.c * n))
        if self.n0 < k:
            raise ConfigError(f"{self.n0} super-nodes cannot host hashes of size {k}")

    def is_supernode(self, v: int) -> bool:
        return v <= self.n0

    def first(self, x: int) -> int:
        return min(max(ceil_frac(self.c * x), 1), self.n0)

    def hash_set(self, x: int, k: int | None = None) -> tuple[int, ...]:
        k = self.k if k is None else k
        b = self.first(x)
        return tuple(((b - 1 + i) % self.n0) + 1 for i in range(k))

    def bucket(self, w: int, k: int | None = None) -> list[int]:
        """Non-super-nodes ``x`` whose hash contains ``w`` (at most k*ceil(1/c))."""
        k = self.k if k is None else k
        p, q = self.c.numerator, self.c.denominator
        out: list[int] = []
        for off in range(k):
            b = ((w - 1 - off) % self.n0) + 1
            # ceil(x*p/q) == b  <=>  (b-1)*q/p < x <= b*q/p
            lo = (b - 1) * q // p + 1
            hi = b * q // p
            lo = max(lo, self.n0 + 1)
            hi = min(hi, self.n)
            out.extend(range(lo, hi + 1))
        return sorted(set(out))

    def ring_distance(self, u: int, v: int) -> int:
        d = abs(u - v) % self.n0
        return min(d, self.n0 - d)

    def ring_edge(self, u: int, v: int, width: int) -> bool:
        """Circular distance on 1..n0 is between 1 and ``width``."""
        if u == v:
            return False
        return self.ring_distance(u, v) <= width

    def ring_neighbors(self, w: int, width: int) -> list[int]:
        out = set()
        for d in range(1, width + 1):
            out.add(((w - 1 + d) % self.n0) + 1)
            out.add(((w - 1 - d) % self.n0) + 1)
        out.discard(w)
        return sorted(out)

    def chain_neighbors(self, w: int) -> list[int]:
        return [x for x in (w - 1, w + 1) if 1 <= x <= self.n0]


def hash_supernodes(v: int, n: int, c, k: int) -> tuple[int, ...]:
    """Convenience wrapper: the k super-nodes assigned to ``v``."""
    return SupernodeLayout(n, c, k).hash_set(v)


def ring_graph_edges(n0: int, width: int):
    """Edges of the width-``width`` circulant ring on ``1..n0``."""
    edges = set()
    for i in range(1, n0 + 1):
        for d in range(1, width + 1):
            j = ((i - 1 + d) % n0) + 1
            if j != i:
                edges.add((min(i, j), max(i, j)))
    return sorted(edges)
