"""Local reconstruction of undirected connectivity.

``Connected`` links the minimum-rank vertex of every truncated BFS ball to a
single super-node; ``ModConnected`` spreads those links over ``ceil(c*n)``
super-nodes joined by a chain, which keeps every super-node's degree bounded
and therefore yields a cheap neighbor oracle for the corrected graph G'.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import SparseGraph, WrongGraphKind
from .rand import RandomSource
from .recon import Reconstructor
from .supernodes import ConfigError, SupernodeLayout, ceil_frac, exact


@dataclass(frozen=True)
class ConnConfig:
    eps: float
    alpha: float = 1.0
    delta: float = 0.1
    seed: int = 0
    c: float | None = None

    def bfs_cap(self, m: int) -> int:
        """K = ceil(m / (delta*alpha*eps*m - 1))."""
        x = exact(self.delta) * exact(self.alpha) * exact(self.eps) * m
        if x <= 1:
            raise ConfigError(f"delta*alpha*eps*m = {float(x):.4g} must exceed 1")
        return max(2, ceil_frac(m / (x - 1)))

    def closeness(self, m: int, added_fixed: int = 0) -> float:
        return (1 + self.alpha) * self.eps + added_fixed / m


def leader_in_ball(handle, rank: RandomSource, w: int, cap: int) -> bool:
    """True iff ``w`` has the smallest rank among the first ``cap`` BFS vertices.

    The visited set is the first ``cap`` vertices in BFS order (FIFO, neighbors
    in list order, last layer cut mid-way).  The search stops early as soon as
    a smaller rank shows up, which does not change the answer.
    """
    rw = rank.rank(w)
    seen = {w}
    if len(seen) >= cap:
        return True
    queue = deque([w])
    while queue:
        x = queue.popleft()
        d = handle.degree(x)
        for i in range(1, d + 1):
            y = handle.neighbor(x, i)
            if y in seen:
                continue
            seen.add(y)
            if rank.rank(y) < rw:
                return False
            if len(seen) >= cap:
                return True
            queue.append(y)
    return True


class Connected(Reconstructor):
    """Single super-node ``v0 = 1``."""

    name = "connected"

    def __init__(self, graph: SparseGraph, cfg: ConnConfig, memo: bool = True, v0: int = 1):
        if graph.directed:
            raise WrongGraphKind("connectivity reconstruction needs an undirected graph")
        super().__init__(graph, memo)
        self.cfg = cfg
        self.K = cfg.bfs_cap(graph.m_bound)
        self.v0 = v0
        self.rank = RandomSource(cfg.seed, "rank")
        self._leader: dict[int, bool] = {}

    @property
    def supernodes(self) -> range:
        return range(self.v0, self.v0 + 1)

    def is_leader(self, w: int) -> bool:
        hit = self._leader.get(w)
        if hit is None:
            hit = leader_in_ball(self.handle, self.rank, w, self.K)
            if self.memo:
                self._leader[w] = hit
        return hit

    def _decide(self, u, v):
        if self.handle.has_edge(u, v):
            return True
        if self.v0 not in (u, v):
            return False
        w = v if u == self.v0 else u
        return self.is_leader(w)

    def is_supernode(self, v):
        return v == self.v0

    def partners(self, x):
        return (self.v0,)

    def added_candidates(self, w):
        return range(1, self.n + 1)

    def candidate_pairs(self):
        g = self.graph
        seen = set(g.edges())
        yield from seen
        for x in range(1, self.n + 1):
            if x != self.v0:
                pr = (min(x, self.v0), max(x, self.v0))
                if pr not in seen:
                    yield pr

    @property
    def closeness(self) -> float:
        return self.cfg.closeness(self.m)


class ModConnected(Reconstructor):
    """``ceil(c*n)`` super-nodes joined by a chain (or a ring of given width).

    ``ring_width=None`` adds the chain ``(i, i+1)``; an integer ``s`` adds every
    pair at circular distance <= s instead (used as the base level of the
    k-connectivity reconstructor).
    """

    name = "mod-connected"

    def __init__(self, graph: SparseGraph, cfg: ConnConfig, memo: bool = True,
                 ring_width: int | None = None, rank_namespace: str = "rank"):
        if graph.directed:
            raise WrongGraphKind("connectivity reconstruction needs an undirected graph")
        if cfg.c is None:
            raise ConfigError("ModConnected needs a super-node density c")
        super().__init__(graph, memo)
        self.cfg = cfg
        self.K = cfg.bfs_cap(graph.m_bound)
        self.layout = SupernodeLayout(graph.n, cfg.c, 1)
        self.n0 = self.layout.n0
        self.ring_width = ring_width
        self.rank = RandomSource(cfg.seed, rank_namespace)
        self._leader: dict[int, bool] = {}

    @property
    def supernodes(self) -> range:
        return range(1, self.n0 + 1)

    def is_supernode(self, v):
        return v <= self.n0

    def h(self, x: int) -> int:
        return self.layout.first(x)

    def is_leader(self, x: int) -> bool:
        hit = self._leader.get(x)
        if hit is None:
            hit = leader_in_ball(self.handle, self.rank, x, self.K)
            if self.memo:
                self._leader[x] = hit
        return hit

    def supernode_link(self, a: int, b: int) -> bool:
        if self.ring_width is None:
            return abs(a - b) == 1
        return self.layout.ring_edge(a, b, self.ring_width)

    def _decide(self, u, v):
        if self.handle.has_edge(u, v):
            return True
        su, sv = u <= self.n0, v <= self.n0
        if su and sv:
            return self.supernode_link(u, v)
        if not su and not sv:
            return False
        w, x = (u, v) if su else (v, u)
        return self.h(x) == w and self.is_leader(x)

    def partners(self, x):
        return (self.h(x),)

    def added_candidates(self, w):
        if self.ring_width is None:
            links = self.layout.chain_neighbors(w)
        else:
            links = self.layout.ring_neighbors(w, self.ring_width)
        return list(links) + self.layout.bucket(w, 1)

    @property
    def fixed_edges(self) -> int:
        """Upper bound on super-node block edges (chain n0-1, ring ~n0*width)."""
        if self.ring_width is None:
            return self.n0 - 1
        from .supernodes import ring_graph_edges
        return len(ring_graph_edges(self.n0, self.ring_width))

    @property
    def closeness(self) -> float:
        return self.cfg.closeness(self.m, self.fixed_edges)
