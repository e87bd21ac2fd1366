"""Shared machinery for local reconstructors.

A reconstructor answers edge queries ``edge(u, v)`` for a corrected graph
G~ that contains G.  All reconstructors in this package only ever add edges
that touch a super-node, so a non-super-node ``x`` can only gain edges to the
small set ``partners(x)``; that structure is what makes neighbor oracles and
the structured distance estimator cheap.
"""
from __future__ import annotations

from typing import Iterable

from .graph import OracleHandle, QueryViolation, SparseGraph


class DegenerateQuery(ValueError):
    """Self-pair or out-of-range vertex passed to an edge oracle."""


class Reconstructor:
    """Base class.  Subclasses implement ``_decide`` and the candidate sets."""

    directed = False
    name = "reconstructor"

    def __init__(self, graph: SparseGraph, memo: bool = True):
        self.graph = graph
        self.n = graph.n
        self.m = graph.m_bound
        self.handle = OracleHandle(graph)
        self.memo = memo
        self.calls = 0
        self.max_query_cost = 0
        self.last_query_cost = 0
        self._nbr_cache: dict = {}

    # -- edge oracle -------------------------------------------------------
    def edge(self, u: int, v: int) -> bool:
        if u == v:
            raise DegenerateQuery(f"self-pair ({u}, {u})")
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            raise DegenerateQuery(f"pair ({u}, {v}) outside 1..{self.n}")
        before = self.handle.queries
        ans = self._decide(u, v)
        cost = self.handle.queries - before
        self.calls += 1
        self.last_query_cost = cost
        if cost > self.max_query_cost:
            self.max_query_cost = cost
        return ans

    def query(self, u: int, v: int) -> int:
        return int(self.edge(u, v))

    __call__ = query

    def _decide(self, u: int, v: int) -> bool:
        raise NotImplementedError

    # -- structure ---------------------------------------------------------
    @property
    def supernodes(self) -> range:
        raise NotImplementedError

    def is_supernode(self, v: int) -> bool:
        s = self.supernodes
        return s.start <= v < s.stop

    def partners(self, x: int) -> tuple[int, ...]:
        """Super-nodes a non-super-node ``x`` may be linked to."""
        raise NotImplementedError

    def added_candidates(self, w: int) -> Iterable[int]:
        """Vertices that a super-node ``w`` may gain as new neighbors."""
        raise NotImplementedError

    @property
    def k_max(self) -> int:
        return max((len(self.partners(x)) for x in range(self.supernodes.stop, self.n + 1)),
                   default=0)

    def base_neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors in the graph being corrected (read through the oracle)."""
        return tuple(self.handle.neighbor_list(v))

    def base_in_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(self.handle.in_neighbor_list(v))

    # -- neighbor oracle ---------------------------------------------------
    def neighbors(self, v: int) -> tuple[int, ...]:
        """Corrected (out-)neighbor list: base list, then additions ascending."""
        key = ("out", v)
        hit = self._nbr_cache.get(key)
        if hit is not None:
            return hit
        base = self.base_neighbors(v)
        res = base + self._additions(v, set(base), outgoing=True)
        if self.memo:
            self._nbr_cache[key] = res
        return res

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        if not self.directed:
            return self.neighbors(v)
        key = ("in", v)
        hit = self._nbr_cache.get(key)
        if hit is not None:
            return hit
        base = self.base_in_neighbors(v)
        res = base + self._additions(v, set(base), outgoing=False)
        if self.memo:
            self._nbr_cache[key] = res
        return res

    def _additions(self, v, present, outgoing=True) -> tuple[int, ...]:
        if self.is_supernode(v):
            cands = self.added_candidates(v)
        else:
            cands = self.partners(v)
        out = []
        for x in sorted(set(cands)):
            if x == v or x in present:
                continue
            if self.edge(v, x) if outgoing else self.edge(x, v):
                out.append(x)
        return tuple(out)

    def neighbor_oracle(self) -> "CorrectedOracle":
        return CorrectedOracle(self)

    # -- materialization ---------------------------------------------------
    def candidate_pairs(self):
        """Every pair (arc) that could possibly be present in G~."""
        g = self.graph
        seen = set(g.edges())
        yield from seen
        sup = self.supernodes
        for a in sup:
            for b in sup:
                if a == b or (not self.directed and a > b):
                    continue
                if (a, b) not in seen:
                    seen.add((a, b))
                    yield (a, b)
        for x in range(sup.stop, self.n + 1):
            for p in self.partners(x):
                pairs = [(x, p), (p, x)] if self.directed else [(min(x, p), max(x, p))]
                for pr in pairs:
                    if pr not in seen:
                        seen.add(pr)
                        yield pr

    def materialize(self, all_pairs: bool = False) -> SparseGraph:
        """Evaluate the edge oracle and build G~ (``all_pairs`` probes every pair)."""
        if all_pairs:
            if self.directed:
                pairs = ((u, v) for u in range(1, self.n + 1)
                         for v in range(1, self.n + 1) if u != v)
            else:
                pairs = ((u, v) for u in range(1, self.n + 1)
                         for v in range(u + 1, self.n + 1))
        else:
            pairs = list(self.candidate_pairs())
        edges = [pr for pr in pairs if self.edge(*pr)]
        m = max(self.m, len(edges))
        return SparseGraph.from_edges(self.n, edges, m, directed=self.directed)

    def materialize_via_neighbors(self) -> SparseGraph:
        adj = [()] + [self.neighbors(v) for v in range(1, self.n + 1)]
        ordered = [()] + [tuple(sorted(a)) for a in adj[1:]]
        total = sum(len(a) for a in ordered)
        m = max(self.m, total if self.directed else total // 2)
        return SparseGraph(self.n, m, ordered, directed=self.directed)

    def supernode_block_added(self) -> int:
        """Exact number of added edges with both endpoints super-nodes."""
        sup = self.supernodes
        count = 0
        for a in sup:
            for b in sup:
                if a == b or (not self.directed and a > b):
                    continue
                if self.edge(a, b) and not self.graph.has_edge(a, b):
                    count += 1
        return count


class CorrectedOracle:
    """Neighbor oracle (degree / i-th neighbor) for a reconstructed graph."""

    def __init__(self, recon: Reconstructor):
        self.recon = recon
        self.n = recon.n
        self.m_bound = recon.m
        self.directed = recon.directed
        self.queries = 0

    def reset(self) -> int:
        used, self.queries = self.queries, 0
        return used

    def _check(self, v):
        if not 1 <= v <= self.n:
            raise QueryViolation(f"vertex {v} outside 1..{self.n}")

    def degree(self, v: int) -> int:
        self._check(v)
        self.queries += 1
        return len(self.recon.neighbors(v))

    def neighbor(self, v: int, i: int) -> int:
        self._check(v)
        lst = self.recon.neighbors(v)
        if not 1 <= i <= len(lst):
            raise QueryViolation(f"index {i} past corrected degree {len(lst)} of {v}")
        self.queries += 1
        return lst[i - 1]

    def in_degree(self, v: int) -> int:
        self._check(v)
        self.queries += 1
        return len(self.recon.in_neighbors(v))

    def in_neighbor(self, v: int, i: int) -> int:
        self._check(v)
        lst = self.recon.in_neighbors(v)
        if not 1 <= i <= len(lst):
            raise QueryViolation(f"index {i} past corrected in-degree {len(lst)} of {v}")
        self.queries += 1
        return lst[i - 1]

    ith_neighbor = neighbor

    def neighbor_list(self, v: int) -> list[int]:
        return [self.neighbor(v, i) for i in range(1, self.degree(v) + 1)]

    def in_neighbor_list(self, v: int) -> list[int]:
        return [self.in_neighbor(v, i) for i in range(1, self.in_degree(v) + 1)]


def added_edge_count(original: SparseGraph, corrected: SparseGraph) -> int:
    return len(corrected.edge_set() - original.edge_set())
