"""Ground-truth verifiers used to check reconstructions.

These are deliberately global: linear or polynomial time on the whole graph,
exponential on tiny inputs.  Nothing here is used by the local algorithms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph

from .graph import GraphDistance, GraphError, SparseGraph, WrongGraphKind

MAX_EXTREME_N = 16


class SizeLimitError(GraphError):
    pass


class DegenerateInput(GraphError):
    pass


def _undirected(g: SparseGraph):
    if g.directed:
        raise WrongGraphKind("expected an undirected graph")


def _directed(g: SparseGraph):
    if not g.directed:
        raise WrongGraphKind("expected a directed graph")


def to_csr(g: SparseGraph, dtype=np.int8) -> csr_matrix:
    """Out-adjacency as an n x n CSR matrix with 0-based indices."""
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    for v in range(1, g.n + 1):
        indptr[v] = indptr[v - 1] + len(g.adj[v])
    indices = np.fromiter((u - 1 for v in range(1, g.n + 1) for u in g.adj[v]),
                          dtype=np.int32, count=int(indptr[-1]))
    data = np.ones(len(indices), dtype=dtype)
    return csr_matrix((data, indices, indptr), shape=(g.n, g.n))


def connected_components(g: SparseGraph) -> list[list[int]]:
    """Components as ascending vertex lists, ordered by smallest member."""
    _undirected(g)
    _, labels = csgraph.connected_components(to_csr(g), directed=False)
    return _group(labels)


def _group(labels) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels, start=1):
        groups.setdefault(int(lab), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def is_connected(g: SparseGraph) -> bool:
    return len(connected_components(g)) == 1


def component_labels(g: SparseGraph) -> np.ndarray:
    """Weak components (directions ignored); index 0 corresponds to vertex 1."""
    _, labels = csgraph.connected_components(to_csr(g), directed=g.directed,
                                              connection="weak")
    return labels


@dataclass
class SccDecomposition:
    component: list[int]          # component[v] for v in 1..n; slot 0 is -1
    is_source: list[bool]
    is_sink: list[bool]

    @property
    def count(self) -> int:
        return len(self.is_source)

    @property
    def sources(self) -> int:
        return sum(self.is_source)

    @property
    def sinks(self) -> int:
        return sum(self.is_sink)

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for v in range(1, len(self.component)):
            out[self.component[v]].append(v)
        return out


def scc_decompose(g: SparseGraph) -> SccDecomposition:
    _directed(g)
    ncomp, labels = csgraph.connected_components(to_csr(g), directed=True,
                                                  connection="strong")
    # renumber by smallest member so ids are stable
    order: dict[int, int] = {}
    for lab in labels:
        order.setdefault(int(lab), len(order))
    comp = [-1] + [order[int(lab)] for lab in labels]
    has_in = [False] * ncomp
    has_out = [False] * ncomp
    for u, v in g.edges():
        cu, cv = comp[u], comp[v]
        if cu != cv:
            has_out[cu] = True
            has_in[cv] = True
    return SccDecomposition(comp, [not x for x in has_in], [not x for x in has_out])


def is_strongly_connected(g: SparseGraph) -> bool:
    return scc_decompose(g).count == 1


def edge_connectivity(g: SparseGraph) -> int:
    """Global minimum edge cut: min over t of max-flow(1, t) with unit capacities."""
    _undirected(g)
    if g.n < 2:
        raise DegenerateInput("edge connectivity needs n >= 2")
    if not is_connected(g):
        return 0
    cap = to_csr(g, dtype=np.int32)
    best = min(len(g.adj[v]) for v in range(1, g.n + 1))
    for t in range(1, g.n):
        if best == 0:
            break
        flow = csgraph.maximum_flow(cap, 0, t).flow_value
        best = min(best, int(flow))
    return best


def brute_force_min_cut(g: SparseGraph) -> int:
    """min deg(U) over nonempty proper U; exponential, for n <= 16."""
    _undirected(g)
    if g.n > MAX_EXTREME_N:
        raise SizeLimitError(f"n={g.n} exceeds {MAX_EXTREME_N}")
    if g.n < 2:
        raise DegenerateInput("edge connectivity needs n >= 2")
    degs = subset_degrees(list(range(1, g.n + 1)), lambda v: g.adj[v])
    return int(degs[1:-1].min())


def exact_diameter(g: SparseGraph) -> float:
    """Largest BFS distance over all pairs; ``math.inf`` when disconnected."""
    _undirected(g)
    if g.n == 1:
        return 0
    dist = csgraph.shortest_path(to_csr(g), directed=False, unweighted=True)
    top = dist.max()
    return math.inf if np.isinf(top) else int(top)


def power_graph(g: SparseGraph, d: int) -> SparseGraph:
    """Edge (u, v) iff 0 < dist(u, v) <= d, via a d-bounded BFS from every vertex."""
    _undirected(g)
    if d < 1:
        raise ValueError("power must be >= 1")
    adj: list[list[int]] = [[]]
    for s in range(1, g.n + 1):
        seen = {s}
        frontier = [s]
        for _ in range(d):
            nxt = []
            for x in frontier:
                for y in g.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            if not nxt:
                break
            frontier = nxt
        seen.discard(s)
        adj.append(sorted(seen))
    m = max(g.m_bound, sum(len(a) for a in adj) // 2)
    return SparseGraph(g.n, m, adj)


def subset_degrees(vertices, neighbors) -> np.ndarray:
    """Boundary degree of every subset of ``vertices`` (bitmask-indexed).

    ``neighbors(v)`` gives v's full neighbor collection in the ambient graph, so
    edges leaving ``vertices`` count toward each subset's degree.
    """
    k = len(vertices)
    if k > MAX_EXTREME_N:
        raise SizeLimitError(f"{k} vertices exceed exhaustive limit {MAX_EXTREME_N}")
    pos = {v: i for i, v in enumerate(vertices)}
    masks = np.arange(1 << k, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(k)) & 1).astype(np.int32)
    deg = np.array([len(neighbors(v)) for v in vertices], dtype=np.int32)
    total = bits @ deg
    for v in vertices:
        i = pos[v]
        for u in neighbors(v):
            j = pos.get(u)
            if j is not None and i < j:
                total -= 2 * (bits[:, i] & bits[:, j])
    return total


def _min_proper_subset(degs: np.ndarray, k: int) -> np.ndarray:
    """For every mask, the minimum degree over its nonempty proper submasks."""
    size = 1 << k
    big = np.iinfo(np.int64).max
    best = degs.astype(np.int64).copy()
    best[0] = big
    # subset-min (SOS) transform: best[mask] = min over nonempty submasks
    masks = np.arange(size)
    for i in range(k):
        has = (masks >> i) & 1 == 1
        idx = masks[has]
        best[idx] = np.minimum(best[idx], best[idx ^ (1 << i)])
    proper = np.full(size, big, dtype=np.int64)
    for i in range(k):
        has = (masks >> i) & 1 == 1
        idx = masks[has]
        proper[idx] = np.minimum(proper[idx], best[idx ^ (1 << i)])
    return proper


def is_extreme_set(members, ell: int, neighbors) -> bool:
    """deg(U) == ell and deg(W) > ell for every nonempty proper W of U."""
    members = list(members)
    k = len(members)
    degs = subset_degrees(members, neighbors)
    full = (1 << k) - 1
    if degs[full] != ell:
        return False
    if k == 1:
        return True
    return bool(_min_proper_subset(degs, k)[full] > ell)


def enumerate_extreme_sets(g: SparseGraph, ell: int) -> list[frozenset[int]]:
    _undirected(g)
    if g.n > MAX_EXTREME_N:
        raise SizeLimitError(f"n={g.n} exceeds {MAX_EXTREME_N}")
    verts = list(range(1, g.n + 1))
    degs = subset_degrees(verts, lambda v: g.adj[v])
    proper = _min_proper_subset(degs, g.n)
    hits = np.nonzero((degs == ell) & (proper > ell))[0]
    found = [frozenset(verts[i] for i in range(g.n) if (int(mask) >> i) & 1)
             for mask in hits if mask]
    for a, b in combinations(found, 2):
        if a & b:
            raise AssertionError(f"{ell}-extreme sets {sorted(a)} and {sorted(b)} overlap")
    return sorted(found, key=lambda s: (min(s), len(s)))


def distance_to_connectivity(g: SparseGraph) -> GraphDistance:
    _undirected(g)
    return GraphDistance(len(connected_components(g)) - 1, g.m_bound)


def distance_to_strong_connectivity(g: SparseGraph) -> GraphDistance:
    """max(#source, #sink) components of the condensation (0 if one SCC)."""
    dec = scc_decompose(g)
    if dec.count == 1:
        return GraphDistance(0, g.m_bound)
    return GraphDistance(max(dec.sources, dec.sinks), g.m_bound)


def max_independent_set_size(g: SparseGraph) -> int:
    """Exhaustive maximum independent set, for small graphs (n <= 20)."""
    _undirected(g)
    if g.n > 20:
        raise SizeLimitError("exhaustive independent set limited to n <= 20")
    nbr = [0] * (g.n + 1)
    for v in range(1, g.n + 1):
        for u in g.adj[v]:
            nbr[v] |= 1 << (u - 1)

    def best(avail: int) -> int:
        if not avail:
            return 0
        v = (avail & -avail).bit_length()
        bit = 1 << (v - 1)
        skip = best(avail & ~bit)
        take = 1 + best(avail & ~bit & ~nbr[v])
        return max(skip, take)

    return best((1 << g.n) - 1)
