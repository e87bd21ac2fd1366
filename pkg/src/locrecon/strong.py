"""Local reconstruction of strong connectivity in digraphs.

Arcs are only added between ``v0`` and "transmitters" (arc into ``v0``) or
"receivers" (arc out of ``v0``).  A vertex whose capped forward DFS stays
small and closes into a single strongly connected component sits in a small
sink and must be a transmitter candidate; otherwise leadership is decided on
an undirected BFS ball so that many vertices draining into one tiny sink do
not all fire.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import SparseGraph, WrongGraphKind
from .rand import RandomSource
from .recon import Reconstructor
from .supernodes import ConfigError, ceil_frac, exact


@dataclass(frozen=True)
class StrongConnConfig:
    eps: float
    alpha: float = 1.0
    delta: float = 0.1
    seed: int = 0

    def search_cap(self, m: int) -> int:
        """K = ceil(m / (delta*alpha*eps*m/2 - 1))."""
        x = exact(self.delta) * exact(self.alpha) * exact(self.eps) * m / 2
        if x <= 1:
            raise ConfigError(f"delta*alpha*eps*m/2 = {float(x):.4g} must exceed 1")
        return max(2, ceil_frac(m / (x - 1)))


def capped_dfs(handle, v: int, cap: int, forward: bool = True):
    """Preorder DFS from ``v`` (neighbors in list order) stopping at ``cap`` vertices.

    Returns ``(order, arcs, hit)``: discovered vertices, the explored
    adjacency ``{x: [y, ...]}`` and whether the cap was reached.
    """
    deg = handle.degree if forward else handle.in_degree
    nbr = handle.neighbor if forward else handle.in_neighbor
    order = [v]
    seen = {v}
    arcs: dict[int, list[int]] = {}
    if cap <= 1:
        return order, arcs, True
    stack = [(v, 1, deg(v))]
    arcs[v] = []
    while stack:
        x, i, d = stack[-1]
        if i > d:
            stack.pop()
            continue
        stack[-1] = (x, i + 1, d)
        y = nbr(x, i)
        arcs[x].append(y)
        if y in seen:
            continue
        seen.add(y)
        order.append(y)
        if len(order) >= cap:
            return order, arcs, True
        arcs[y] = []
        stack.append((y, 1, deg(y)))
    return order, arcs, False


def tarjan_scc(vertices, arcs) -> list[list[int]]:
    """Tarjan's algorithm (iterative) on the subgraph given by ``arcs``."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in vertices:
        if root in index:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            x, i = work[-1]
            succ = arcs.get(x, ())
            if i < len(succ):
                work[-1] = (x, i + 1)
                y = succ[i]
                if y not in index:
                    index[y] = low[y] = counter
                    counter += 1
                    stack.append(y)
                    on_stack.add(y)
                    work.append((y, 0))
                elif y in on_stack:
                    low[x] = min(low[x], index[y])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[x])
            if low[x] == index[x]:
                comp = []
                while True:
                    y = stack.pop()
                    on_stack.discard(y)
                    comp.append(y)
                    if y == x:
                        break
                comps.append(comp)
    return comps


def _small_closed_component(handle, v, cap, forward):
    order, arcs, hit = capped_dfs(handle, v, cap, forward)
    if hit:
        return False
    return len(tarjan_scc(order, arcs)) == 1


def in_small_sink(handle, v: int, cap: int) -> bool:
    """``v`` lies in a sink component with fewer than ``cap`` vertices."""
    return _small_closed_component(handle, v, cap, True)


def in_small_source(handle, v: int, cap: int) -> bool:
    return _small_closed_component(handle, v, cap, False)


def undirected_ball(handle, v: int, cap: int) -> list[int]:
    """First ``cap`` vertices of a BFS that ignores arc directions (out-list first)."""
    seen = {v}
    order = [v]
    if cap <= 1:
        return order
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for deg, nbr in ((handle.degree, handle.neighbor), (handle.in_degree, handle.in_neighbor)):
            d = deg(x)
            for i in range(1, d + 1):
                y = nbr(x, i)
                if y in seen:
                    continue
                seen.add(y)
                order.append(y)
                if len(order) >= cap:
                    return order
                queue.append(y)
    return order


class StronglyConnected(Reconstructor):
    directed = True
    name = "strongly-connected"

    def __init__(self, graph: SparseGraph, cfg: StrongConnConfig, memo: bool = True, v0: int = 1):
        if not graph.directed:
            raise WrongGraphKind("strong connectivity needs a directed graph")
        super().__init__(graph, memo)
        self.cfg = cfg
        self.K = cfg.search_cap(graph.m_bound)
        self.v0 = v0
        self.rank = RandomSource(cfg.seed, "rank")
        self._memo: dict[tuple[int, bool], bool] = {}

    @property
    def supernodes(self) -> range:
        return range(self.v0, self.v0 + 1)

    def is_supernode(self, v):
        return v == self.v0

    def partners(self, x):
        return (self.v0,)

    def added_candidates(self, w):
        return range(1, self.n + 1)

    def candidate_pairs(self):
        seen = set(self.graph.edges())
        yield from seen
        for x in range(1, self.n + 1):
            if x == self.v0:
                continue
            for pr in ((x, self.v0), (self.v0, x)):
                if pr not in seen:
                    yield pr

    def _minimal(self, v, group) -> bool:
        rv = self.rank.rank(v)
        return all(self.rank.rank(u) >= rv for u in group)

    def special(self, v: int, forward: bool) -> bool:
        """Transmitter test (``forward``) or receiver test for ``v``."""
        key = (v, forward)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        order, arcs, capped = capped_dfs(self.handle, v, self.K, forward)
        if capped or len(tarjan_scc(order, arcs)) == 1:
            ans = self._minimal(v, order)
        else:
            ans = self._minimal(v, undirected_ball(self.handle, v, self.K))
        if self.memo:
            self._memo[key] = ans
        return ans

    def is_transmitter(self, v: int) -> bool:
        return self.special(v, True)

    def is_receiver(self, v: int) -> bool:
        return self.special(v, False)

    def _decide(self, u, v):
        if self.handle.has_edge(u, v):
            return True
        if v == self.v0:
            return self.is_transmitter(u)
        if u == self.v0:
            return self.is_receiver(v)
        return False

    @property
    def closeness(self) -> float:
        return (4 + self.cfg.alpha) * self.cfg.eps
