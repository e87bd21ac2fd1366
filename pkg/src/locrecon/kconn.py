"""Recursive local reconstruction of k-edge-connectivity.

Level 1 is the super-node connectivity correction with a width-ceil(k/2)
ring on V0.  Level j >= 2 reads level j-1 through its neighbor oracle and
links a non-super-node ``x`` to the smallest free super-node in ``h(x)`` when

* a randomized extreme-set search from ``x`` finds a verified (j-1)-extreme
  set ``U`` of at most ``t`` vertices and ``x`` has the smallest level-j rank
  in ``U``, or
* no search iteration succeeds and ``x``'s rank value is below
  ``ln(C n / t) / t``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _search
from .connect import ConnConfig, ModConnected
from .exact import SizeLimitError, is_extreme_set
from .graph import SparseGraph, WrongGraphKind
from .rand import RandomSource, hash_words, namespace_key
from .recon import Reconstructor
from .supernodes import ConfigError, SupernodeLayout, exact


@dataclass(frozen=True)
class KConnConfig:
    eps: float
    alpha: float = 1.0
    delta: float = 0.1
    gamma: float = 0.1
    c: float = 0.1
    k: int = 2
    seed: int = 0
    t: int | None = None          # explicit search bound (desk-scale override)
    t_bf: int = 16                # exhaustive extremeness check limit

    def C(self) -> float:
        return 1.0 / math.log(1.0 / (1.0 - self.gamma))

    def search_bound(self, n: int) -> int:
        if self.t is not None:
            return int(self.t)
        return math.ceil(math.log(self.C() * n) / (self.delta * self.alpha * self.eps))

    def iterations(self, n: int) -> int:
        t = self.search_bound(n)
        return math.ceil(t * t * math.log(self.C() * n))

    def random_threshold(self, n: int) -> float:
        t = self.search_bound(n)
        return math.log(self.C() * n / t) / t

    @property
    def ring_width(self) -> int:
        return (self.k + 1) // 2

    def conn_config(self) -> ConnConfig:
        return ConnConfig(eps=self.eps, alpha=self.alpha, delta=self.delta,
                          seed=self.seed, c=self.c)


@dataclass
class SearchOutcome:
    success: bool
    members: frozenset
    degree: int
    iteration: int = -1


def verify_extreme(members, ell: int, neighbors, t_bf: int = 16) -> bool:
    """Exhaustive check that ``members`` is ell-extreme under ``neighbors``."""
    if len(members) > t_bf:
        raise SizeLimitError(f"|U'| = {len(members)} exceeds exhaustive bound {t_bf}")
    return is_extreme_set(sorted(members), ell, neighbors)


def extreme_set_search_once(neighbors, v: int, iteration: int, j: int, t: int,
                            weight_key: int, t_bf: int = 16) -> SearchOutcome:
    """Grow U from ``v`` by the lightest cut edge until |U| = t or deg(U) < j.

    Endpoints whose degree is at least ``t + j`` are never added.  Success
    means the run stopped with deg(U) = j - 1 and U is (j-1)-extreme.
    """
    limit = t + j
    members = [v]
    inside = {v}
    deg_u = len(neighbors(v))
    boundary: list[tuple[int, int, int, int]] = []   # (weight, lo, hi, target)

    def push(a):
        for b in neighbors(a):
            if b not in inside:
                lo, hi = (a, b) if a < b else (b, a)
                boundary.append((hash_words(weight_key, iteration, lo, hi), lo, hi, b))

    push(v)
    while deg_u >= j and len(members) < t:
        options = [e for e in boundary
                   if e[3] not in inside and len(neighbors(e[3])) < limit]
        if not options:
            return SearchOutcome(False, frozenset(members), deg_u, iteration)
        w = min(options)[3]
        inner = sum(1 for b in neighbors(w) if b in inside)
        inside.add(w)
        members.append(w)
        deg_u += len(neighbors(w)) - 2 * inner
        push(w)
    ok = deg_u == j - 1 and verify_extreme(members, j - 1, neighbors, t_bf)
    return SearchOutcome(ok, frozenset(members), deg_u, iteration)


def csr_arrays(g: SparseGraph, limit: int):
    """Whole-graph arrays for the compiled search (0-based ids, degree < limit expandable)."""
    n = g.n
    indptr = np.zeros(n + 1, dtype=np.int64)
    for v in range(1, n + 1):
        indptr[v] = indptr[v - 1] + len(g.adj[v])
    indices = np.fromiter((u - 1 for v in range(1, n + 1) for u in g.adj[v]),
                          dtype=np.int64, count=int(indptr[-1]))
    deg = np.diff(indptr)
    gid = np.arange(1, n + 1, dtype=np.int64)
    return indptr, indices, gid, deg < limit, deg


def search_candidates(g: SparseGraph, v: int, j: int, t: int, weight_key: int,
                      it_begin: int, it_end: int, arrays=None):
    """Compiled search on a plain graph: iterations in ``[it_begin, it_end)``
    that stop with deg(U) = j - 1, as ``(iteration, U)`` pairs in order."""
    arrays = arrays if arrays is not None else csr_arrays(g, t + j)
    members = np.zeros(t + 1, dtype=np.int64)
    key = np.uint64(weight_key)
    out = []
    it = it_begin
    while it < it_end:
        hit, size = _search.first_candidate(*arrays, v - 1, key, it, it_end, t, j, members)
        if hit < 0:
            break
        out.append((int(hit), frozenset(int(x) + 1 for x in members[:size])))
        it = hit + 1
    return out


class KLevel(Reconstructor):
    """Level ``j >= 2``: upgrades the (j-1)-connected correction below it."""

    def __init__(self, j: int, prev: Reconstructor, cfg: KConnConfig,
                 layout: SupernodeLayout, memo: bool = True):
        super().__init__(prev.graph, memo)
        self.handle = prev.handle           # count queries against G itself
        self.j = j
        self.prev = prev
        self.cfg = cfg
        self.layout = layout
        self.n0 = layout.n0
        self.s = cfg.ring_width
        self.t = cfg.search_bound(self.n)
        self.iterations = cfg.iterations(self.n)
        self.threshold = cfg.random_threshold(self.n)
        self.rank = RandomSource(cfg.seed, f"rank/{j}")
        self.weight_key = namespace_key(cfg.seed, f"weight/{j}")
        self.name = f"kconn-level-{j}"
        self._success: dict[int, bool] = {}
        self._found: dict[int, SearchOutcome | None] = {}
        self._target: dict[int, int | None] = {}
        self._prev_graph: SparseGraph | None = None
        self._csr = None
        self._rev = None
        self.skipped = 0
        if self.t < 2:
            raise ConfigError("search bound t must be at least 2")

    # -- access to level j-1 ----------------------------------------------
    def prepare(self, prev_graph: SparseGraph) -> None:
        """Serve level j-1 from its materialization instead of its oracle."""
        self._prev_graph = prev_graph
        self._csr = csr_arrays(prev_graph, self.t + self.j)
        self._rev = _search.reverse_arcs(self._csr[0], self._csr[1])

    def prev_edge(self, u, v) -> bool:
        if self._prev_graph is not None:
            return self._prev_graph.has_edge(u, v)
        return self.prev.edge(u, v)

    def prev_neighbors(self, v) -> tuple[int, ...]:
        if self._prev_graph is not None:
            return self._prev_graph.adj[v]
        return self.prev.neighbors(v)

    def base_neighbors(self, v):
        return tuple(self.prev_neighbors(v))

    # -- structure ---------------------------------------------------------
    @property
    def supernodes(self) -> range:
        return range(1, self.n0 + 1)

    def is_supernode(self, v):
        return v <= self.n0

    def partners(self, x):
        return self.layout.hash_set(x)

    def added_candidates(self, w):
        return self.layout.ring_neighbors(w, self.s) + self.layout.bucket(w)

    # -- search ------------------------------------------------------------
    def _region(self, v):
        """Local CSR around ``v`` holding everything a search can touch."""
        limit = self.t + self.j
        ids = [v]
        pos = {v: 0}
        depth = [0]
        rows: list[tuple[int, ...] | None] = []
        degs: list[int] = []
        head = 0
        while head < len(ids):
            a = ids[head]
            if depth[head] > self.t - 1:
                rows.append(None)
                degs.append(0)
                head += 1
                continue
            nb = self.prev_neighbors(a)
            degs.append(len(nb))
            if a != v and len(nb) >= limit:
                rows.append(None)
                head += 1
                continue
            for b in nb:
                if b not in pos:
                    pos[b] = len(ids)
                    ids.append(b)
                    depth.append(depth[head] + 1)
            rows.append(nb)
            head += 1
        size = len(ids)
        indptr = np.zeros(size + 1, dtype=np.int64)
        flat: list[int] = []
        expandable = np.zeros(size, dtype=np.bool_)
        for i, row in enumerate(rows):
            if row is not None:
                flat.extend(pos[b] for b in row)
                expandable[i] = degs[i] < limit
            indptr[i + 1] = len(flat)
        return (indptr, np.asarray(flat, dtype=np.int64),
                np.asarray(ids, dtype=np.int64), expandable,
                np.asarray(degs, dtype=np.int64)), 0

    def find_extreme_set(self, v: int) -> SearchOutcome | None:
        """First verified search success from ``v`` within the iteration budget."""
        if v in self._found:
            return self._found[v]
        if self._csr is not None:
            arrays, start = self._csr, v - 1
            # whole graph in hand: a flow certificate can rule out every run
            if _search.no_small_set(arrays[0], arrays[1], self._rev, start, self.j,
                                    self.t, 2 * self.t):
                self.skipped += 1
                if self.memo:
                    self._found[v] = None
                return None
        else:
            arrays, start = self._region(v)
        indptr, indices, gid, expandable, deg = arrays
        members = np.zeros(self.t + 1, dtype=np.int64)
        key = np.uint64(self.weight_key)
        it = 0
        found = None
        while it < self.iterations:
            hit, size = _search.first_candidate(indptr, indices, gid, expandable, deg,
                                                start, key, it, self.iterations,
                                                self.t, self.j, members)
            if hit < 0:
                break
            group = frozenset(int(gid[i]) for i in members[:size])
            if verify_extreme(group, self.j - 1, self.prev_neighbors, self.cfg.t_bf):
                found = SearchOutcome(True, group, self.j - 1, int(hit))
                break
            it = hit + 1
        if self.memo:
            self._found[v] = found
        return found

    def search_once(self, v: int, iteration: int) -> SearchOutcome:
        """One plain-Python search run; reference for the compiled loop."""
        return extreme_set_search_once(self.prev_neighbors, v, iteration, self.j, self.t,
                                       self.weight_key, self.cfg.t_bf)

    # -- decision ----------------------------------------------------------
    def successful(self, x: int) -> bool:
        hit = self._success.get(x)
        if hit is not None:
            return hit
        found = self.find_extreme_set(x)
        if found is not None:
            rx = self.rank.rank(x)
            ans = all(self.rank.rank(u) >= rx for u in found.members)
        else:
            ans = self.rank.value(x) < self.threshold
        if self.memo:
            self._success[x] = ans
        return ans

    def target(self, x: int) -> int | None:
        """Smallest super-node of h(x) not already adjacent to x at level j-1."""
        if x in self._target:
            return self._target[x]
        free = [w for w in sorted(self.layout.hash_set(x)) if not self.prev_edge(x, w)]
        ans = free[0] if free else None
        if self.memo:
            self._target[x] = ans
        return ans

    def _decide(self, u, v):
        if self.prev_edge(u, v):
            return True
        su, sv = u <= self.n0, v <= self.n0
        if su and sv:
            return self.layout.ring_edge(u, v, self.s)
        if not su and not sv:
            return False
        w, x = (u, v) if su else (v, u)
        if w not in self.layout.hash_set(x):
            return False
        return self.successful(x) and self.target(x) == w


class KConnected(Reconstructor):
    """Edge oracle for G_k; ``levels[j-1]`` answers for G_j."""

    name = "k-connected"

    def __init__(self, graph: SparseGraph, cfg: KConnConfig, memo: bool = True):
        if graph.directed:
            raise WrongGraphKind("k-connectivity needs an undirected graph")
        n = graph.n
        if cfg.k < 1:
            raise ConfigError("k must be positive")
        if exact(cfg.c) * n < cfg.k:
            raise ConfigError(f"need n >= k/c (n={n}, k={cfg.k}, c={cfg.c})")
        layout = SupernodeLayout(n, cfg.c, cfg.k)
        if layout.n0 < 2 * cfg.ring_width + 1:
            raise ConfigError(f"ring needs n0 >= {2 * cfg.ring_width + 1}, have {layout.n0}")
        if cfg.k > 1 and cfg.search_bound(n) > cfg.t_bf:
            raise ConfigError(f"search bound t={cfg.search_bound(n)} exceeds exhaustive "
                              f"limit {cfg.t_bf}; raise alpha or pass t explicitly")
        super().__init__(graph, memo)
        self.cfg = cfg
        self.layout = layout
        self.n0 = layout.n0
        base = ModConnected(graph, cfg.conn_config(), memo=memo,
                            ring_width=cfg.ring_width, rank_namespace="rank/1")
        self.handle = base.handle
        self.levels: list[Reconstructor] = [base]
        for j in range(2, cfg.k + 1):
            self.levels.append(KLevel(j, self.levels[-1], cfg, layout, memo))
        self.top = self.levels[-1]

    @property
    def supernodes(self) -> range:
        return range(1, self.n0 + 1)

    def is_supernode(self, v):
        return v <= self.n0

    def partners(self, x):
        return self.layout.hash_set(x)

    def added_candidates(self, w):
        return self.top.added_candidates(w) if self.cfg.k > 1 else \
            self.levels[0].added_candidates(w)

    def _decide(self, u, v):
        return self.top.edge(u, v)

    def neighbors(self, v):
        return self.top.neighbors(v)

    def level(self, j: int) -> Reconstructor:
        return self.levels[j - 1]

    def materialize_levels(self) -> list[SparseGraph]:
        """G_1..G_k, each level built from the previous level's materialization."""
        graphs = [self.levels[0].materialize()]
        for lvl in self.levels[1:]:
            lvl.prepare(graphs[-1])
            graphs.append(lvl.materialize())
        return graphs

    def materialize(self, all_pairs: bool = False) -> SparseGraph:
        if all_pairs:
            return super().materialize(all_pairs=True)
        return self.materialize_levels()[-1]

    @property
    def t(self) -> int:
        return self.cfg.search_bound(self.n)

    @property
    def closeness(self) -> float:
        c = self.cfg
        return (2 + c.alpha) * c.k * c.eps + c.c * c.k / 2
