"""Local reconstruction of bounded diameter.

Works on top of the super-node connectivity correction G'.  The super-node
``v0 = 1`` is wired to a dominating set of G'^K: every high-degree vertex,
plus a maximal independent set over the remaining "clean" vertices (those
with no high-degree vertex within distance K).  Every vertex then sits within
K + 1 of ``v0``, so the diameter is at most 2K + 2.

The MIS is computed locally by replaying Luby rounds with per-(vertex,
round) coins; round statuses are memoized and evaluated with an explicit
stack so deep round chains do not hit the recursion limit.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .connect import ConnConfig, ModConnected
from .graph import SparseGraph, WrongGraphKind
from .rand import RandomSource
from .recon import Reconstructor
from .supernodes import ConfigError, ceil_frac, exact

UNDECIDED, JOINED, EXCLUDED = 0, 1, 2


@dataclass(frozen=True)
class DiamConfig:
    eps: float
    alpha: float = 1.0
    delta: float = 0.1
    c: float = 0.05
    D: int = 3
    seed: int = 0
    c_mis: float = 4.0

    def radius(self, n: int, m: int) -> int:
        """K = min(ceil(2n / (eps m)), D)."""
        return max(1, min(ceil_frac(2 * n / (exact(self.eps) * m)), self.D))

    def avg_degree(self, n: int, m: int) -> float:
        return 2 * m / n

    def high_threshold(self, n: int, m: int) -> float:
        return self.avg_degree(n, m) / self.eps

    def rounds(self, n: int, m: int) -> int:
        delta_h = self.high_threshold(n, m) ** self.radius(n, m)
        return max(1, math.ceil(self.c_mis * math.log2(delta_h + 2) ** 2))

    def conn_config(self) -> ConnConfig:
        return ConnConfig(eps=self.eps, alpha=self.alpha, delta=self.delta,
                          seed=self.seed, c=self.c)


class SmallDiameter(Reconstructor):
    name = "small-diameter"

    def __init__(self, graph: SparseGraph, cfg: DiamConfig, memo: bool = True):
        if graph.directed:
            raise WrongGraphKind("diameter reconstruction is undirected only")
        if cfg.D < 1:
            raise ConfigError("D must be at least 1")
        super().__init__(graph, memo)
        self.cfg = cfg
        self.base = ModConnected(graph, cfg.conn_config(), memo=memo)
        self.handle = self.base.handle
        self.n0 = self.base.n0
        self.v0 = 1
        self.K = cfg.radius(self.n, self.m)
        self.tau = cfg.high_threshold(self.n, self.m)
        self.R = cfg.rounds(self.n, self.m)
        self.coins = RandomSource(cfg.seed, "mis")
        self._ball: dict[int, tuple[bool, tuple[int, ...]]] = {}
        self._hnbrs: dict[int, tuple[int, ...]] = {}
        self._state: dict[tuple, object] = {}
        self._mis: dict[int, int] = {}
        self.fallbacks: set[int] = set()

    # -- structure ---------------------------------------------------------
    @property
    def supernodes(self) -> range:
        return range(1, self.n0 + 1)

    def is_supernode(self, v):
        return v <= self.n0

    def partners(self, x):
        h = self.base.h(x)
        return (h,) if h == self.v0 else (h, self.v0)

    def added_candidates(self, w):
        if w == self.v0:
            return range(1, self.n + 1)
        return list(self.base.added_candidates(w)) + [self.v0]

    # -- G' access ---------------------------------------------------------
    def prime_neighbors(self, v: int) -> tuple[int, ...]:
        return self.base.neighbors(v)

    def is_high_degree(self, v: int) -> bool:
        return v == self.v0 or len(self.prime_neighbors(v)) > self.tau

    def low_ball(self, v: int) -> tuple[bool, tuple[int, ...]]:
        """BFS in G' to radius K; unclean as soon as a high-degree vertex shows up."""
        hit = self._ball.get(v)
        if hit is not None:
            return hit
        dist = {v: 0}
        order = [v]
        queue = deque([v])
        ans = None
        while queue and ans is None:
            x = queue.popleft()
            if dist[x] == self.K:
                continue
            for y in self.prime_neighbors(x):
                if y in dist:
                    continue
                if self.is_high_degree(y):
                    ans = (False, ())
                    break
                dist[y] = dist[x] + 1
                order.append(y)
                queue.append(y)
        if ans is None:
            ans = (True, tuple(order))
        if self.memo:
            self._ball[v] = ans
        return ans

    def h_neighbors(self, v: int) -> tuple[int, ...]:
        """Clean low-degree vertices within distance K of ``v`` (``v`` clean)."""
        hit = self._hnbrs.get(v)
        if hit is not None:
            return hit
        _, ball = self.low_ball(v)
        res = tuple(u for u in ball[1:] if self.low_ball(u)[0])
        self._hnbrs[v] = res
        return res

    # -- local Luby --------------------------------------------------------
    def _coin(self, u, r):
        return (self.coins.value(u, r), u)

    def _step(self, key):
        """Value of ``key`` or the list of sub-results it still needs."""
        kind, u, r = key
        st = self._state
        if r == 0:
            return (UNDECIDED if kind == "s" else False), None
        prev = st.get(("s", u, r - 1))
        if prev is None:
            return None, [("s", u, r - 1)]
        if kind == "j":
            if prev != UNDECIDED:
                return False, None
            nbrs = self.h_neighbors(u)
            missing = [("s", w, r - 1) for w in nbrs if ("s", w, r - 1) not in st]
            if missing:
                return None, missing
            mine = self._coin(u, r)
            ok = all(self._coin(w, r) > mine for w in nbrs if st[("s", w, r - 1)] == UNDECIDED)
            return ok, None
        if prev != UNDECIDED:
            return prev, None
        need = [("j", u, r)] + [("j", w, r) for w in self.h_neighbors(u)]
        missing = [k for k in need if k not in st]
        if missing:
            return None, missing
        if st[("j", u, r)]:
            return JOINED, None
        if any(st[k] for k in need[1:]):
            return EXCLUDED, None
        return UNDECIDED, None

    def _status(self, u: int, r: int):
        root = ("s", u, r)
        st = self._state
        if root in st:
            return st[root]
        stack = [root]
        while stack:
            key = stack[-1]
            if key in st:
                stack.pop()
                continue
            val, missing = self._step(key)
            if missing:
                stack.extend(missing)
            else:
                st[key] = val
                stack.pop()
        return st[root]

    def mis(self, v: int) -> int:
        """1 if ``v`` joins the MIS within R rounds or is still undecided (fallback)."""
        hit = self._mis.get(v)
        if hit is not None:
            return hit
        status = UNDECIDED
        for r in range(1, self.R + 1):
            status = self._status(v, r)
            if status != UNDECIDED:
                break
        if status == UNDECIDED:
            self.fallbacks.add(v)
        ans = 0 if status == EXCLUDED else 1
        self._mis[v] = ans
        return ans

    # -- edge oracle -------------------------------------------------------
    def _decide(self, u, v):
        if self.base.edge(u, v):
            return True
        if self.v0 not in (u, v):
            return False
        x = v if u == self.v0 else u
        if self.is_high_degree(x):
            return True
        clean, _ = self.low_ball(x)
        if not clean:
            return False
        return bool(self.mis(x))

    @property
    def closeness(self) -> float:
        """Edges beyond G' are bounded by 2 eps m + 1."""
        return 2 * self.cfg.eps + 1 / self.m
