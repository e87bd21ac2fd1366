"""Instance generators and corruptors with checkable distance certificates."""
from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import exact as ex
from .graph import GraphError, SparseGraph
from .supernodes import ring_graph_edges

KINDS = ("connected", "kconn", "strong", "lowdiam")
PROPERTIES = ("conn", "strong", "kconn", "diam")


class GenerationError(GraphError):
    pass


class CorruptionError(GraphError):
    pass


def _pair(u, v):
    return (u, v) if u < v else (v, u)


def _random_extra(rng, n, edges, count, directed=False, allowed=None):
    pool = allowed if allowed is not None else list(range(1, n + 1))
    if len(pool) < 2:
        return
    target = len(edges) + count
    limit = len(pool) * (len(pool) - 1) // (1 if directed else 2)
    target = min(target, limit)
    while len(edges) < target:
        u, v = rng.sample(pool, 2)
        edges.add((u, v) if directed else _pair(u, v))


def gen_connected(n, m_bound, extra, rng):
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    edges = {_pair(perm[i], perm[rng.randrange(i)]) for i in range(1, n)}
    _random_extra(rng, n, edges, extra)
    return SparseGraph.from_edges(n, edges, m_bound)


def gen_kconn(n, m_bound, extra, rng, k):
    s = (k + 1) // 2
    if n < 2 * s + 1:
        raise GenerationError(f"need n >= {2 * s + 1} for a width-{s} ring")
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    edges = {_pair(perm[a - 1], perm[b - 1]) for a, b in ring_graph_edges(n, s)}
    _random_extra(rng, n, edges, extra)
    return SparseGraph.from_edges(n, edges, m_bound)


def gen_strong(n, m_bound, extra, rng):
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    arcs = {(perm[i], perm[(i + 1) % n]) for i in range(n)}
    _random_extra(rng, n, arcs, extra, directed=True)
    return SparseGraph.from_edges(n, arcs, m_bound, directed=True)


def gen_lowdiam(n, m_bound, extra, rng, hubs=None):
    """Hub clique, one spoke per other vertex, extra edges among non-hubs (diameter <= 3)."""
    q = hubs or max(2, math.ceil(math.sqrt(n) / 2))
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    hub, rest = perm[:q], perm[q:]
    edges = {_pair(a, b) for i, a in enumerate(hub) for b in hub[i + 1:]}
    for x in rest:
        edges.add(_pair(x, rng.choice(hub)))
    _random_extra(rng, n, edges, extra, allowed=rest)
    return SparseGraph.from_edges(n, edges, m_bound)


def _holds(g, kind, k, D) -> bool:
    if kind == "connected":
        return ex.is_connected(g)
    if kind == "kconn":
        return ex.edge_connectivity(g) >= k
    if kind == "strong":
        return ex.is_strongly_connected(g)
    return ex.exact_diameter(g) <= D


def generate(kind: str, n: int, m_bound: int, extra: int = 0, seed: int = 0,
             k: int = 2, D: int = 3, hubs: int | None = None, retries: int = 5) -> SparseGraph:
    """Random graph with the target property, verified before it is returned."""
    if kind not in KINDS:
        raise GenerationError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    for attempt in range(retries):
        rng = random.Random(f"{kind}/{seed}/{attempt}")
        if kind == "connected":
            g = gen_connected(n, m_bound, extra, rng)
        elif kind == "kconn":
            g = gen_kconn(n, m_bound, extra, rng, k)
        elif kind == "strong":
            g = gen_strong(n, m_bound, extra, rng)
        else:
            g = gen_lowdiam(n, m_bound, extra, rng, hubs)
        if _holds(g, kind, k, D):
            return g
    raise GenerationError(f"{kind} generation failed verification after {retries} tries")


# -- certificates -----------------------------------------------------------

@dataclass
class Certificate:
    """Distance evidence: ``pairs / m_bound`` is exact or an upper bound."""

    property: str
    pairs: int
    m_bound: int
    bound: str = "exact"                     # or "upper"
    detail: dict = field(default_factory=dict)
    removed: list = field(default_factory=list)

    @property
    def distance(self) -> Fraction:
        return Fraction(self.pairs, self.m_bound)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        d = json.loads(text)
        d["removed"] = [tuple(e) for e in d.get("removed", [])]
        return cls(**d)

    def validate(self, g: SparseGraph, original: SparseGraph | None = None) -> bool:
        """Recheck the evidence against the corrupted graph ``g``."""
        if self.property == "conn":
            return len(ex.connected_components(g)) - 1 == self.pairs
        if self.property == "strong":
            dec = ex.scc_decompose(g)
            return (dec.sources == self.detail["sources"] and dec.sinks == self.detail["sinks"]
                    and max(dec.sources, dec.sinks) == self.pairs)
        repaired = g.with_edges(added=self.removed)
        if len(self.removed) != self.pairs:
            return False
        if self.property == "kconn":
            k = self.detail["k"]
            return ex.edge_connectivity(repaired) >= k and ex.edge_connectivity(g) < k
        D = self.detail["D"]
        return ex.exact_diameter(repaired) <= D


def _split_components(g, target, rng):
    """Cut BFS pieces out of big components until exactly ``target`` components."""
    adj = [set(a) for a in g.adj]
    removed = []
    n = g.n
    stalls = 0

    def count():
        rows = [x - 1 for x in range(1, n + 1) for _ in adj[x]]
        cols = [y - 1 for x in range(1, n + 1) for y in adj[x]]
        mat = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        return connected_components(mat, directed=False)[0]

    comps = count()
    if comps > target:
        raise CorruptionError(f"graph already has {comps} > {target} components")
    while comps < target:
        if stalls > 50 * target:
            raise CorruptionError("could not reach the requested component count")
        root = rng.randrange(1, n + 1)
        if not adj[root]:
            stalls += 1
            continue
        size = rng.randint(1, 4)
        piece, frontier = {root}, [root]
        while frontier and len(piece) < size:
            x = frontier.pop(0)
            for y in sorted(adj[x]):
                if y not in piece and len(piece) < size:
                    piece.add(y)
                    frontier.append(y)
        cut = [(x, y) for x in piece for y in adj[x] if y not in piece]
        if not cut:
            stalls += 1
            continue
        for x, y in cut:
            adj[x].discard(y)
            adj[y].discard(x)
        now = count()
        if now > target or now == comps:
            for x, y in cut:
                adj[x].add(y)
                adj[y].add(x)
            stalls += 1
            continue
        removed.extend(_pair(x, y) for x, y in cut)
        comps = now
    return SparseGraph(n, g.m_bound, [tuple(sorted(a)) for a in adj]), removed


def corrupt_connectivity(g, eps, rng, components=None):
    target = components if components is not None else math.floor(eps * g.m_bound) + 1
    h, _ = _split_components(g, target, rng)
    cert = Certificate("conn", target - 1, g.m_bound, "exact", {"components": target})
    return h, cert


def corrupt_strong(g, rng, sources=10, sinks=10, retries=200):
    """Delete in-arcs (resp. out-arcs) of chosen vertices to make singleton sources (sinks).

    Picks avoid vertices whose removal would strand a neighbor (a predecessor
    of a new source with out-degree 1, or a successor of a new sink with
    in-degree 1), then the condensation is checked.
    """
    n = g.n
    outd = [len(a) for a in g.adj]
    ind = [len(a) for a in g.in_adj]
    for _ in range(retries):
        order = list(range(1, n + 1))
        rng.shuffle(order)
        src: set[int] = set()
        snk: set[int] = set()
        touched: set[int] = set()
        for x in order:
            if len(src) == sources and len(snk) == sinks:
                break
            near = set(g.adj[x]) | set(g.in_adj[x]) | {x}
            if near & touched:
                continue
            if len(src) < sources and all(outd[w] >= 2 for w in g.in_adj[x]):
                src.add(x)
            elif len(snk) < sinks and all(ind[y] >= 2 for y in g.adj[x]):
                snk.add(x)
            else:
                continue
            touched |= near
        if len(src) < sources or len(snk) < sinks:
            continue
        arcs = [(u, v) for u, v in g.edges() if v not in src and u not in snk]
        h = SparseGraph.from_edges(n, arcs, g.m_bound, directed=True)
        dec = ex.scc_decompose(h)
        if dec.sources == sources and dec.sinks == sinks:
            cert = Certificate("strong", max(sources, sinks), g.m_bound, "exact",
                               {"sources": sources, "sinks": sinks})
            return h, cert
    raise CorruptionError("could not isolate the requested sources/sinks")


def corrupt_kconn(g, eps, rng, k):
    """Drop chosen vertices to degree k-1 while staying within eps*m removed edges."""
    budget = math.floor(eps * g.m_bound)
    adj = [set(a) for a in g.adj]
    order = list(range(1, g.n + 1))
    rng.shuffle(order)
    removed = []
    for x in order:
        need = len(adj[x]) - (k - 1)
        if need <= 0 or len(removed) + need > budget:
            continue
        # only cut towards vertices that stay at degree >= k
        opts = sorted(y for y in adj[x] if len(adj[y]) > k)
        if len(opts) < need:
            continue
        for y in rng.sample(opts, need):
            adj[x].discard(y)
            adj[y].discard(x)
            removed.append(_pair(x, y))
    if not removed:
        raise CorruptionError("edge budget too small to downgrade any cut")
    h = SparseGraph(g.n, g.m_bound, [tuple(sorted(a)) for a in adj])
    removed.sort()
    return h, Certificate("kconn", len(removed), g.m_bound, "upper", {"k": k}, removed)


def corrupt_diameter(g, eps, rng, D):
    """Remove spokes (edges into vertices of degree > 2 * 2m/n), at most eps*m of them."""
    budget = math.floor(eps * g.m_bound)
    cut = 2 * (2 * g.m_bound / g.n)
    hubs = {v for v in range(1, g.n + 1) if g.degree(v) > cut}
    spokes = sorted(_pair(x, y) for x, y in g.edges()
                    if (x in hubs) != (y in hubs))
    if not spokes:
        raise CorruptionError("no hub spokes to remove")
    removed = sorted(rng.sample(spokes, min(budget, len(spokes))))
    h = g.with_edges(removed=removed)
    return h, Certificate("diam", len(removed), g.m_bound, "upper", {"D": D}, removed)


def corrupt(g: SparseGraph, prop: str, eps: float, seed: int = 0, k: int = 2, D: int = 3,
            sources: int | None = None, sinks: int | None = None,
            components: int | None = None):
    """Return ``(corrupted graph, certificate)``; the certificate is rechecked first."""
    rng = random.Random(f"corrupt/{prop}/{seed}")
    if prop == "conn":
        h, cert = corrupt_connectivity(g, eps, rng, components)
    elif prop == "strong":
        j = max(1, math.floor(eps * g.m_bound / 10)) if sources is None else sources
        h, cert = corrupt_strong(g, rng, j, sinks if sinks is not None else j)
    elif prop == "kconn":
        h, cert = corrupt_kconn(g, eps, rng, k)
    elif prop == "diam":
        h, cert = corrupt_diameter(g, eps, rng, D)
    else:
        raise CorruptionError(f"unknown property {prop!r}")
    if not cert.validate(h, g):
        raise CorruptionError(f"{prop} certificate failed revalidation")
    return h, cert
