"""Sparse graphs, query-counted oracle access, and graph distance.

Vertices are the integers ``1..n``.  Every graph carries an explicit edge
budget ``m_bound`` which is the denominator of all distances.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence


class GraphError(Exception):
    """Base class for graph-level errors."""


class InvariantError(GraphError):
    """A graph violates a structural invariant (loops, budget, symmetry)."""


class IncompatibleGraphs(GraphError):
    pass


class WrongGraphKind(GraphError):
    """Directed input where undirected was required, or vice versa."""


class QueryViolation(IndexError):
    """An oracle was asked for a vertex or index outside its range.

    This always signals a bug in the caller and is never swallowed.
    """


class GraphFormatError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SparseGraph:
    """Immutable adjacency-list graph with an edge budget.

    ``adj[v]`` is the strictly ascending tuple of (out-)neighbors of ``v``;
    directed graphs additionally keep ``in_adj``.  Index 0 is unused.
    """

    __slots__ = ("n", "m_bound", "directed", "adj", "in_adj", "num_edges")

    def __init__(self, n: int, m_bound: int, adj: Sequence[Sequence[int]],
                 directed: bool = False, in_adj: Sequence[Sequence[int]] | None = None):
        if n < 1:
            raise InvariantError("graph needs at least one vertex")
        self.n = int(n)
        self.m_bound = int(m_bound)
        self.directed = bool(directed)
        if len(adj) != n + 1:
            raise InvariantError("adjacency must have n+1 slots (slot 0 unused)")
        self.adj = tuple(tuple(a) for a in adj)
        total = 0
        for v in range(1, n + 1):
            lst = self.adj[v]
            for i, u in enumerate(lst):
                if not 1 <= u <= n:
                    raise InvariantError(f"vertex {v} has out-of-range neighbor {u}")
                if u == v:
                    raise InvariantError(f"self-loop at {v}")
                if i and lst[i - 1] >= u:
                    raise InvariantError(f"neighbors of {v} not strictly ascending")
            total += len(lst)
        if directed:
            if in_adj is None:
                ins: list[list[int]] = [[] for _ in range(n + 1)]
                for v in range(1, n + 1):
                    for u in self.adj[v]:
                        ins[u].append(v)
                self.in_adj = tuple(tuple(a) for a in ins)
            else:
                self.in_adj = tuple(tuple(a) for a in in_adj)
                if sum(len(a) for a in self.in_adj) != total:
                    raise InvariantError("in-lists inconsistent with out-lists")
            self.num_edges = total
        else:
            self.in_adj = self.adj
            if total % 2:
                raise InvariantError("undirected adjacency is not symmetric")
            for v in range(1, n + 1):
                for u in self.adj[v]:
                    if not self.has_edge(u, v):
                        raise InvariantError(f"edge ({v},{u}) missing from {u}'s list")
            self.num_edges = total // 2
        if self.num_edges > self.m_bound:
            raise InvariantError(f"{self.num_edges} edges exceed budget {self.m_bound}")
        if self.m_bound < self.n:
            raise InvariantError("edge budget must be at least n")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], m_bound: int,
                   directed: bool = False) -> "SparseGraph":
        out: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in edges:
            if u == v:
                raise InvariantError(f"self-loop at {u}")
            out[u].add(v)
            if not directed:
                out[v].add(u)
        return cls(n, m_bound, [sorted(s) for s in out], directed=directed)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self.in_adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        """Arc ``u -> v`` for directed graphs."""
        lst = self.adj[u]
        i = bisect_left(lst, v)
        return i < len(lst) and lst[i] == v

    def edges(self):
        """Yield each edge once; undirected edges as ``(u, v)`` with ``u < v``."""
        for u in range(1, self.n + 1):
            for v in self.adj[u]:
                if self.directed or u < v:
                    yield (u, v)

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self.edges())

    def with_edges(self, added=(), removed=()) -> "SparseGraph":
        """Return a copy with edges added and removed."""
        es = self.edge_set()
        for u, v in removed:
            es.discard(self._key(u, v))
        for u, v in added:
            es.add(self._key(u, v))
        return SparseGraph.from_edges(self.n, es, self.m_bound, self.directed)

    def _key(self, u, v):
        if self.directed or u < v:
            return (u, v)
        return (v, u)

    def __eq__(self, other):
        if not isinstance(other, SparseGraph):
            return NotImplemented
        return (self.n == other.n and self.m_bound == other.m_bound
                and self.directed == other.directed and self.adj == other.adj)

    def __hash__(self):
        return hash((self.n, self.m_bound, self.directed, self.adj))

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"SparseGraph(n={self.n}, m_bound={self.m_bound}, |E|={self.num_edges}, {kind})"


class OracleHandle:
    """Query-counted neighbor oracle over a :class:`SparseGraph`.

    ``degree``/``neighbor`` read out-lists; ``in_degree``/``in_neighbor`` read
    in-lists of directed graphs.  Indices are 1-based.  A handle is meant to be
    owned by one thread; give each worker its own handle and add the counts.
    """

    def __init__(self, graph: SparseGraph):
        self.graph = graph
        self.n = graph.n
        self.m_bound = graph.m_bound
        self.directed = graph.directed
        self.queries = 0

    def reset(self) -> int:
        used, self.queries = self.queries, 0
        return used

    def _check_vertex(self, v):
        if not 1 <= v <= self.n:
            raise QueryViolation(f"vertex {v} outside 1..{self.n}")

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        self.queries += 1
        return len(self.graph.adj[v])

    def neighbor(self, v: int, i: int) -> int:
        self._check_vertex(v)
        lst = self.graph.adj[v]
        if not 1 <= i <= len(lst):
            raise QueryViolation(f"index {i} outside 1..{len(lst)} for vertex {v}")
        self.queries += 1
        return lst[i - 1]

    def in_degree(self, v: int) -> int:
        self._check_vertex(v)
        self.queries += 1
        return len(self.graph.in_adj[v])

    def in_neighbor(self, v: int, i: int) -> int:
        self._check_vertex(v)
        lst = self.graph.in_adj[v]
        if not 1 <= i <= len(lst):
            raise QueryViolation(f"index {i} outside 1..{len(lst)} for vertex {v}")
        self.queries += 1
        return lst[i - 1]

    # aliases matching the "i-th neighbor" vocabulary
    ith_neighbor = neighbor
    out_degree = degree
    ith_out_neighbor = neighbor
    ith_in_neighbor = in_neighbor

    def has_edge(self, u: int, v: int) -> bool:
        """Binary search ``u``'s ascending list: 1 + ceil(log2(deg+1)) queries at most."""
        lo, hi = 1, self.degree(u)
        while lo <= hi:
            mid = (lo + hi) // 2
            w = self.neighbor(u, mid)
            if w == v:
                return True
            if w < v:
                lo = mid + 1
            else:
                hi = mid - 1
        return False

    def neighbor_list(self, v: int) -> list[int]:
        return [self.neighbor(v, i) for i in range(1, self.degree(v) + 1)]

    def in_neighbor_list(self, v: int) -> list[int]:
        return [self.in_neighbor(v, i) for i in range(1, self.in_degree(v) + 1)]


@dataclass(frozen=True)
class GraphDistance:
    differing_pairs: int
    m_bound: int

    @property
    def value(self) -> float:
        return self.differing_pairs / self.m_bound

    @property
    def exact(self) -> Fraction:
        return Fraction(self.differing_pairs, self.m_bound)

    def __float__(self):
        return self.value


def graph_distance(g1: SparseGraph, g2: SparseGraph) -> GraphDistance:
    """Pairs carrying an edge in exactly one graph, over the shared budget.

    For digraphs a pair ``{u, v}`` differs when the arcs between ``u`` and
    ``v`` differ in either direction.
    """
    if g1.n != g2.n or g1.m_bound != g2.m_bound or g1.directed != g2.directed:
        raise IncompatibleGraphs("graphs differ in n, m_bound or directedness")
    diff = g1.edge_set() ^ g2.edge_set()
    if g1.directed:
        diff = {(min(u, v), max(u, v)) for u, v in diff}
    return GraphDistance(len(diff), g1.m_bound)


def save_graph(g: SparseGraph, path) -> None:
    Path(path).write_text(dumps_graph(g), encoding="utf-8")


def dumps_graph(g: SparseGraph) -> str:
    lines = [f"{g.n} {g.m_bound} {1 if g.directed else 0}"]
    for v in range(1, g.n + 1):
        nbrs = " ".join(map(str, g.adj[v]))
        lines.append(f"{v}: {nbrs}" if nbrs else f"{v}:")
    return "\n".join(lines) + "\n"


def load_graph(path) -> SparseGraph:
    return loads_graph(Path(path).read_text(encoding="utf-8"))


def loads_graph(text: str) -> SparseGraph:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError(1, "empty file")
    head = lines[0].split()
    if len(head) != 3 or not all(tok.lstrip("-").isdigit() for tok in head):
        raise GraphFormatError(1, "header must be 'n m_bound d'")
    n, m_bound, d = map(int, head)
    if n < 1 or m_bound < 0 or d not in (0, 1):
        raise GraphFormatError(1, "bad header values")
    directed = d == 1
    body = [ln for ln in lines[1:]]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != n:
        raise GraphFormatError(len(lines), f"expected {n} vertex lines, found {len(body)}")
    adj: list[tuple[int, ...]] = [()]
    total = 0
    for idx, line in enumerate(body, start=2):
        label, sep, rest = line.partition(":")
        if not sep or not label.strip().isdigit() or int(label) != idx - 1:
            raise GraphFormatError(idx, f"expected '{idx - 1}: ...'")
        try:
            nbrs = tuple(int(tok) for tok in rest.split())
        except ValueError:
            raise GraphFormatError(idx, "non-integer neighbor") from None
        for j, u in enumerate(nbrs):
            if not 1 <= u <= n:
                raise GraphFormatError(idx, f"neighbor {u} out of range")
            if u == idx - 1:
                raise GraphFormatError(idx, "self-loop")
            if j and nbrs[j - 1] >= u:
                raise GraphFormatError(idx, "neighbor list not strictly ascending")
        total += len(nbrs)
        adj.append(nbrs)
    if not directed:
        for v in range(1, n + 1):
            for u in adj[v]:
                lst = adj[u]
                i = bisect_left(lst, v)
                if i == len(lst) or lst[i] != v:
                    raise GraphFormatError(v + 1, f"edge ({v},{u}) not listed by {u}")
        total //= 2
    if total > m_bound:
        raise GraphFormatError(1, f"{total} edges exceed m_bound {m_bound}")
    if m_bound < n:
        raise GraphFormatError(1, "m_bound must be at least n")
    return SparseGraph(n, m_bound, adj, directed=directed)
