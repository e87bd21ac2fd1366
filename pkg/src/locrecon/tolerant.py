"""Tolerant testing on top of a local reconstructor.

``tolerant_tester`` estimates how far the reconstructor moved the input,
rejects if that is too far, and otherwise runs an ordinary tester against the
reconstructed graph's neighbor oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from . import exact as ex
from .graph import GraphError, SparseGraph
from .rand import RandomSource
from .recon import Reconstructor
from .supernodes import ConfigError


class EstimatorUnsound(GraphError):
    """The reconstructor does not confine additions to super-node pairs."""


@dataclass
class TesterSpec:
    prop: str
    procedure: Callable           # (oracle, eps, seed) -> bool
    psi: Callable = field(default=lambda s: s)
    budget: Callable | None = None   # (n, m, eps, maxdeg) -> query count
    sublinear: bool = True


@dataclass(frozen=True)
class ToleranceParams:
    eps1: float
    eps2: float
    beta: float
    s: int | None = None
    mode: str = "structured"      # or "uniform-pair"

    def __post_init__(self):
        if self.eps1 > self.eps2:
            raise ConfigError("eps1 must not exceed eps2")
        if self.beta <= 0:
            raise ConfigError("beta must be positive")
        if self.mode not in ("structured", "uniform-pair"):
            raise ConfigError(f"unknown estimator mode {self.mode!r}")


@dataclass
class TolerantResult:
    accept: bool
    estimate: float
    stage: str                    # "estimate" or "tester"
    queries: int = 0


# -- connectivity tester ------------------------------------------------------

def tester_sizes(n: int, m: int, eps: float) -> tuple[int, int]:
    """(samples, component-size cap) for the small-component sampler."""
    if eps * m <= 2:
        raise ConfigError(f"eps*m = {eps * m:.4g} must exceed 2")
    B = math.ceil(2 * n / (eps * m))
    return math.ceil(3 * 2 * n / (eps * m)), B


def connectivity_budget(n, m, eps, maxdeg) -> int:
    s, B = tester_sizes(n, m, eps)
    return s * (B + 1) * (maxdeg + 1)


class ConnectivityTester:
    """Reject iff a BFS from a sampled vertex closes a component of size <= B.

    One-sided: a connected graph is never rejected.  ``max_degree`` records
    the largest degree probed so the query count can be checked against
    ``connectivity_budget``.
    """

    def __init__(self):
        self.max_degree = 0
        self.queries = 0

    def __call__(self, oracle, eps: float, seed: int = 0) -> bool:
        n, m = oracle.n, oracle.m_bound
        s, B = tester_sizes(n, m, eps)
        src = RandomSource(seed, "tester")
        start = oracle.queries
        self.max_degree = 0
        verdict = True
        for i in range(s):
            v = min(n, 1 + int(src.value(i) * n))
            if self._small_component(oracle, v, B):
                verdict = False
                break
        self.queries = oracle.queries - start
        return verdict

    def _small_component(self, oracle, v, B) -> bool:
        seen = {v}
        queue = [v]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            d = oracle.degree(x)
            self.max_degree = max(self.max_degree, d)
            for i in range(1, d + 1):
                y = oracle.neighbor(x, i)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > B:
                        return False
                    queue.append(y)
        return True


def connectivity_tester(oracle, eps: float, seed: int = 0) -> bool:
    return ConnectivityTester()(oracle, eps, seed)


# -- exact reference testers ------------------------------------------------

def read_graph(oracle) -> SparseGraph:
    """Pull every neighbor list through the oracle."""
    n = oracle.n
    adj = [()] + [tuple(sorted(oracle.neighbor_list(v))) for v in range(1, n + 1)]
    directed = getattr(oracle, "directed", False)
    in_adj = None
    if directed:
        in_adj = [()] + [tuple(sorted(oracle.in_neighbor_list(v))) for v in range(1, n + 1)]
    total = sum(len(a) for a in adj)
    m = max(oracle.m_bound, total if directed else total // 2)
    return SparseGraph(n, m, adj, directed=directed, in_adj=in_adj)


def exact_tester(prop: str, k: int = 1, D: int = 1) -> TesterSpec:
    """Full verification of the graph behind the oracle (not sublinear)."""
    def run(oracle, eps, seed=0):
        g = read_graph(oracle)
        if prop == "conn":
            return ex.is_connected(g)
        if prop == "strong":
            return ex.is_strongly_connected(g)
        if prop == "kconn":
            return ex.edge_connectivity(g) >= k
        if prop == "diam":
            return ex.exact_diameter(g) <= D
        raise ConfigError(f"unknown property {prop!r}")
    return TesterSpec(prop, run, sublinear=False)


def connectivity_spec() -> TesterSpec:
    return TesterSpec("conn", connectivity_tester, budget=connectivity_budget)


# -- distance estimation ----------------------------------------------------

def structured_samples(k_max: int, beta: float, n: int, m: int) -> int:
    return math.ceil(8 * k_max ** 2 * math.log(12) / beta ** 2) * math.ceil(n / m) ** 2


def _check_structure(recon):
    try:
        sup = recon.supernodes
        recon.partners(sup.stop if sup.stop <= recon.n else recon.n)
    except NotImplementedError as err:
        raise EstimatorUnsound(f"{type(recon).__name__} does not expose its super-node "
                               "structure") from err
    return sup


def estimate_reconstruction_distance(g: SparseGraph, recon: Reconstructor,
                                     params: ToleranceParams, seed: int = 0) -> float:
    """Estimate dist(G, G~) from a sample of oracle answers."""
    n, m = g.n, g.m_bound
    src = RandomSource(seed, "estimator")
    if params.mode == "uniform-pair":
        s = params.s or math.ceil(8 * math.log(12) / params.beta ** 2)
        diff = 0
        for i in range(s):
            u = min(n, 1 + int(src.value(i, 0) * n))
            v = min(n - 1, 1 + int(src.value(i, 1) * (n - 1)))
            if v >= u:
                v += 1
            if recon.edge(u, v) != g.has_edge(u, v):
                diff += 1
        pairs = n * (n - 1) if g.directed else n * (n - 1) // 2
        return diff / s * pairs / m

    sup = _check_structure(recon)
    lo = sup.stop
    free = n - lo + 1
    fixed = recon.supernode_block_added()
    if free <= 0:
        return fixed / m
    k_max = recon.k_max
    s = params.s or structured_samples(k_max, params.beta, n, m)
    cache: dict[int, int] = {}
    total = 0
    for i in range(s):
        u = lo + min(free - 1, int(src.value(i) * free))
        c = cache.get(u)
        if c is None:
            c = 0
            for p in recon.partners(u):
                arcs = ((u, p), (p, u)) if g.directed else ((u, p),)
                for a, b in arcs:
                    if recon.edge(a, b) and not g.has_edge(a, b):
                        c += 1
            cache[u] = c
        total += c
    return free * total / s / m + fixed / m


def tolerant_tester(g: SparseGraph, recon: Reconstructor, tester: TesterSpec,
                    params: ToleranceParams, eps_prime: float, seed: int = 0) -> TolerantResult:
    est = estimate_reconstruction_distance(g, recon, params, seed)
    if est > params.eps2 + params.beta / 2:
        return TolerantResult(False, est, "estimate", recon.handle.queries)
    oracle = recon.neighbor_oracle()
    ok = tester.procedure(oracle, eps_prime, seed)
    return TolerantResult(bool(ok), est, "tester", recon.handle.queries)
