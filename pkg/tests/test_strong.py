import random

import pytest

from locrecon import exact as ex
from locrecon.graph import OracleHandle, SparseGraph
from locrecon.strong import (StrongConnConfig, StronglyConnected, in_small_sink,
                             in_small_source, tarjan_scc)
from locrecon.supernodes import ConfigError

from conftest import random_graph


def dg(n, arcs, m=None):
    return SparseGraph.from_edges(n, arcs, m or max(n, len(arcs)), directed=True)


def test_search_cap():
    assert StrongConnConfig(eps=0.05, alpha=1, delta=0.2).search_cap(1600) == 229
    with pytest.raises(ConfigError):
        StrongConnConfig(eps=0.01, alpha=1, delta=0.1).search_cap(100)


def test_small_sink_cycle():
    g = dg(5, [(1, 2), (2, 3), (3, 1), (4, 1), (5, 4)])
    h = OracleHandle(g)
    assert in_small_sink(h, 1, 4)
    assert not in_small_sink(h, 5, 10)        # reaches the cycle, not closed
    assert in_small_source(h, 5, 10)


def test_long_path_hits_cap():
    K = 6
    g = dg(K + 2, [(i, i + 1) for i in range(1, K + 2)])
    assert not in_small_sink(OracleHandle(g), 1, K)


def test_two_two_cycles():
    g = dg(4, [(1, 2), (2, 1), (3, 4), (4, 3), (1, 3)])
    h = OracleHandle(g)
    assert in_small_sink(h, 3, 10) and not in_small_source(h, 3, 10)
    assert in_small_source(h, 1, 10) and not in_small_sink(h, 1, 10)


def test_tarjan_matches_exact():
    for seed in range(20):
        g = random_graph(25, 40, seed, directed=True)
        comps = tarjan_scc(range(1, 26), {v: list(g.adj[v]) for v in range(1, 26)})
        assert len(comps) == ex.scc_decompose(g).count


def test_two_triangles():
    g = dg(7, [(2, 3), (3, 4), (4, 2), (5, 6), (6, 7), (7, 5)], 20)
    for seed in range(10):
        r = StronglyConnected(g, StrongConnConfig(eps=0.5, alpha=1, delta=0.5, seed=seed))
        assert r.K >= 4
        for tri in ((2, 3, 4), (5, 6, 7)):
            w = min(tri, key=r.rank.rank)
            assert [r.query(x, 1) for x in tri] == [int(x == w) for x in tri]
            assert [r.query(1, x) for x in tri] == [int(x == w) for x in tri]
        assert ex.is_strongly_connected(r.materialize())


def test_star_into_sink():
    n = 12
    g = dg(n, [(x, 2) for x in range(3, n + 1)], 40)
    r = StronglyConnected(g, StrongConnConfig(eps=0.5, alpha=1, delta=0.5, seed=3))
    G = r.materialize()
    assert ex.is_strongly_connected(G)
    assert G.has_edge(2, 1)


@pytest.mark.parametrize("seed", range(20))
def test_always_strongly_connected(seed):
    g = random_graph(60, 70, seed, m_bound=200, directed=True)
    r = StronglyConnected(g, StrongConnConfig(eps=0.2, alpha=1, delta=0.5, seed=seed))
    G = r.materialize()
    assert ex.is_strongly_connected(G)
    assert g.edge_set() <= G.edge_set()
    assert all(1 in (u, v) for u, v in G.edge_set() - g.edge_set())


def test_query_budget_linear_in_cap():
    g = random_graph(200, 260, 1, m_bound=400, directed=True)
    r = StronglyConnected(g, StrongConnConfig(eps=0.2, alpha=1, delta=0.5, seed=1))
    rng = random.Random(1)
    for _ in range(500):
        u, v = rng.sample(range(1, 201), 2)
        if rng.random() < 0.5:
            u = 1
        r.edge(u, v)
        assert r.last_query_cost <= 8 * r.K + 8


def test_materializations_agree():
    g = random_graph(80, 100, 7, m_bound=200, directed=True)
    r = StronglyConnected(g, StrongConnConfig(eps=0.2, alpha=1, delta=0.5, seed=2))
    assert r.materialize(all_pairs=True) == r.materialize() == r.materialize_via_neighbors()
