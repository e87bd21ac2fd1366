import random
from collections import deque

import pytest

from locrecon import exact as ex
from locrecon.connect import ConnConfig, Connected, ModConnected, leader_in_ball
from locrecon.graph import OracleHandle, SparseGraph
from locrecon.rand import RandomSource
from locrecon.recon import DegenerateQuery, added_edge_count
from locrecon.supernodes import ConfigError

from conftest import components_graph, random_graph


def plain_leader(g, rank, w, cap):
    """Full truncated BFS, no early exit."""
    seen, order, q = {w}, [w], deque([w])
    while q and len(order) < cap:
        x = q.popleft()
        for y in g.adj[x]:
            if y not in seen and len(order) < cap:
                seen.add(y)
                order.append(y)
                q.append(y)
    return min(order, key=rank.rank) == w


def test_bfs_cap_formula():
    assert ConnConfig(eps=0.05, alpha=1, delta=0.2).bfs_cap(2000) == 106
    with pytest.raises(ConfigError):
        ConnConfig(eps=0.001, alpha=1, delta=0.1).bfs_cap(2000)


def test_two_triangles(two_triangles):
    r = Connected(two_triangles, ConnConfig(eps=0.5, alpha=1, delta=1, seed=11))
    assert r.K >= 3
    w = min((4, 5, 6), key=r.rank.rank)
    for x in (4, 5, 6):
        assert r.query(x, 1) == (1 if x == w else 0)
    assert r.query(1, 2) == 1


def test_existing_edges_and_symmetry():
    g = components_graph([5, 7, 3, 9], 40, seed=2)
    r = Connected(g, ConnConfig(eps=0.2, alpha=1, delta=0.5, seed=3))
    for u in range(1, g.n + 1):
        for v in range(u + 1, g.n + 1):
            assert r.edge(u, v) == r.edge(v, u)
            if g.has_edge(u, v):
                assert r.edge(u, v)


def test_degenerate_queries():
    r = Connected(random_graph(10, 10, 1), ConnConfig(eps=0.5, alpha=1, delta=1))
    with pytest.raises(DegenerateQuery):
        r.edge(1, 1)
    with pytest.raises(DegenerateQuery):
        r.edge(0, 3)


def test_leader_early_exit_matches_full_bfs():
    g = components_graph([60, 40, 5, 5, 1], 200, seed=4)
    cap = 30
    for seed in range(5):
        rank = RandomSource(seed)
        h = OracleHandle(g)
        for w in range(1, g.n + 1):
            assert leader_in_ball(h, rank, w, cap) == plain_leader(g, rank, w, cap)


def test_global_simulation_component_of_size_2k():
    cfg = ConnConfig(eps=0.1, alpha=1, delta=0.5, seed=9)
    K = cfg.bfs_cap(200)
    g = components_graph([2 * K], 200, seed=1)
    r = Connected(g, cfg)
    free = [w for w in range(2, g.n + 1) if not g.has_edge(w, 1)]
    got = sum(r.query(w, 1) for w in free)
    want = sum(plain_leader(g, r.rank, w, K) for w in free)
    assert got == want


@pytest.mark.parametrize("seed", range(50))
def test_always_connected(seed):
    rng = random.Random(seed)
    sizes = [rng.randint(1, 12) for _ in range(rng.randint(2, 25))]
    n = sum(sizes)
    g = components_graph(sizes, max(2 * n, 100), seed)
    r = Connected(g, ConnConfig(eps=0.1, alpha=1, delta=0.5, seed=seed))
    assert ex.is_connected(r.materialize())
    m = ModConnected(g, ConnConfig(eps=0.1, alpha=1, delta=0.5, seed=seed, c=0.1))
    assert ex.is_connected(m.materialize())


def test_query_budget_per_call():
    g = components_graph([300, 200, 50] + [3] * 30, 1500, seed=5)
    r = Connected(g, ConnConfig(eps=0.05, alpha=1, delta=0.5, seed=1))
    rng = random.Random(0)
    for _ in range(2000):
        u, v = rng.sample(range(1, g.n + 1), 2)
        r.edge(u, v)
        assert r.last_query_cost <= 2 * r.K + 2


def test_mod_chain_and_assignment():
    g = components_graph([10] * 10, 200, seed=3)
    r = ModConnected(g, ConnConfig(eps=0.2, alpha=1, delta=0.5, seed=2, c=0.1))
    assert r.n0 == 10
    for i in range(1, 10):
        assert r.query(i, i + 1) == 1
    for x in range(11, 101):
        for w in range(1, 11):
            if w != r.h(x) and not g.has_edge(x, w):
                assert r.query(x, w) == 0


def test_mod_added_edges_bound():
    sizes = [4] * 30 + [80]
    g = components_graph(sizes, 400, seed=8)
    cfg = ConnConfig(eps=0.1, alpha=1, delta=0.2, c=0.05)
    K, j = cfg.bfs_cap(400), len(sizes)
    good = 0
    for seed in range(200):
        r = ModConnected(g, ConnConfig(eps=0.1, alpha=1, delta=0.2, seed=seed, c=0.05))
        added = added_edge_count(g, r.materialize())
        good += added <= j + (g.n - r.n0) / K / 0.2 + r.n0 - 1
    assert good >= 200 * 0.8


def test_neighbor_oracle_shape():
    g = components_graph([7] * 20, 300, seed=6)
    r = ModConnected(g, ConnConfig(eps=0.1, alpha=1, delta=0.5, seed=4, c=0.1))
    o = r.neighbor_oracle()
    for v in range(1, g.n + 1):
        lst = o.neighbor_list(v)
        base = list(g.adj[v])
        assert lst[:len(base)] == base
        assert lst[len(base):] == sorted(lst[len(base):])
        if v > r.n0:
            assert o.degree(v) - g.degree(v) in (0, 1)
        else:
            assert o.degree(v) <= g.degree(v) + 10 + 2


def test_materializations_agree():
    g = components_graph([5] * 20 + [30, 40], 300, seed=12)
    for cls, cfg in ((Connected, ConnConfig(eps=0.1, alpha=1, delta=0.5, seed=1)),
                     (ModConnected, ConnConfig(eps=0.1, alpha=1, delta=0.5, seed=1, c=0.1))):
        r = cls(g, cfg)
        a = r.materialize(all_pairs=True)
        assert a == r.materialize() == r.materialize_via_neighbors()
