import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from locrecon import exact as ex
from locrecon.graph import SparseGraph

from conftest import random_graph


def complete(n):
    return SparseGraph.from_edges(n, itertools.combinations(range(1, n + 1), 2), n * n)


def cycle(n):
    return SparseGraph.from_edges(n, [(i, i % n + 1) for i in range(1, n + 1)], n)


def to_nx(g):
    h = nx.DiGraph() if g.directed else nx.Graph()
    h.add_nodes_from(range(1, g.n + 1))
    h.add_edges_from(g.edges())
    return h


def test_k5_and_c5():
    assert ex.edge_connectivity(complete(5)) == 4
    assert ex.brute_force_min_cut(complete(5)) == 4
    assert ex.exact_diameter(complete(5)) == 1
    assert ex.edge_connectivity(cycle(5)) == 2
    assert ex.exact_diameter(cycle(5)) == 2


def test_disconnected():
    g = SparseGraph.from_edges(4, [(1, 2), (3, 4)], 4)
    assert ex.edge_connectivity(g) == 0
    assert ex.exact_diameter(g) == math.inf
    assert ex.distance_to_connectivity(g).differing_pairs == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 14), st.integers(0, 40), st.integers(0, 10 ** 6))
def test_edge_connectivity_matches_networkx_and_brute_force(n, e, seed):
    e = min(e, n * (n - 1) // 2)
    g = random_graph(n, e, seed)
    h = to_nx(g)
    want = nx.edge_connectivity(h) if nx.is_connected(h) else 0
    assert ex.edge_connectivity(g) == want
    assert ex.brute_force_min_cut(g) == want


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 30), st.integers(0, 60), st.integers(0, 10 ** 6))
def test_components_and_diameter_match_networkx(n, e, seed):
    e = min(e, n * (n - 1) // 2)
    g = random_graph(n, e, seed)
    h = to_nx(g)
    assert len(ex.connected_components(g)) == nx.number_connected_components(h)
    want = nx.diameter(h) if nx.is_connected(h) else math.inf
    assert ex.exact_diameter(g) == want


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 30), st.integers(0, 80), st.integers(0, 10 ** 6))
def test_scc_matches_networkx(n, e, seed):
    e = min(e, n * (n - 1))
    g = random_graph(n, e, seed, directed=True)
    h = to_nx(g)
    dec = ex.scc_decompose(g)
    assert dec.count == nx.number_strongly_connected_components(h)
    cond = nx.condensation(h)
    assert dec.sources == sum(1 for v in cond if cond.in_degree(v) == 0)
    assert dec.sinks == sum(1 for v in cond if cond.out_degree(v) == 0)
    want = 0 if dec.count == 1 else max(dec.sources, dec.sinks)
    assert ex.distance_to_strong_connectivity(g).differing_pairs == want


def test_scc_two_cycles():
    g = SparseGraph.from_edges(4, [(1, 2), (2, 1), (3, 4), (4, 3), (2, 3)], 5, directed=True)
    dec = ex.scc_decompose(g)
    assert dec.count == 2 and dec.sources == 1 and dec.sinks == 1
    assert not ex.is_strongly_connected(g)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_power_graph_matches_networkx(d):
    g = random_graph(25, 30, d)
    p = ex.power_graph(g, d)
    lengths = dict(nx.all_pairs_shortest_path_length(to_nx(g), cutoff=d))
    for u in range(1, 26):
        assert set(p.adj[u]) == {v for v in lengths[u] if v != u}


def test_power_graph_complete_iff_small_diameter():
    g = cycle(7)
    assert ex.power_graph(g, 3).num_edges == 21
    assert ex.power_graph(g, 2).num_edges < 21


def test_extreme_sets_k4():
    assert ex.enumerate_extreme_sets(complete(4), 3) == [frozenset({v}) for v in range(1, 5)]


def test_extreme_sets_c4_pendant():
    g = SparseGraph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 5)], 5)
    assert ex.enumerate_extreme_sets(g, 1) == [frozenset({1, 2, 3, 4}), frozenset({5})]
    assert ex.enumerate_extreme_sets(g, 2) == [frozenset({2}), frozenset({3}), frozenset({4})]


def test_extreme_sets_brute_force_definition():
    g = random_graph(9, 12, 4)

    def deg(s):
        return sum(1 for u in s for v in g.adj[u] if v not in s)

    for ell in range(4):
        want = []
        for r in range(1, 10):
            for combo in itertools.combinations(range(1, 10), r):
                s = set(combo)
                if deg(s) != ell:
                    continue
                if all(deg(set(w)) > ell for q in range(1, r)
                       for w in itertools.combinations(combo, q)):
                    want.append(frozenset(s))
        assert sorted(ex.enumerate_extreme_sets(g, ell), key=sorted) == sorted(want, key=sorted)


def test_singleton_and_component_extremeness():
    g = SparseGraph.from_edges(5, [(1, 2), (2, 3), (4, 5)], 5)
    nb = lambda v: g.adj[v]
    assert ex.is_extreme_set([2], 2, nb)
    assert not ex.is_extreme_set([2], 1, nb)
    assert ex.is_extreme_set([1, 2, 3], 0, nb)
    assert not ex.is_extreme_set([1, 2, 3, 4, 5], 0, nb)


def test_max_independent_set():
    assert ex.max_independent_set_size(cycle(7)) == 3
    assert ex.max_independent_set_size(complete(6)) == 1
    with pytest.raises(ex.SizeLimitError):
        ex.max_independent_set_size(cycle(21))
