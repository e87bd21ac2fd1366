import math

import pytest

from locrecon import exact as ex
from locrecon.graph import SparseGraph
from locrecon.supernodes import (ConfigError, SupernodeLayout, hash_supernodes,
                                 ring_graph_edges)


def test_hash_examples():
    assert hash_supernodes(55, 100, 0.1, 3) == (6, 7, 8)
    assert hash_supernodes(100, 100, 0.1, 3) == (10, 1, 2)


def test_k1_is_first():
    lay = SupernodeLayout(100, 0.1, 1)
    assert all(lay.hash_set(x) == (lay.first(x),) for x in range(11, 101))
    assert lay.first(30) == 3


def test_float_product_rounding():
    # 30 * 0.1 is 3.0000000000000004 in floating point
    assert SupernodeLayout(100, 0.1).first(30) == 3


@pytest.mark.parametrize("n, c, k", [(100, 0.1, 3), (97, 0.13, 2), (500, 0.05, 1), (40, 0.3, 4)])
def test_bucket_inverts_hash(n, c, k):
    lay = SupernodeLayout(n, c, k)
    for w in range(1, lay.n0 + 1):
        want = [x for x in range(lay.n0 + 1, n + 1) if w in lay.hash_set(x)]
        assert lay.bucket(w) == want
        assert len(want) <= math.ceil(k / c)


def test_too_few_supernodes():
    with pytest.raises(ConfigError):
        SupernodeLayout(10, 0.1, 3)
    with pytest.raises(ConfigError):
        SupernodeLayout(10, 1.0)


def test_ring_edges():
    lay = SupernodeLayout(70, 0.1)
    assert lay.n0 == 7
    assert lay.ring_edge(1, 3, 2) and not lay.ring_edge(1, 4, 2)


def test_ring_small_cases():
    g = SparseGraph.from_edges(5, ring_graph_edges(5, 2), 10)
    assert g.num_edges == 10
    assert ex.edge_connectivity(g) == 4
    g = SparseGraph.from_edges(9, ring_graph_edges(9, 2), 18)
    assert ex.edge_connectivity(g) == 4
