import math

import pytest

from locrecon.connect import ConnConfig, ModConnected
from locrecon.generators import corrupt, generate
from locrecon.graph import OracleHandle
from locrecon.recon import Reconstructor
from locrecon.strong import StrongConnConfig, StronglyConnected
from locrecon.supernodes import ConfigError
from locrecon.tolerant import (ConnectivityTester, EstimatorUnsound, ToleranceParams,
                               connectivity_budget, connectivity_spec, connectivity_tester,
                               estimate_reconstruction_distance, exact_tester,
                               structured_samples, tolerant_tester)
from locrecon.tolerant import tester_sizes as sizes

from conftest import components_graph, random_graph


def test_sizes_and_errors():
    assert sizes(1000, 2000, 0.05) == (60, 20)
    with pytest.raises(ConfigError):
        sizes(100, 40, 0.05)
    with pytest.raises(ConfigError):
        ToleranceParams(0.05, 0.02, 0.01)
    with pytest.raises(ConfigError):
        ToleranceParams(0.01, 0.02, 0.0)
    with pytest.raises(ConfigError):
        ToleranceParams(0.01, 0.02, 0.01, mode="bogus")


def test_sample_count_scales_inverse_square():
    a = structured_samples(2, 0.02, 2000, 4000)
    b = structured_samples(2, 0.01, 2000, 4000)
    assert b == pytest.approx(4 * a, rel=1e-3)
    assert structured_samples(1, 0.02, 2000, 4000) == math.ceil(8 * math.log(12) / 0.02 ** 2)


@pytest.mark.parametrize("seed", range(5))
def test_connected_always_accepted(seed):
    g = generate("connected", 400, 800, 300, seed)
    assert connectivity_tester(OracleHandle(g), 0.05, seed)


def test_rejects_many_small_components():
    n, m, eps = 1000, 2000, 0.05
    singles = int(eps * m) + 2
    g = components_graph([n - singles] + [1] * singles, m, seed=4)
    rejected = sum(not connectivity_tester(OracleHandle(g), eps, s) for s in range(300))
    p, sigma = 2 / 3, math.sqrt(2 / 3 * 1 / 3 / 300)
    assert rejected / 300 >= p - 3 * sigma


def test_query_budget():
    n, m, eps = 600, 1200, 0.05
    g = components_graph([500] + [3] * 20 + [1] * 40, m, seed=1)
    for seed in range(20):
        t = ConnectivityTester()
        t(OracleHandle(g), eps, seed)
        assert t.queries <= connectivity_budget(n, m, eps, t.max_degree)


def test_exact_testers():
    g = random_graph(30, 80, 2, m_bound=100)
    spec = exact_tester("conn")
    assert not spec.sublinear
    h = OracleHandle(g)
    from locrecon import exact as ex
    assert spec.procedure(h, 0.1) == ex.is_connected(g)
    assert exact_tester("kconn", k=1).procedure(OracleHandle(g), 0.1) == ex.is_connected(g)


class ChainOnly(ModConnected):
    def is_leader(self, x):
        return False


def test_chain_only_estimate_is_exact():
    g = generate("connected", 500, 1000, 500, 3)
    r = ChainOnly(g, ConnConfig(eps=0.05, delta=0.2, c=0.02, seed=1))
    G = r.materialize()
    chain = sum(1 for a in range(1, r.n0) if not g.has_edge(a, a + 1))
    assert len(G.edge_set() ^ g.edge_set()) == chain
    est = estimate_reconstruction_distance(g, r, ToleranceParams(0.0, 0.1, 0.05))
    assert est == chain / g.m_bound


class Identity(Reconstructor):
    def _decide(self, u, v):
        return self.handle.has_edge(u, v)

    @property
    def supernodes(self):
        return range(1, 2)

    def partners(self, x):
        return (1,)

    def added_candidates(self, w):
        return ()


class Bare(Reconstructor):
    def _decide(self, u, v):
        return self.handle.has_edge(u, v)


class Spurious(ModConnected):
    """Adds an edge from every other non-super-node to its hash target."""

    def _decide(self, u, v):
        if super()._decide(u, v):
            return True
        x, w = (u, v) if u > v else (v, u)
        return x > self.n0 and x % 2 == 0 and self.h(x) == w


def test_identity_stub_goes_to_tester():
    g = generate("connected", 300, 600, 200, 0)
    r = Identity(g)
    res = tolerant_tester(g, r, connectivity_spec(), ToleranceParams(0.0, 0.01, 0.02), 0.05)
    assert res.accept and res.stage == "tester" and res.estimate == 0


def test_spurious_edges_rejected():
    g = generate("connected", 600, 1200, 400, 1)
    params = ToleranceParams(0.02, 0.05, 0.02)
    rejected = 0
    for seed in range(10):
        r = Spurious(g, ConnConfig(eps=0.02, delta=0.2, c=0.02, seed=seed))
        res = tolerant_tester(g, r, connectivity_spec(), params, 0.05, seed)
        rejected += (not res.accept and res.stage == "estimate")
    assert rejected == 10


def test_unstructured_reconstructor_is_unsound():
    g = random_graph(30, 40, 0, m_bound=60)
    with pytest.raises(EstimatorUnsound):
        estimate_reconstruction_distance(g, Bare(g), ToleranceParams(0.0, 0.1, 0.1))
    # the literal pair sampler needs no structure
    est = estimate_reconstruction_distance(g, Bare(g), ToleranceParams(0.0, 0.1, 0.1,
                                                                        mode="uniform-pair"))
    assert est == 0


def test_structured_estimate_close_to_truth():
    g = generate("connected", 1000, 2000, 900, 2)
    h, _ = corrupt(g, "conn", 0.03, 2)
    beta = 0.02
    hits = 0
    for seed in range(20):
        r = ModConnected(h, ConnConfig(eps=0.03, delta=0.2, c=0.01, seed=seed))
        truth = len(r.materialize().edge_set() ^ h.edge_set()) / h.m_bound
        est = estimate_reconstruction_distance(h, r, ToleranceParams(0.0, 0.1, beta), seed)
        hits += abs(est - truth) <= beta / 2
    assert hits >= 17


def test_directed_estimate_counts_both_arcs():
    g = generate("strong", 300, 900, 300, 0)
    h, _ = corrupt(g, "strong", 0.05, 0, sources=3, sinks=3)
    r = StronglyConnected(h, StrongConnConfig(eps=0.05, delta=0.2, seed=0))
    G = r.materialize()
    added = len(G.edge_set() - h.edge_set())
    est = estimate_reconstruction_distance(h, r, ToleranceParams(0.0, 0.1, 0.02,
                                                                 s=100000), 0)
    assert est == pytest.approx(added / h.m_bound, abs=0.01)
