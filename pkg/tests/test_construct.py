import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from navgraph import (
    DirectedGraph,
    PointSet,
    build_knn_baseline,
    build_permutations,
    build_randomized,
    build_setcover,
    degree_stats,
    euclidean_oracle,
    gen_random_sign_points,
    verify_exhaustive,
    verify_property,
)
from navgraph.construct import auto_m_randomized, auto_m_setcover, hub_bound, random_edge_count
from navgraph.errors import OutOfRange


def _instance(n, d, seed):
    ps = gen_random_sign_points(n, d, seed)
    o = euclidean_oracle(ps)
    return ps, o, build_permutations(ps, o)


def test_randomized_formulas_n100():
    # sqrt(300 ln 100) = 37.17..., 3 * 100 * ln 100 = 1381.55...
    assert auto_m_randomized(100) == 38
    assert random_edge_count(100, 38) == 37


def test_setcover_formulas_n100():
    assert auto_m_setcover(100) == 22
    assert hub_bound(100, 22) == pytest.approx(21.9326, abs=1e-4)


def test_randomized_n2_is_complete():
    ps = PointSet(np.array([[0.0], [1.0]]))
    pt = build_permutations(ps, euclidean_oracle(ps))
    g, report = build_randomized(pt, seed=0, m=1)
    assert g == DirectedGraph.complete(2)
    assert report.saturated


def test_randomized_report_n100():
    ps, o, pt = _instance(100, 32, 0)
    g, report = build_randomized(pt, seed=3)
    assert report.m == 38 and report.random_edges_per_node == 37
    assert report.edge_count == g.edge_count
    assert report.edge_count <= report.m * 100 + 100 * 37
    assert np.all(g.out_degrees() >= 37)


def test_randomized_contains_backbone():
    ps, o, pt = _instance(80, 24, 1)
    m = 12
    g, _ = build_randomized(pt, seed=9, m=m)
    for i in range(80):
        for ell in range(1, m):
            assert g.has_edge(int(pt.perm[i, ell]), i)


def test_randomized_reproducible_and_seed_sensitive():
    ps, o, pt = _instance(150, 32, 2)
    a, _ = build_randomized(pt, seed=42)
    b, _ = build_randomized(pt, seed=42)
    c, _ = build_randomized(pt, seed=43)
    assert a == b
    assert a != c


def test_randomized_n1000_navigable():
    ps, o, pt = _instance(1000, 64, 1)
    g, report = build_randomized(pt, seed=42)
    assert verify_property(g, pt)
    assert report.edge_count <= 2 * math.sqrt(3) * 1000**1.5 * math.sqrt(math.log(1000))


def test_setcover_hub_bound_n100():
    ps, o, pt = _instance(100, 32, 5)
    g, report = build_setcover(pt)
    assert report.m == 22
    assert len(report.hubs) <= 21
    assert verify_property(g, pt)


def test_setcover_m_equals_n_one_hub():
    ps, o, pt = _instance(30, 16, 0)
    g, report = build_setcover(pt, m=30)
    assert report.hubs == [0]  # every node covers everything; smallest id wins


def test_setcover_hubs_cover_every_near_neighborhood():
    ps, o, pt = _instance(200, 32, 6)
    g, report = build_setcover(pt)
    hubs = set(report.hubs)
    for i in range(200):
        assert hubs & set(pt.perm[i, : report.m].tolist())
    for j in range(200):
        assert hubs - {j} <= set(g.adj(j).tolist())


def test_setcover_greedy_order_is_max_coverage():
    ps, o, pt = _instance(60, 16, 4)
    m = 8
    _, report = build_setcover(pt, m=m)
    hoods = [set(pt.perm[i, :m].tolist()) for i in range(60)]
    uncovered = set(range(60))
    for k in report.hubs:
        counts = [sum(1 for i in uncovered if c in hoods[i]) for c in range(60)]
        assert counts[k] == max(counts)
        assert k == counts.index(max(counts))
        uncovered = {i for i in uncovered if k not in hoods[i]}
    assert not uncovered


@given(n=st.integers(2, 60), seed=st.integers(0, 10**6), m_frac=st.floats(0.01, 1.0))
@settings(max_examples=40, deadline=None)
def test_setcover_always_navigable_two_steps(n, seed, m_frac):
    data = np.random.default_rng(seed).normal(size=(n, 4))
    ps = PointSet(data)
    o = euclidean_oracle(ps)
    pt = build_permutations(ps, o)
    m = max(1, min(n, round(m_frac * n)))
    g, report = build_setcover(pt, m=m)
    assert len(report.hubs) <= hub_bound(n, m)
    assert verify_property(g, pt)
    ok, moves, first = verify_exhaustive(g, ps, o)
    assert ok and moves <= 2 and first is None


@pytest.mark.parametrize("n", [50, 200, 600])
def test_setcover_edge_ceiling(n):
    ps, o, pt = _instance(n, 48, n)
    g, report = build_setcover(pt)
    assert report.edge_count <= 2 * n**1.5 * math.sqrt(math.log(n))
    assert report.edge_count <= (report.m - 1) * n + n * (n * math.log(n) / report.m + 1)


def test_setcover_tie_heavy_grid():
    xs, ys = np.meshgrid(np.arange(7.0), np.arange(7.0))
    ps = PointSet(np.column_stack([xs.ravel(), ys.ravel()]))
    o = euclidean_oracle(ps)
    pt = build_permutations(ps, o)
    g, _ = build_setcover(pt)
    assert verify_property(g, pt)
    ok, moves, _ = verify_exhaustive(g, ps, o)
    assert ok and moves <= 2


class TestKnn:
    def test_fig1_k1(self, fig1_perm):
        g = build_knn_baseline(fig1_perm, 1)
        # node 3 has two nearest others at sqrt(5); id 2 wins the tie
        assert g.edges().tolist() == [[0, 1], [1, 0], [2, 3], [3, 2], [4, 3]]
        assert g.edge_count == 5

    def test_complete(self, fig1_perm):
        assert build_knn_baseline(fig1_perm, 4) == DirectedGraph.complete(5)

    def test_out_degree_exactly_k(self):
        ps, o, pt = _instance(50, 16, 3)
        for k in (1, 5, 49):
            assert np.all(build_knn_baseline(pt, k).out_degrees() == k)

    @pytest.mark.parametrize("k", [0, 5])
    def test_out_of_range(self, fig1_perm, k):
        with pytest.raises(OutOfRange):
            build_knn_baseline(fig1_perm, k)


@pytest.mark.parametrize("m", [0, 6])
def test_bad_m(fig1_perm, m):
    with pytest.raises(OutOfRange):
        build_setcover(fig1_perm, m=m)
    with pytest.raises(OutOfRange):
        build_randomized(fig1_perm, seed=0, m=m)


def test_report_json_keys():
    ps, o, pt = _instance(40, 16, 0)
    _, r1 = build_randomized(pt, seed=1)
    _, r2 = build_setcover(pt)
    assert list(r1.to_dict()) == ["method", "n", "m", "random_edges_per_node", "saturated", "edge_count", "avg_degree"]
    assert list(r2.to_dict()) == ["method", "n", "m", "hubs", "edge_count", "avg_degree"]
    assert r2.to_dict()["avg_degree"] == degree_stats(build_setcover(pt)[0]).avg_degree
