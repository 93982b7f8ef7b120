import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from streamcc import (
    CappedRankQueue,
    Clustering,
    InvalidInstanceError,
    ParameterError,
    Permutation,
    PositiveGraph,
)


class TestPermutation:
    def test_single_vertex(self):
        pi = Permutation.from_seed(1, 12345)
        assert pi.rank == [1]
        assert pi.inverse(1) == 0

    def test_determinism(self):
        a = Permutation.from_seed(3, 7)
        b = Permutation.from_seed(3, 7)
        assert a.rank == b.rank
        assert a == b

    def test_round_trip(self):
        pi = Permutation.from_seed(40, 99)
        for v in range(40):
            assert pi.inverse(pi.rank[v]) == v

    def test_n_zero_rejected(self):
        with pytest.raises(InvalidInstanceError):
            Permutation.from_seed(0, 1)

    def test_bad_order_rejected(self):
        with pytest.raises(InvalidInstanceError):
            Permutation([0, 0, 2])

    def test_uniform_over_all_permutations(self):
        # n=4 has 24 permutations; 10k seeds should hit each about 1/24 of
        # the time, within 3 sigma of binomial noise per cell.
        n_seeds = 10_000
        counts = {}
        for seed in range(n_seeds):
            key = tuple(Permutation.from_seed(4, seed).order)
            counts[key] = counts.get(key, 0) + 1
        assert len(counts) == 24
        p = 1 / 24
        sigma = (n_seeds * p * (1 - p)) ** 0.5
        for key, c in counts.items():
            assert abs(c - n_seeds * p) <= 3 * sigma, (key, c)


class TestCappedRankQueue:
    def test_insert_below_capacity(self):
        q = CappedRankQueue(2)
        q.insert(0, 1)
        q.insert(1, 3)
        assert q.items() == [(0, 1), (1, 3)]

    def test_eviction_of_worst_rank(self):
        q = CappedRankQueue(2)
        q.insert(0, 1)
        q.insert(1, 3)
        q.insert(2, 2)  # rank 3 is now the worst and goes
        assert q.items() == [(0, 1), (2, 2)]

    def test_dominated_insert_is_dropped(self):
        q = CappedRankQueue(2)
        q.insert(0, 1)
        q.insert(1, 2)
        q.insert(2, 5)
        assert q.items() == [(0, 1), (1, 2)]

    def test_duplicate_insert_is_noop(self):
        q = CappedRankQueue(3)
        q.insert(0, 2)
        q.insert(0, 2)
        assert len(q) == 1

    def test_capacity_validation(self):
        with pytest.raises(ParameterError):
            CappedRankQueue(0)

    def test_membership(self):
        q = CappedRankQueue(1)
        q.insert(5, 2)
        assert 5 in q
        q.insert(6, 1)
        assert 5 not in q and 6 in q

    @given(
        st.integers(min_value=1, max_value=8),
        st.permutations(list(range(30))),
    )
    @settings(max_examples=60, deadline=None)
    def test_kept_set_is_order_independent(self, capacity, ranks):
        # Final kept set must be the `capacity` smallest ranks ever inserted,
        # whatever the insertion order.
        pairs = list(enumerate(ranks))
        random.Random(capacity).shuffle(pairs)
        q = CappedRankQueue(capacity)
        for vertex, rank in pairs:
            q.insert(vertex, rank + 1)
            assert len(q) <= capacity
        expected = sorted(pairs, key=lambda e: e[1])[:capacity]
        assert sorted(q) == sorted((v, r + 1) for v, r in expected)

    def test_many_inserts_leave_exactly_k(self):
        q = CappedRankQueue(4)
        for v in range(200):
            q.insert(v, 200 - v)
        assert len(q) == 4
        assert q.items() == [(199, 1), (198, 2), (197, 3), (196, 4)]


class TestClustering:
    def test_validate_accepts_well_formed(self):
        c = Clustering([0, 0, 2], ["pivot", "member", "singleton"])
        c.validate()
        assert c.num_clusters == 2
        assert c.num_singletons == 1

    def test_validate_rejects_multi_pivot_cluster(self):
        c = Clustering([0, 0], ["pivot", "pivot"])
        with pytest.raises(InvalidInstanceError):
            c.validate()

    def test_validate_rejects_fat_singleton(self):
        c = Clustering([0, 0], ["pivot", "singleton"])
        with pytest.raises(InvalidInstanceError):
            c.validate()

    def test_size_one_pivot_cluster_is_not_singleton(self):
        c = Clustering([0], ["pivot"])
        c.validate()
        assert c.num_singletons == 0

    def test_equality_includes_roles(self):
        a = Clustering([0], ["pivot"])
        b = Clustering([0], ["singleton"])
        assert a != b


class TestPositiveGraph:
    def test_symmetry_and_no_self_loops(self):
        g = PositiveGraph(3, [(0, 1), (1, 1)])
        assert 1 in g.adj[0] and 0 in g.adj[1]
        assert 1 not in g.adj[1]
        assert g.m == 1

    def test_edge_out_of_range(self):
        with pytest.raises(InvalidInstanceError):
            PositiveGraph(2, [(0, 5)])

    def test_edges_are_canonical(self):
        g = PositiveGraph(4, [(2, 0), (3, 1)])
        assert g.edges() == [(0, 2), (1, 3)]
