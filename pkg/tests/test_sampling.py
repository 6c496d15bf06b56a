import numpy as np
import pytest

import vcne
from conftest import random_graph
from vcne.sampling import SamplerConfig, sample_negative_graph


def cfg(**kw):
    return SamplerConfig(**{"negative_ratio": 1.0, "seed": 0, **kw})


class TestSampleNegativeGraph:
    def test_forced_target_by_exclusion(self):
        # vertex 0 adjacent only to 1; the single negative must be vertex 2
        g = vcne.from_pairs(3, [[0, 1]])
        neg = sample_negative_graph(g, cfg(), iteration=0)
        for_zero = neg.src[neg.dst == 0]
        assert len(for_zero) == 1
        assert for_zero[0] == 2

    def test_total_count_matches_degree_sum(self):
        rng = np.random.default_rng(4)
        g = random_graph(rng, 30, 60)
        neg = sample_negative_graph(g, cfg(), iteration=3)
        assert neg.num_edges == g.degrees.sum()

    def test_ratio_scales_counts(self):
        g = vcne.from_pairs(10, [[0, i] for i in range(1, 9)])
        neg = sample_negative_graph(g, cfg(negative_ratio=2.0), iteration=0)
        assert np.sum(neg.dst == 0) == 16

    def test_deterministic_per_iteration(self):
        rng = np.random.default_rng(5)
        g = random_graph(rng, 25, 50)
        a = sample_negative_graph(g, cfg(seed=9), iteration=7)
        b = sample_negative_graph(g, cfg(seed=9), iteration=7)
        assert np.array_equal(a.src, b.src) and np.array_equal(a.dst, b.dst)
        c = sample_negative_graph(g, cfg(seed=9), iteration=8)
        assert not np.array_equal(a.src, c.src)

    def test_all_weights_minus_one(self):
        rng = np.random.default_rng(6)
        g = random_graph(rng, 20, 40)
        neg = sample_negative_graph(g, cfg(), iteration=0)
        assert np.all(neg.weight == -1.0)

    def test_exclusion_avoids_true_neighbors(self):
        rng = np.random.default_rng(7)
        g = random_graph(rng, 40, 100)
        for it in range(5):
            neg = sample_negative_graph(g, cfg(), iteration=it)
            assert not np.any(neg.src == neg.dst)
            assert not np.any(g.contains_pairs(np.minimum(neg.src, neg.dst),
                                               np.maximum(neg.src, neg.dst)))

    def test_exclusion_off_allows_neighbors(self):
        g = vcne.from_pairs(3, [[0, 1], [0, 2]])
        hits = 0
        for it in range(50):
            neg = sample_negative_graph(g, cfg(exclude_true_neighbors=False), it)
            hits += np.any(g.contains_pairs(np.minimum(neg.src, neg.dst),
                                            np.maximum(neg.src, neg.dst)))
        assert hits > 0

    def test_isolated_vertices_get_no_negatives(self):
        g = vcne.from_pairs(5, [[0, 1]])
        neg = sample_negative_graph(g, cfg(), iteration=0)
        assert not np.any(neg.dst >= 2)

    def test_tiny_graph_rejected(self):
        g = vcne.empty_graph(1)
        with pytest.raises(ValueError, match="2 vertices"):
            sample_negative_graph(g, cfg(), iteration=0)

    def test_invalid_ratio(self):
        with pytest.raises(ValueError):
            SamplerConfig(negative_ratio=0.0)


class TestUniformity:
    def test_chi_squared_sanity(self):
        # 100-vertex graph, fixed vertex, 10k draws across iterations
        n = 100
        g = vcne.from_pairs(n, [[0, i] for i in range(1, 11)])  # degree(0) = 10
        counts = np.zeros(n, dtype=np.int64)
        draws = 0
        it = 0
        while draws < 10000:
            neg = sample_negative_graph(g, cfg(seed=11), iteration=it)
            for j in neg.src[neg.dst == 0]:
                counts[j] += 1
                draws += 1
            it += 1
        eligible = np.array([v for v in range(1, n) if not g.has_undirected_edge(0, v)])
        assert counts[0] == 0
        assert counts[[v for v in range(1, 11)]].sum() == 0
        k = len(eligible)
        p = 1.0 / k
        expected = draws * p
        se = np.sqrt(draws * p * (1 - p))
        assert np.all(np.abs(counts[eligible] - expected) <= 5 * se)
        chi2 = np.sum((counts[eligible] - expected) ** 2 / expected)
        dof = k - 1
        assert chi2 < dof + 5 * np.sqrt(2 * dof)
