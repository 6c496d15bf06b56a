import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import vcne
from vcne.graph import GraphFormatError


def write(tmp_path, text):
    p = tmp_path / "edges.txt"
    p.write_text(text)
    return p


class TestLoadEdgeList:
    def test_path_graph(self, tmp_path):
        g = vcne.load_edge_list(write(tmp_path, "0 1\n1 2\n"))
        assert g.num_vertices == 3
        assert g.num_edges == 4
        assert list(g.degrees) == [1, 2, 1]

    def test_explicit_weight_both_directions(self, tmp_path):
        g = vcne.load_edge_list(write(tmp_path, "0 1 2.5\n"))
        assert g.num_edges == 2
        assert np.all(g.weight == 2.5)

    def test_self_loop_skipped_and_counted(self, tmp_path):
        g = vcne.load_edge_list(write(tmp_path, "0 0\n0 1\n"))
        assert g.num_undirected_edges == 1
        assert g.num_self_loops_skipped == 1

    def test_comments_and_blank_lines(self, tmp_path):
        g = vcne.load_edge_list(write(tmp_path, "# header\n\n0 1\n"))
        assert g.num_edges == 2

    def test_duplicate_keeps_last_weight(self, tmp_path):
        g = vcne.load_edge_list(write(tmp_path, "0 1 1.0\n1 0 3.0\n"))
        assert g.num_undirected_edges == 1
        assert np.all(g.weight == 3.0)

    def test_malformed_line_reports_number(self, tmp_path):
        with pytest.raises(GraphFormatError, match=":2:"):
            vcne.load_edge_list(write(tmp_path, "0 1\n0 x\n"))

    def test_zero_weight_rejected(self, tmp_path):
        with pytest.raises(GraphFormatError, match="zero"):
            vcne.load_edge_list(write(tmp_path, "0 1 0.0\n"))

    def test_sparse_external_ids_densified(self, tmp_path):
        g = vcne.load_edge_list(write(tmp_path, "1000000 7\n7 42\n"))
        assert g.num_vertices == 3
        assert g.remap.dense(1000000) == 0
        assert g.remap.external(2) == 42

    def test_directed_mode(self, tmp_path):
        g = vcne.load_edge_list(write(tmp_path, "0 1\n1 2\n"), undirected=False)
        assert g.num_edges == 2


class TestRemapTable:
    def test_round_trip(self):
        remap = vcne.RemapTable(np.array([99, 5, 17]))
        for dense in range(3):
            assert remap.dense(remap.external(dense)) == dense

    def test_save_load(self, tmp_path):
        remap = vcne.RemapTable(np.array([99, 5, 17]))
        remap.save(tmp_path / "remap.txt")
        loaded = vcne.RemapTable.load(tmp_path / "remap.txt")
        assert np.array_equal(loaded.to_external, remap.to_external)

    def test_duplicate_external_rejected(self):
        with pytest.raises(ValueError):
            vcne.RemapTable(np.array([1, 1]))


class TestPartitionEdges:
    def test_single_partition(self, triangle):
        g = vcne.partition_edges(triangle, 1)
        assert len(g.blocks) == 1
        assert len(g.blocks[0]) == g.num_edges

    @pytest.mark.parametrize("strategy", ["hash-src", "hash-edge"])
    def test_disjoint_cover(self, triangle, strategy):
        g = vcne.partition_edges(triangle, 2, strategy)
        merged = np.sort(np.concatenate(g.blocks))
        assert np.array_equal(merged, np.arange(g.num_edges))

    def test_deterministic(self, triangle):
        a = vcne.partition_edges(triangle, 3)
        b = vcne.partition_edges(triangle, 3)
        for x, y in zip(a.blocks, b.blocks):
            assert np.array_equal(x, y)

    @settings(max_examples=30, deadline=None)
    @given(p=st.integers(1, 8), n_edges=st.integers(0, 30), seed=st.integers(0, 1000))
    def test_partition_property(self, p, n_edges, seed):
        rng = np.random.default_rng(seed)
        from conftest import random_graph
        g = random_graph(rng, 10, n_edges)
        gp = vcne.partition_edges(g, p)
        assert len(gp.blocks) == p
        merged = np.sort(np.concatenate(gp.blocks))
        assert np.array_equal(merged, np.arange(g.num_edges))


class TestUnion:
    def test_identity(self, triangle):
        u = vcne.union(triangle, vcne.empty_graph(3))
        assert u.num_edges == triangle.num_edges

    def test_count_additivity(self, path_graph):
        h = vcne.from_pairs(3, [[0, 2]])
        assert vcne.union(path_graph, h).num_edges == 6

    def test_multiset_keeps_opposite_weights(self):
        g = vcne.from_pairs(2, [[0, 1]], weights=[1.0], undirected=False)
        h = vcne.from_pairs(2, [[0, 1]], weights=[-1.0], undirected=False)
        u = vcne.union(g, h)
        assert u.num_edges == 2
        assert sorted(u.weight) == [-1.0, 1.0]

    def test_vertex_count_mismatch(self, triangle):
        with pytest.raises(ValueError, match="mismatch"):
            vcne.union(triangle, vcne.empty_graph(4))

    def test_associative_on_multisets(self):
        g = vcne.from_pairs(4, [[0, 1]])
        h = vcne.from_pairs(4, [[1, 2]])
        k = vcne.from_pairs(4, [[2, 3]])
        left = vcne.union(vcne.union(g, h), k)
        right = vcne.union(g, vcne.union(h, k))
        to_multiset = lambda x: sorted(zip(x.src, x.dst, x.weight))
        assert to_multiset(left) == to_multiset(right)


class TestDegree:
    def test_path_center(self, path_graph):
        assert path_graph.degree(1) == 2

    def test_isolated_vertex(self):
        g = vcne.from_pairs(3, [[0, 1]])
        assert g.degree(2) == 0

    def test_star_center(self):
        g = vcne.from_pairs(6, [[0, i] for i in range(1, 6)])
        assert g.degree(0) == 5

    def test_out_of_range(self, path_graph):
        with pytest.raises(IndexError):
            path_graph.degree(3)

    def test_degree_sum_is_twice_undirected_edges(self, tmp_path):
        p = tmp_path / "e.txt"
        p.write_text("0 1\n1 2\n2 0\n3 3\n3 0\n")
        g = vcne.load_edge_list(p)
        assert g.degrees.sum() == 2 * g.num_undirected_edges
