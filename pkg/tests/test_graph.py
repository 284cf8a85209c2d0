import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from metanet.errors import EdgeListParseError, MetadataError
from metanet.graph import (Graph, Partition, block_stats, load_edge_list,
                           load_labels)

from tests._helpers import random_graph_partition


class TestLoadEdgeList:
    def test_basic_path(self):
        g = load_edge_list(io.StringIO("a b\nb c"))
        assert g.n_nodes == 3
        assert g.edges.tolist() == [[0, 1], [1, 2]]
        assert g.degree.tolist() == [1, 2, 1]

    def test_duplicates_collapse(self):
        g = load_edge_list(io.StringIO("a b\nb a\na b"))
        assert g.n_edges == 1
        assert g.edges.tolist() == [[0, 1]]

    def test_comments_skipped(self):
        g = load_edge_list(io.StringIO("# comment\nx y"))
        assert g.n_nodes == 2
        assert g.n_edges == 1

    def test_malformed_line_reports_lineno(self):
        with pytest.raises(EdgeListParseError, match="line 2"):
            load_edge_list(io.StringIO("a b\na b c"))

    def test_self_loop_rejected(self):
        with pytest.raises(EdgeListParseError, match="self-loop"):
            load_edge_list(io.StringIO("a a"))

    def test_first_appearance_indexing(self):
        g = load_edge_list(io.StringIO("z y\ny x"))
        assert g.node_names == ("z", "y", "x")

    def test_round_trip(self):
        g = load_edge_list(io.StringIO("a b\nb c\nc d\na d"))
        buf = io.StringIO()
        g.write_edge_list(buf)
        buf.seek(0)
        assert load_edge_list(buf) == g


class TestLoadLabels:
    def test_basic(self, path_graph):
        p = load_labels(io.StringIO("a red\nb blue\nc red"), path_graph)
        assert p.assignment.tolist() == [0, 1, 0]
        assert p.k_groups == 2
        assert p.label_names == ("red", "blue")

    def test_single_group(self):
        g = load_edge_list(io.StringIO("a b"))
        p = load_labels(io.StringIO("a x\nb x"), g)
        assert p.k_groups == 1

    def test_missing_node(self, path_graph):
        with pytest.raises(MetadataError, match="incomplete metadata.*'c'"):
            load_labels(io.StringIO("a x\nb y"), path_graph)

    def test_unknown_node(self, path_graph):
        with pytest.raises(MetadataError, match="unknown node"):
            load_labels(io.StringIO("a x\nb y\nc z\nq x"), path_graph)

    def test_duplicate_node(self, path_graph):
        with pytest.raises(MetadataError, match="duplicate"):
            load_labels(io.StringIO("a x\na y\nb x\nc x"), path_graph)


class TestPartition:
    def test_empty_groups_compacted(self):
        p = Partition.from_assignment([5, 9, 5])
        assert p.assignment.tolist() == [0, 1, 0]
        assert p.k_groups == 2

    def test_same_partition_up_to_relabel(self):
        a = Partition.from_assignment([0, 1, 1, 2])
        b = Partition.from_assignment([2, 0, 0, 1])
        assert a.same_partition(b)
        assert not a.same_partition(Partition.from_assignment([0, 0, 1, 2]))


class TestBlockStats:
    def test_path_hand_count(self, path_graph):
        p = Partition.from_assignment([0, 1, 0])
        st_ = block_stats(path_graph, p)
        assert st_.n.tolist() == [2, 1]
        assert st_.m.tolist() == [[0, 2], [2, 0]]
        assert st_.kappa.tolist() == [2, 2]

    def test_triangle_single_group(self, triangle):
        st_ = block_stats(triangle, Partition.from_assignment([0, 0, 0]))
        assert st_.m.tolist() == [[6]]
        assert st_.n.tolist() == [3]
        assert st_.kappa.tolist() == [6]

    def test_empty_graph(self):
        g = Graph.from_edges(3, [])
        st_ = block_stats(g, Partition.from_assignment([0, 1, 0]))
        assert not st_.m.any()

    def test_length_mismatch(self, triangle):
        with pytest.raises(ValueError, match="length"):
            block_stats(triangle, Partition.from_assignment([0, 1]))

    def test_relabel_permutes_m(self, karate):
        g, fac = karate
        st1 = block_stats(g, fac)
        perm = np.array([1, 0])
        st2 = block_stats(g, fac.relabel(perm))
        assert np.array_equal(st2.m, st1.m[np.ix_(perm, perm)][np.argsort(perm)][:, np.argsort(perm)]) or \
            np.array_equal(st2.m[np.ix_(perm, perm)], st1.m)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_sums_invariant(self, seed):
        rng = np.random.default_rng(seed)
        graph, part = random_graph_partition(rng)
        st_ = block_stats(graph, part)
        assert st_.m.sum() == 2 * graph.n_edges
        assert st_.kappa.sum() == 2 * graph.n_edges
        assert st_.n.sum() == graph.n_nodes
        assert np.array_equal(st_.m, st_.m.T)
        for r in range(part.k_groups):
            assert st_.kappa[r] == graph.degree[part.assignment == r].sum()
