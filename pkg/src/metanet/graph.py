"""Graph, partition, and block-statistics containers plus file ingestion.

Edge-list format: UTF-8 text, one edge per line as two whitespace-separated
node tokens; lines starting with '#' are comments; blank lines are skipped.
Label format: "node<whitespace>label", one line per node, same comment rule.
Node and label indices are dense and assigned in first-appearance order of
the input, so loading the same file always yields the same indexing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import IO, Iterable

import numpy as np

from .errors import EdgeListParseError, MetadataError


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph with dense node indices.

    edges is an (E, 2) int64 array with edges[e, 0] < edges[e, 1], sorted
    lexicographically. degree[i] counts incident edges of node i.
    """

    n_nodes: int
    edges: np.ndarray
    degree: np.ndarray
    node_names: tuple[str, ...]

    @classmethod
    def from_edges(cls, n_nodes: int, edge_pairs: Iterable[tuple[int, int]],
                   node_names: tuple[str, ...] | None = None) -> "Graph":
        seen = set()
        for u, v in edge_pairs:
            if u == v:
                raise EdgeListParseError(f"self-loop on node index {u}")
            if not (0 <= u < n_nodes and 0 <= v < n_nodes):
                raise EdgeListParseError(f"edge ({u},{v}) outside 0..{n_nodes - 1}")
            seen.add((min(u, v), max(u, v)))
        edges = np.array(sorted(seen), dtype=np.int64).reshape(-1, 2)
        degree = np.zeros(n_nodes, dtype=np.int64)
        if len(edges):
            degree += np.bincount(edges[:, 0], minlength=n_nodes)
            degree += np.bincount(edges[:, 1], minlength=n_nodes)
        if node_names is None:
            node_names = tuple(str(i) for i in range(n_nodes))
        return cls(n_nodes, edges, degree, node_names)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) neighbor lists, used by the MCMC kernels."""
        indptr = np.zeros(self.n_nodes + 1, dtype=np.int64)
        np.add.at(indptr, self.edges[:, 0] + 1, 1)
        np.add.at(indptr, self.edges[:, 1] + 1, 1)
        indptr = np.cumsum(indptr)
        indices = np.empty(indptr[-1], dtype=np.int64)
        cursor = indptr[:-1].copy()
        for u, v in self.edges:
            indices[cursor[u]] = v
            cursor[u] += 1
            indices[cursor[v]] = u
            cursor[v] += 1
        return indptr, indices

    def write_edge_list(self, stream: IO[str]) -> None:
        """Emit edges so that reloading reproduces the same dense indexing.

        Edges that first introduce a node are written in node-index order,
        then the remainder in sorted order; first-appearance indexing of
        the output therefore matches this graph's indexing.
        """
        introduced = np.zeros(self.n_nodes, dtype=bool)
        by_node: dict[int, tuple[int, int]] = {}
        for u, v in sorted(map(tuple, self.edges), key=lambda e: (e[1], e[0])):
            by_node.setdefault(v, (u, v))
            by_node.setdefault(u, (u, v))
        head: list[tuple[int, int]] = []
        for node in range(self.n_nodes):
            if not introduced[node] and node in by_node:
                u, v = by_node[node]
                head.append((u, v))
                introduced[u] = introduced[v] = True
        head_set = set(head)
        rest = [e for e in map(tuple, self.edges) if e not in head_set]
        for u, v in head + sorted(rest):
            stream.write(f"{self.node_names[u]} {self.node_names[v]}\n")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n_nodes == other.n_nodes
                and self.node_names == other.node_names
                and np.array_equal(self.edges, other.edges))


@dataclass(frozen=True, eq=False)
class Partition:
    """Assignment of every node to one of k_groups dense group indices.

    Empty groups are compacted at construction: group indices are remapped
    to 0..K-1 in first-appearance order along the assignment vector.
    """

    assignment: np.ndarray
    k_groups: int
    label_names: tuple[str, ...]

    @classmethod
    def from_assignment(cls, assignment, label_names: tuple[str, ...] | None = None) -> "Partition":
        raw = np.asarray(assignment, dtype=np.int64)
        if raw.ndim != 1:
            raise ValueError("assignment must be one-dimensional")
        order = []
        remap = {}
        for g in raw:
            g = int(g)
            if g not in remap:
                remap[g] = len(order)
                order.append(g)
        dense = np.array([remap[int(g)] for g in raw], dtype=np.int64)
        if label_names is not None:
            names = tuple(label_names[g] for g in order)
        else:
            names = tuple(str(g) for g in order)
        return cls(dense, len(order), names)

    def __len__(self) -> int:
        return len(self.assignment)

    def group_sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k_groups)

    def relabel(self, perm: np.ndarray) -> "Partition":
        """Apply a group-index permutation; the partition itself is unchanged."""
        return Partition(perm[self.assignment], self.k_groups,
                         tuple(self.label_names[g] for g in np.argsort(perm)))

    def canonical(self) -> np.ndarray:
        """First-appearance (restricted-growth) relabeling; equal arrays
        mean equal set partitions."""
        return Partition.from_assignment(self.assignment).assignment

    def same_partition(self, other: "Partition") -> bool:
        return (len(self) == len(other)
                and np.array_equal(self.canonical(), other.canonical()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return (self.k_groups == other.k_groups
                and self.label_names == other.label_names
                and np.array_equal(self.assignment, other.assignment))


@dataclass(frozen=True)
class BlockStats:
    """Sufficient statistics of (graph, partition) for all block-model scores.

    m uses the ordered endpoint-pair convention: every edge {i, j} adds one
    to m[r, s] and one to m[s, r], so diagonal entries double-count
    within-group edges and m.sum() == 2 * total_edges.
    """

    n: np.ndarray
    m: np.ndarray
    kappa: np.ndarray
    total_edges: int

    @property
    def k_groups(self) -> int:
        return len(self.n)

    def copy(self) -> "BlockStats":
        return BlockStats(self.n.copy(), self.m.copy(), self.kappa.copy(), self.total_edges)


def block_stats(graph: Graph, partition: Partition) -> BlockStats:
    """Count group sizes, ordered block edge endpoints, and group degrees."""
    if len(partition) != graph.n_nodes:
        raise ValueError(
            f"partition length {len(partition)} != graph node count {graph.n_nodes}")
    from . import kernels

    assign = partition.assignment
    k = partition.k_groups
    m = kernels.block_m(graph.edges, assign, k)
    n = np.bincount(assign, minlength=k).astype(np.int64)
    kappa = m.sum(axis=1)
    return BlockStats(n=n, m=m, kappa=kappa, total_edges=graph.n_edges)


def _content_lines(text: Iterable[str]):
    for lineno, line in enumerate(text, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def load_edge_list(text: Iterable[str]) -> Graph:
    """Parse an edge-list stream into a Graph.

    Repeated edges (in either orientation) collapse to one; self-loops and
    malformed lines raise EdgeListParseError with the offending line number.
    """
    index: dict[str, int] = {}
    names: list[str] = []
    pairs: list[tuple[int, int]] = []
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"line {lineno}: expected two node tokens, got {len(tokens)}")
        u_tok, v_tok = tokens
        if u_tok == v_tok:
            raise EdgeListParseError(f"line {lineno}: self-loop on node '{u_tok}'")
        for tok in (u_tok, v_tok):
            if tok not in index:
                index[tok] = len(names)
                names.append(tok)
        pairs.append((index[u_tok], index[v_tok]))
    return Graph.from_edges(len(names), pairs, tuple(names))


def load_labels(text: Iterable[str], graph: Graph) -> Partition:
    """Parse a node-label stream into a Partition aligned with graph indices.

    Every graph node must appear exactly once; label group indices follow
    first appearance in the file.
    """
    index = {name: i for i, name in enumerate(graph.node_names)}
    labels: dict[str, int] = {}
    label_names: list[str] = []
    assignment = np.full(graph.n_nodes, -1, dtype=np.int64)
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            raise MetadataError(
                f"line {lineno}: expected 'node label', got {len(tokens)} tokens")
        node_tok, label_tok = tokens
        if node_tok not in index:
            raise MetadataError(f"line {lineno}: unknown node '{node_tok}'")
        node = index[node_tok]
        if assignment[node] != -1:
            raise MetadataError(f"line {lineno}: duplicate entry for node '{node_tok}'")
        if label_tok not in labels:
            labels[label_tok] = len(label_names)
            label_names.append(label_tok)
        assignment[node] = labels[label_tok]
    missing = np.flatnonzero(assignment == -1)
    if len(missing):
        raise MetadataError(
            f"incomplete metadata: no label for node '{graph.node_names[missing[0]]}'")
    return Partition.from_assignment(assignment, tuple(label_names))


def load_label_pairs(text: Iterable[str]) -> tuple[list[str], Partition]:
    """Parse a standalone label file (no graph): node order as listed."""
    nodes: list[str] = []
    seen = set()
    labels: list[str] = []
    for lineno, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != 2:
            raise MetadataError(
                f"line {lineno}: expected 'node label', got {len(tokens)} tokens")
        if tokens[0] in seen:
            raise MetadataError(f"line {lineno}: duplicate entry for node '{tokens[0]}'")
        seen.add(tokens[0])
        nodes.append(tokens[0])
        labels.append(tokens[1])
    uniq: dict[str, int] = {}
    for lab in labels:
        if lab not in uniq:
            uniq[lab] = len(uniq)
    names = tuple(uniq.keys())
    assignment = np.array([uniq[lab] for lab in labels], dtype=np.int64)
    return nodes, Partition.from_assignment(assignment, names)


def write_labels(partition: Partition, node_names: Iterable[str], stream: IO[str]) -> None:
    for name, g in zip(node_names, partition.assignment):
        stream.write(f"{name} {partition.label_names[g]}\n")
