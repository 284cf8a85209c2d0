import numpy as np

from metanet.graph import Graph, Partition


def random_graph_partition(rng, n_max=60, k_max=5, p=0.15):
    """Random simple graph plus a random partition touching every group."""
    n = int(rng.integers(4, n_max + 1))
    k = int(rng.integers(1, min(k_max, n) + 1))
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    graph = Graph.from_edges(n, list(zip(iu[keep].tolist(), ju[keep].tolist())))
    assign = rng.integers(0, k, size=n)
    assign[rng.permutation(n)[:k]] = np.arange(k)  # no empty groups
    return graph, Partition.from_assignment(assign)
