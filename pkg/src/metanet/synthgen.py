"""Synthetic network and metadata generators.

Two generators: a planted two-block Bernoulli SBM for the significance-test
sensitivity experiment, and a 2K-block core/periphery construction whose
likelihood landscape holds several locally optimal partitions. Both are
deterministic given (config, generator state).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .graph import Graph, Partition


@dataclass(frozen=True)
class SynthConfig:
    """Two-block generator parameters.

    epsilon is the cross/within edge-probability ratio omega_rs/omega_rr;
    ell is the per-node probability that the metadata label copies the
    planted label (otherwise it is uniform over both labels).
    lambda_overlay is carried through to reports only; no detectability
    formula is evaluated here.
    """

    n_nodes: int
    epsilon: float
    ell: float = 1.0
    mean_degree: float = 10.0
    seed: int | None = None
    lambda_overlay: float | None = None

    def omega_within(self) -> float:
        # mean degree c satisfies c = (N/2) * omega_rr * (1 + epsilon)
        return 2.0 * self.mean_degree / (self.n_nodes * (1.0 + self.epsilon))


def _sample_block_graph(sizes: np.ndarray, omega: np.ndarray,
                        rng: np.random.Generator) -> Graph:
    """Bernoulli graph with per-pair probability omega[block_i, block_j]."""
    n = int(sizes.sum())
    block = np.repeat(np.arange(len(sizes)), sizes)
    iu, ju = np.triu_indices(n, k=1)
    probs = omega[block[iu], block[ju]]
    keep = rng.random(len(probs)) < probs
    pairs = np.column_stack([iu[keep], ju[keep]]).astype(np.int64)
    return Graph.from_edges(n, [tuple(p) for p in pairs])


def gen_two_block(cfg: SynthConfig, rng: np.random.Generator) -> tuple[Graph, Partition]:
    """Planted two-block network; returns the graph and the truth partition.

    Each node joins block r or s with equal probability; within-pair edges
    are Bernoulli(omega_rr), cross-pair edges Bernoulli(epsilon * omega_rr).
    """
    if not 0.0 <= cfg.epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    w_in = cfg.omega_within()
    if w_in > 1.0:
        raise ValueError(
            f"infeasible omega: mean degree {cfg.mean_degree} needs "
            f"omega_rr={w_in:.3f} > 1 at N={cfg.n_nodes}, epsilon={cfg.epsilon}")
    truth = rng.integers(0, 2, size=cfg.n_nodes).astype(np.int64)
    iu, ju = np.triu_indices(cfg.n_nodes, k=1)
    prob = np.where(truth[iu] == truth[ju], w_in, cfg.epsilon * w_in)
    keep = rng.random(len(prob)) < prob
    pairs = np.column_stack([iu[keep], ju[keep]]).astype(np.int64)
    graph = Graph.from_edges(cfg.n_nodes, [tuple(p) for p in pairs])
    return graph, Partition.from_assignment(truth)


def corrupt_metadata(truth: Partition, ell: float, rng: np.random.Generator) -> Partition:
    """Copy each planted label with probability ell, else draw uniformly.

    The uniform draw includes the node's own label, so the per-node
    agreement rate is (1 + ell) / 2.
    """
    if truth.k_groups != 2:
        raise ValueError("corrupt_metadata expects a two-block truth partition")
    if not 0.0 <= ell <= 1.0:
        raise ValueError("ell must lie in [0, 1]")
    n = len(truth)
    copy = rng.random(n) < ell
    uniform = rng.integers(0, 2, size=n).astype(np.int64)
    labels = np.where(copy, truth.assignment, uniform)
    return Partition.from_assignment(labels)


# ---------------------------------------------------------------------------
# multi-optimum core/periphery construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiOptimumConfig:
    """2K-block interaction matrix plus the two coarse partitions read off it.

    Blocks pair up as (core, periphery) per community. metadata_groups maps
    blocks to the core/periphery metadata partition (all peripheries merged,
    per the committed layout); planted_groups maps blocks to the K
    assortative communities.
    """

    sizes: np.ndarray
    omega: np.ndarray
    metadata_groups: list[list[int]]
    planted_groups: list[list[int]]
    provenance: str = ""

    @property
    def k_communities(self) -> int:
        return len(self.planted_groups)

    @classmethod
    def from_dict(cls, d: dict) -> "MultiOptimumConfig":
        return cls(sizes=np.asarray(d["sizes"], dtype=np.int64),
                   omega=np.asarray(d["omega"], dtype=np.float64),
                   metadata_groups=d["metadata_groups"],
                   planted_groups=d["planted_groups"],
                   provenance=d.get("provenance", ""))

    @classmethod
    def load(cls, path) -> "MultiOptimumConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def default_multi_optimum_config() -> MultiOptimumConfig:
    ref = resources.files("metanet.data").joinpath("multi_optimum_omega.json")
    return MultiOptimumConfig.from_dict(json.loads(ref.read_text(encoding="utf-8")))


def _merge_blocks(block_of_node: np.ndarray, groups: list[list[int]]) -> Partition:
    lookup = np.full(block_of_node.max() + 1, -1, dtype=np.int64)
    for gi, blocks in enumerate(groups):
        for b in blocks:
            lookup[b] = gi
    if (lookup[block_of_node] < 0).any():
        raise ValueError("group map does not cover every block")
    return Partition.from_assignment(lookup[block_of_node])


def gen_multi_optimum(k_communities: int, sizes, degree_profile,
                      rng: np.random.Generator,
                      metadata_groups: list[list[int]] | None = None,
                      planted_groups: list[list[int]] | None = None,
                      ) -> tuple[Graph, Partition, Partition]:
    """Network with 2K blocks (K communities, each split core/periphery).

    degree_profile is the 2K x 2K block edge-probability matrix; block mean
    degrees vary through it. Returns the graph, the core/periphery metadata
    partition, and the planted assortative partition.
    """
    sizes = np.asarray(sizes, dtype=np.int64)
    omega = np.asarray(degree_profile, dtype=np.float64)
    if len(sizes) != 2 * k_communities or omega.shape != (2 * k_communities,) * 2:
        raise ValueError("need 2K block sizes and a 2K x 2K block matrix")
    if (omega < 0).any() or (omega > 1).any():
        raise ValueError("block probabilities must lie in [0, 1]")
    if planted_groups is None:
        planted_groups = [[2 * j, 2 * j + 1] for j in range(k_communities)]
    if metadata_groups is None:
        if k_communities != 4:
            raise ValueError("default metadata layout is defined for K=4 only")
        metadata_groups = [[1, 3, 4, 6], [0, 2], [5], [7]]
    graph = _sample_block_graph(sizes, omega, rng)
    block_of_node = np.repeat(np.arange(len(sizes)), sizes)
    metadata = _merge_blocks(block_of_node, metadata_groups)
    planted = _merge_blocks(block_of_node, planted_groups)
    return graph, metadata, planted


def gen_multi_optimum_default(rng: np.random.Generator,
                              config: MultiOptimumConfig | None = None,
                              ) -> tuple[Graph, Partition, Partition]:
    cfg = config or default_multi_optimum_config()
    return gen_multi_optimum(cfg.k_communities, cfg.sizes, cfg.omega, rng,
                             cfg.metadata_groups, cfg.planted_groups)
