"""Penalized blockmodel with blue/red node states (free-node inference).

Blue nodes are locked to their metadata label; red nodes are free. Freedom
is priced by a Bernoulli prior with parameter theta through
psi(theta) = ln(theta / (1 - theta)), giving the penalized objective
L_neo = L_base + q * psi(theta) with q the red-node count. The constant
N ln(1 - theta) is excluded from stored L_neo values (documented; it is
included by neo_loglik, which implements the full log form).

Inference is Metropolis MCMC: label moves for red nodes with a uniform
proposal over the other groups, and fair-coin state flips accepted with
min{exp(dL_neo), 1} (a literal min{dL_neo, 1} rule would mix log and
probability scales). Chains initialize at the unconstrained optimum with
every node free, and a deterministic single-move polish runs after each
chain.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import kernels
from .errors import InstanceTooLargeError
from .graph import Graph, Partition

CHAIN_MODELS = {
    "sbm": kernels.CHAIN_BERNOULLI,
    "dcsbm": kernels.CHAIN_DCSBM,
    "modularity": kernels.CHAIN_MODULARITY,
}

SWEEP_CHUNK = 256
DEFAULT_EXHAUSTIVE_CAP = 2 ** 26


def psi(theta: float) -> float:
    """Cost of freeing one node, ln(theta / (1 - theta))."""
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie strictly in (0, 1), got {theta}")
    return math.log(theta / (1.0 - theta))


@dataclass(frozen=True)
class NeoConfig:
    theta: float
    model: str = "sbm"
    sweeps: int = 1000
    restarts: int = 20

    def __post_init__(self):
        psi(self.theta)  # validates the open-interval constraint
        if self.model not in CHAIN_MODELS:
            raise ValueError(f"unknown base model '{self.model}'")


@dataclass(frozen=True)
class NeoState:
    """One inferred state: labels, free flags, and objective values.

    assignment and z live in the fixed search label space (shared with the
    metadata); L_neo excludes the N ln(1-theta) constant.
    """

    assignment: np.ndarray
    z: np.ndarray
    q: int
    l_base: float
    l_neo: float
    theta: float
    model: str

    @property
    def partition(self) -> Partition:
        return Partition.from_assignment(self.assignment)

    def as_dict(self) -> dict:
        return {"theta": self.theta, "q": self.q, "L_base": self.l_base,
                "partition": self.assignment.tolist(),
                "z": ["red" if zi else "blue" for zi in self.z]}


@dataclass(frozen=True)
class NeoPath:
    """Per-theta records of a sweep, with flagged discontinuous jumps."""

    records: list[NeoState]
    metadata: Partition
    optimum: Partition
    jumps: list[int] = field(default_factory=list)

    @property
    def thetas(self) -> list[float]:
        return [r.theta for r in self.records]

    def as_dict(self) -> dict:
        return {"records": [r.as_dict() for r in self.records],
                "jumps": self.jumps}


def _assign_of(p) -> np.ndarray:
    return p.assignment if isinstance(p, Partition) else np.asarray(p, dtype=np.int64)


def _base_loglik(graph: Graph, assign: np.ndarray, k: int, chain_model: int) -> float:
    m = kernels.block_m(graph.edges, assign, k)
    n = np.bincount(assign, minlength=k).astype(np.int64)
    return kernels.chain_objective(n, m, m.sum(axis=1), graph.n_edges, chain_model)


def neo_loglik(graph: Graph, pi, z, metadata, cfg: NeoConfig) -> float:
    """Full penalized log objective L_base + q psi + N ln(1 - theta), nats.

    Raises if any blue node's label differs from its metadata label.
    """
    assign = _assign_of(pi)
    meta = _assign_of(metadata)
    z = np.asarray(z, dtype=bool)
    locked_bad = (~z) & (assign != meta)
    if locked_bad.any():
        i = int(np.flatnonzero(locked_bad)[0])
        raise ValueError(f"lock violation: blue node {i} has label "
                         f"{assign[i]} != metadata {meta[i]}")
    k = int(max(assign.max(), meta.max())) + 1
    q = int(z.sum())
    l_base = _base_loglik(graph, assign, k, CHAIN_MODELS[cfg.model])
    return l_base + q * psi(cfg.theta) + graph.n_nodes * math.log(1.0 - cfg.theta)


def min_free_nodes(metadata: Partition, optimum: Partition) -> int:
    """Minimum nodes that must change label to turn metadata into optimum,
    after aligning group labels by optimal injective assignment."""
    a = _assign_of(metadata)
    b = _assign_of(optimum)
    if len(a) != len(b):
        raise ValueError("partitions must cover the same nodes")
    ka = int(a.max()) + 1
    kb = int(b.max()) + 1
    k = max(ka, kb)
    agree = np.zeros((k, k), dtype=np.int64)
    np.add.at(agree, (a, b), 1)
    rows, cols = linear_sum_assignment(agree, maximize=True)
    return int(len(a) - agree[rows, cols].sum())


def _debug_enabled() -> bool:
    return os.environ.get("METANET_DEBUG", "").strip() in ("1", "true", "on")


class _Chain:
    """Mutable MCMC state over a fixed graph/search space."""

    def __init__(self, graph: Graph, k: int, chain_model: int,
                 meta: np.ndarray, psi_value: float, do_z: bool):
        self.graph = graph
        self.k = k
        self.chain_model = chain_model
        self.meta = np.ascontiguousarray(meta, dtype=np.int64)
        self.psi = psi_value
        self.do_z = 1 if do_z else 0
        self.indptr, self.indices = graph.adjacency_csr
        self.deg = graph.degree.astype(np.int64)

    def _recompute(self, assign: np.ndarray):
        m = kernels.block_m(self.graph.edges, assign, self.k)
        n = np.bincount(assign, minlength=self.k).astype(np.int64)
        kap = m.sum(axis=1)
        l_base = kernels.chain_objective(n, m, kap, self.graph.n_edges,
                                         self.chain_model)
        return n, m, kap, l_base

    def run(self, init_assign: np.ndarray, init_z: np.ndarray, sweeps: int,
            rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        assign = np.ascontiguousarray(init_assign, dtype=np.int64).copy()
        z = np.ascontiguousarray(init_z, dtype=np.int64).copy()
        n, m, kap, l_base = self._recompute(assign)
        q = int(z.sum())
        best_assign = assign.copy()
        best_z = z.copy()
        best_state = np.array([l_base + q * self.psi, l_base, q], dtype=np.float64)
        e_total = float(self.graph.n_edges)
        done = 0
        while done < sweeps:
            step = min(SWEEP_CHUNK, sweeps - done)
            u = rng.random((4, step, self.graph.n_nodes))
            l_base, q = kernels.neo_sweeps(
                self.indptr, self.indices, self.deg, self.k, e_total,
                self.chain_model, assign, z, self.meta, self.psi, self.do_z,
                n, m, kap, l_base, q, u[0], u[1], u[2], u[3],
                best_assign, best_z, best_state)
            done += step
            if _debug_enabled():
                self._validate(assign, z, l_base, q)
        # polish the best state seen
        assign = best_assign.copy()
        z = best_z.copy()
        n, m, kap, l_base = self._recompute(assign)
        q = int(z.sum())
        l_base, q = kernels.greedy_polish(
            self.indptr, self.indices, self.deg, self.k, e_total,
            self.chain_model, assign, z, self.meta, self.psi, self.do_z,
            n, m, kap, l_base, q)
        if _debug_enabled():
            self._validate(assign, z, l_base, q)
        return assign, z

    def _validate(self, assign, z, l_base, q):
        assert q == int(np.asarray(z).sum()), "tracked q out of sync"
        if self.do_z:
            locked = np.asarray(z) == 0
            assert (assign[locked] == self.meta[locked]).all(), \
                "lock invariant violated during sweep"
        ref = self._recompute(assign)[3]
        assert abs(ref - l_base) < 1e-6 * max(1.0, abs(ref)), \
            f"tracked objective drifted: {l_base} vs {ref}"

    def evaluate(self, assign: np.ndarray, z: np.ndarray, theta: float,
                 model: str) -> NeoState:
        l_base = self._recompute(assign)[3]
        q = int(np.asarray(z).sum())
        return NeoState(assignment=assign.copy(),
                        z=np.asarray(z, dtype=bool).copy(), q=q,
                        l_base=l_base, l_neo=l_base + q * self.psi,
                        theta=theta, model=model)


def _better(a: NeoState, b: NeoState | None) -> bool:
    if b is None:
        return True
    if a.l_neo != b.l_neo:
        return a.l_neo > b.l_neo
    return a.q < b.q


def optimize_partition(graph: Graph, k: int, model: str = "sbm",
                       sweeps: int = 1000, restarts: int = 20,
                       seed: int = 0) -> tuple[Partition, float]:
    """Best partition found by restarted unconstrained MCMC plus polish."""
    chain_model = CHAIN_MODELS[model]
    meta = np.zeros(graph.n_nodes, dtype=np.int64)
    chain = _Chain(graph, k, chain_model, meta, 0.0, do_z=False)
    z_all_red = np.ones(graph.n_nodes, dtype=np.int64)
    best: NeoState | None = None
    for r in range(restarts):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(r,)))
        init = rng.integers(0, k, size=graph.n_nodes).astype(np.int64)
        assign, z = chain.run(init, z_all_red, sweeps, rng)
        state = chain.evaluate(assign, z, 0.5, model)
        if _better(state, best):
            best = state
    return best.partition, best.l_base


def infer(graph: Graph, metadata: Partition, cfg: NeoConfig, seed: int = 0,
          k: int | None = None, init_assignment: np.ndarray | None = None,
          warm_start: NeoState | None = None) -> NeoState:
    """Best free-node state across restarts at fixed theta.

    Each restart initializes at the unconstrained optimum (init_assignment,
    computed here when not supplied) with every node free. A warm_start
    state, when given, runs as one extra chain.
    """
    meta = metadata.assignment
    if init_assignment is None:
        k_opt = k or metadata.k_groups
        init_partition, _ = optimize_partition(
            graph, k_opt, cfg.model, cfg.sweeps, cfg.restarts,
            seed=int(np.random.SeedSequence(seed, spawn_key=(0xC0,)).generate_state(1)[0]))
        init_assignment = init_partition.assignment
    k_search = max(int(meta.max()) + 1, int(init_assignment.max()) + 1, k or 0)
    chain = _Chain(graph, k_search, CHAIN_MODELS[cfg.model], meta,
                   psi(cfg.theta), do_z=True)
    z_all_red = np.ones(graph.n_nodes, dtype=np.int64)
    best: NeoState | None = None
    starts: list[tuple[np.ndarray, np.ndarray]] = []
    if warm_start is not None:
        starts.append((warm_start.assignment, warm_start.z.astype(np.int64)))
    starts.extend((init_assignment, z_all_red) for _ in range(cfg.restarts))
    for r, (a0, z0) in enumerate(starts):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1, r)))
        assign, z = chain.run(a0, z0, cfg.sweeps, rng)
        state = chain.evaluate(assign, z, cfg.theta, cfg.model)
        if _better(state, best):
            best = state
    return best


def exhaustive_neo(graph: Graph, metadata: Partition, cfg: NeoConfig,
                   k: int | None = None,
                   cap: int = DEFAULT_EXHAUSTIVE_CAP) -> NeoState:
    """Exact argmax of L_neo over every (labeling, state) pair.

    For a fixed labeling the optimal states are forced: mismatched nodes
    must be red, matched nodes are blue when psi < 0, red when psi > 0, and
    ties at psi = 0 resolve toward fewer red nodes.
    """
    meta = metadata.assignment
    k = k or metadata.k_groups
    n = graph.n_nodes
    if (k ** n) * (2 ** n) > cap:
        raise InstanceTooLargeError(
            f"{k}^{n} * 2^{n} states exceed the exhaustive cap {cap}")
    labelings = _all_labelings(k, n)
    chain_model = CHAIN_MODELS[cfg.model]
    score_id = {kernels.CHAIN_BERNOULLI: kernels.SCORE_BERNOULLI_RAPID,
                kernels.CHAIN_DCSBM: kernels.SCORE_POISSON_DCSBM,
                kernels.CHAIN_MODULARITY: kernels.SCORE_MODULARITY}[chain_model]
    raw = kernels.batch_scores(graph.edges, graph.degree, labelings, k,
                               graph.n_edges, score_id)
    if score_id == kernels.SCORE_BERNOULLI_RAPID:
        l_base = -raw * kernels.LN2  # entropy bits -> log-likelihood nats
    else:
        l_base = raw
    mismatch = (labelings != meta[None, :]).sum(axis=1)
    p = psi(cfg.theta)
    if p > 0:
        q = np.full(len(labelings), n)
    else:
        q = mismatch
    l_neo = l_base + q * p
    # relabel-equivalent labelings can differ by float ulps; quantize the
    # ordering key so ties resolve by q, then by enumeration order
    order = np.lexsort((q, -np.round(l_neo, 10)))
    idx = order[0]
    assign = labelings[idx]
    z = (assign != meta) if p <= 0 else np.ones(n, dtype=bool)
    return NeoState(assignment=assign.copy(), z=z, q=int(q[idx]),
                    l_base=float(l_base[idx]), l_neo=float(l_neo[idx]),
                    theta=cfg.theta, model=cfg.model)


def _all_labelings(k: int, n: int) -> np.ndarray:
    grids = np.indices((k,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def theta_sweep(graph: Graph, metadata: Partition, grid, cfg: NeoConfig,
                seed: int = 0, k: int | None = None,
                jump_threshold: int = 1) -> NeoPath:
    """Run infer across an increasing theta grid with warm starts.

    A jump is flagged at grid point i when q rises by more than
    jump_threshold from point i-1 while L_base also increases.
    """
    thetas = [float(t) for t in grid]
    if not thetas:
        raise ValueError("theta grid is empty")
    if any(not 0.0 < t < 1.0 for t in thetas):
        raise ValueError("theta grid must lie strictly inside (0, 1)")
    if any(b <= a for a, b in zip(thetas, thetas[1:])):
        raise ValueError("theta grid must be strictly increasing")
    k_opt = k or metadata.k_groups
    opt_seed = int(np.random.SeedSequence(seed, spawn_key=(0xC0,)).generate_state(1)[0])
    optimum, _ = optimize_partition(graph, k_opt, cfg.model, cfg.sweeps,
                                    max(cfg.restarts, 1), seed=opt_seed)
    records: list[NeoState] = []
    prev: NeoState | None = None
    for ti, theta in enumerate(thetas):
        step_cfg = NeoConfig(theta=theta, model=cfg.model, sweeps=cfg.sweeps,
                             restarts=cfg.restarts)
        state = infer(graph, metadata, step_cfg,
                      seed=int(np.random.SeedSequence(seed, spawn_key=(2, ti)).generate_state(1)[0]),
                      k=k_opt, init_assignment=optimum.assignment,
                      warm_start=prev)
        records.append(state)
        prev = state
    jumps = [i for i in range(1, len(records))
             if (records[i].q - records[i - 1].q > jump_threshold
                 and records[i].l_base > records[i - 1].l_base + 1e-9)]
    return NeoPath(records=records, metadata=metadata, optimum=optimum,
                   jumps=jumps)
