"""Model scores used as test statistics and chain objectives.

Conventions: entropies are reported in bits (base-2), log-likelihoods in
nats. Degenerate blocks (estimated edge probability 0 or 1) contribute
exactly zero through the 0*log(0) := 0 convention. Additive terms that are
invariant under permutation of the node labels at fixed degree sequence are
dropped (documented per model below); permutation p-values are unaffected
because they are rank statistics.

Dropped constants:
  * poisson_sbm_loglik and poisson_dcsbm_loglik drop the terms depending
    only on the degree sequence and total edge count (e.g. sum_i k_i ln k_i
    and factorial terms), which are fixed under label permutation.
  * bernoulli entropies keep every partition-dependent term.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegenerateBlockError
from .graph import BlockStats, Graph, Partition, block_stats

KIND_ENTROPY = "entropy_bits"
KIND_LOGLIK = "loglik_nats"
KIND_MODULARITY = "modularity"

# orientation is a pure function of kind
_ORIENTATION = {
    KIND_ENTROPY: "lower",
    KIND_LOGLIK: "higher",
    KIND_MODULARITY: "higher",
}

_LOG_BASE = {KIND_ENTROPY: 2, KIND_LOGLIK: "e", KIND_MODULARITY: None}


@dataclass(frozen=True)
class ScoreValue:
    """A model-tagged scalar with an explicit better-direction."""

    value: float
    kind: str
    model: str

    def __post_init__(self):
        if self.kind not in _ORIENTATION:
            raise ValueError(f"unknown score kind '{self.kind}'")
        if not np.isfinite(self.value):
            raise ValueError(f"non-finite score {self.value} for model '{self.model}'")

    @property
    def orientation(self) -> str:
        return _ORIENTATION[self.kind]

    @property
    def log_base(self):
        return _LOG_BASE[self.kind]

    def as_dict(self) -> dict:
        return {"model": self.model, "kind": self.kind, "value": self.value,
                "log_base": self.log_base}


@dataclass(frozen=True)
class BernoulliParams:
    """Maximum-likelihood block edge probabilities omega_rs = m_rs/(n_r n_s)."""

    omega: np.ndarray

    @classmethod
    def estimate(cls, stats: BlockStats) -> "BernoulliParams":
        nn = np.outer(stats.n, stats.n).astype(np.float64)
        with np.errstate(invalid="ignore"):
            omega = np.where(nn > 0, stats.m / np.where(nn > 0, nn, 1.0), 0.0)
        return cls(omega)


@dataclass(frozen=True)
class DegreeCorrectedParams:
    """DCSBM maximum-likelihood estimates: e_rs = m_rs, propensity_i = k_i/kappa_r.

    "propensity" avoids a name collision with the free-node prior theta.
    """

    e: np.ndarray
    propensity: np.ndarray

    @classmethod
    def estimate(cls, stats: BlockStats, graph: Graph, partition: Partition) -> "DegreeCorrectedParams":
        kap = stats.kappa[partition.assignment].astype(np.float64)
        with np.errstate(invalid="ignore", divide="ignore"):
            prop = np.where(kap > 0, graph.degree / np.where(kap > 0, kap, 1.0), 0.0)
        return cls(stats.m.copy(), prop)


_VARIANT_IDS = {
    "exact": kernels.SCORE_BERNOULLI_EXACT,
    "rapid": kernels.SCORE_BERNOULLI_RAPID,
    "sparse": kernels.SCORE_BERNOULLI_SPARSE,
}


def _check_blocks(stats: BlockStats) -> None:
    nn = np.outer(stats.n, stats.n).astype(np.float64)
    bad = (nn > 0) & (stats.m > nn)
    if bad.any():
        r, s = np.argwhere(bad)[0]
        raise DegenerateBlockError(
            f"block ({r},{s}) has m_rs={stats.m[r, s]} > n_r*n_s={int(nn[r, s])}"
            " (edge probability estimate above 1)")


def bernoulli_entropy(stats: BlockStats, variant: str = "rapid",
                      graph: Graph | None = None,
                      partition: Partition | None = None) -> ScoreValue:
    """Bernoulli SBM description entropy at the fitted block probabilities.

    'rapid' is the O(K^2) grouped form; 'exact' additionally keeps the
    per-node diagonal terms of the pair sum; 'sparse' is the first-order
    sparse approximation |E| - 1/2 sum m_rs ln(m_rs / n_r n_s).
    """
    if variant not in _VARIANT_IDS:
        raise ValueError(f"unknown Bernoulli entropy variant '{variant}'")
    if variant == "exact" and (graph is None or partition is None):
        raise ValueError("exact variant requires graph and partition")
    _check_blocks(stats)
    value = kernels.score_from_blocks(stats.n, stats.m, stats.total_edges,
                                      _VARIANT_IDS[variant])
    name = "sbm" if variant == "rapid" else f"sbm-{variant}"
    return ScoreValue(value, KIND_ENTROPY, name)


def bernoulli_loglik_nats(stats: BlockStats) -> float:
    """Bernoulli SBM log-likelihood in nats; equals -(rapid entropy in nats)."""
    return -kernels.score_from_blocks(stats.n, stats.m, stats.total_edges,
                                      kernels.SCORE_BERNOULLI_RAPID) * kernels.LN2


def poisson_sbm_loglik(stats: BlockStats) -> ScoreValue:
    """Poisson SBM profile log-likelihood, 1/2 sum m_rs ln(m_rs / n_r n_s)."""
    value = kernels.score_from_blocks(stats.n, stats.m, stats.total_edges,
                                      kernels.SCORE_POISSON_SBM)
    return ScoreValue(value, KIND_LOGLIK, "poisson-sbm")


def poisson_dcsbm_loglik(stats: BlockStats) -> ScoreValue:
    """Poisson DCSBM profile log-likelihood, 1/2 sum m_rs ln(m_rs / kappa_r kappa_s)."""
    value = kernels.score_from_blocks(stats.n, stats.m, stats.total_edges,
                                      kernels.SCORE_POISSON_DCSBM)
    return ScoreValue(value, KIND_LOGLIK, "poisson-dcsbm")


def multinomial_dcsbm_entropy(graph: Graph, partition: Partition) -> ScoreValue:
    """Approximate entropy of the multinomial (sequential-edge) DCSBM.

    Bins are unordered node pairs with nonzero placement probability
    p_ij = k_i k_j m_rs / (2m kappa_r kappa_s); the approximation is the
    standard large-m expansion of the multinomial entropy, in bits.
    """
    if graph.n_edges < 1:
        raise ValueError("multinomial DCSBM entropy is undefined for an empty graph")
    if len(partition) != graph.n_nodes:
        raise ValueError("partition length does not match graph")
    scores = kernels.batch_scores(graph.edges, graph.degree,
                                  partition.assignment[None, :],
                                  partition.k_groups, graph.n_edges,
                                  kernels.SCORE_MULTINOMIAL_DCSBM)
    return ScoreValue(float(scores[0]), KIND_ENTROPY, "multinomial-dcsbm")


def modularity(stats: BlockStats) -> ScoreValue:
    """Newman-Girvan modularity, sum_r [m_rr/2E - (kappa_r/2E)^2]."""
    if stats.total_edges < 1:
        raise ValueError("modularity is undefined for an empty graph")
    value = kernels.score_from_blocks(stats.n, stats.m, stats.total_edges,
                                      kernels.SCORE_MODULARITY)
    return ScoreValue(value, KIND_MODULARITY, "modularity")


# registry used by the significance test and the CLI -----------------------

MODEL_NAMES = ("sbm", "sbm-exact", "sbm-sparse", "poisson-sbm",
               "poisson-dcsbm", "multinomial-dcsbm", "modularity")

_MODEL_KERNEL_ID = {
    "sbm": kernels.SCORE_BERNOULLI_RAPID,
    "sbm-exact": kernels.SCORE_BERNOULLI_EXACT,
    "sbm-sparse": kernels.SCORE_BERNOULLI_SPARSE,
    "poisson-sbm": kernels.SCORE_POISSON_SBM,
    "poisson-dcsbm": kernels.SCORE_POISSON_DCSBM,
    "multinomial-dcsbm": kernels.SCORE_MULTINOMIAL_DCSBM,
    "modularity": kernels.SCORE_MODULARITY,
}

_MODEL_KIND = {
    "sbm": KIND_ENTROPY,
    "sbm-exact": KIND_ENTROPY,
    "sbm-sparse": KIND_ENTROPY,
    "poisson-sbm": KIND_LOGLIK,
    "poisson-dcsbm": KIND_LOGLIK,
    "multinomial-dcsbm": KIND_ENTROPY,
    "modularity": KIND_MODULARITY,
}


def model_kernel_id(model: str) -> int:
    if model not in _MODEL_KERNEL_ID:
        raise ValueError(f"unknown model '{model}'; choose from {MODEL_NAMES}")
    return _MODEL_KERNEL_ID[model]


def model_kind(model: str) -> str:
    if model not in _MODEL_KIND:
        raise ValueError(f"unknown model '{model}'; choose from {MODEL_NAMES}")
    return _MODEL_KIND[model]


def model_orientation(model: str) -> str:
    return _ORIENTATION[model_kind(model)]


def score(graph: Graph, partition: Partition, model: str) -> ScoreValue:
    """Evaluate one named model on (graph, partition)."""
    kid = model_kernel_id(model)
    if model == "multinomial-dcsbm":
        return multinomial_dcsbm_entropy(graph, partition)
    stats = block_stats(graph, partition)
    if model in ("sbm", "sbm-exact", "sbm-sparse"):
        variant = {"sbm": "rapid", "sbm-exact": "exact", "sbm-sparse": "sparse"}[model]
        return bernoulli_entropy(stats, variant, graph, partition)
    if model == "modularity":
        return modularity(stats)
    value = kernels.score_from_blocks(stats.n, stats.m, stats.total_edges, kid)
    return ScoreValue(value, _MODEL_KIND[model], model)
