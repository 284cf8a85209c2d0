"""Blockmodel entropy significance test (permutation null, add-one p-value).

The null permutes the metadata labels uniformly, preserving the graph and
the label multiset. Replicates are drawn in fixed-size chunks whose RNG
substreams are derived from (seed, chunk index), so results do not depend
on the worker count. Exhaustive mode enumerates every distinct arrangement
of the label multiset and reports the exact fraction at least as extreme.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels, models, synthgen
from .errors import InstanceTooLargeError
from .graph import Graph, Partition

CHUNK = 512  # replicates per RNG substream; fixed for reproducibility

DEFAULT_EXHAUSTIVE_CAP = 200_000


def permute_labels(partition: Partition, rng: np.random.Generator) -> Partition:
    """Uniform random permutation of the assignment vector (Fisher-Yates)."""
    return Partition(rng.permutation(partition.assignment),
                     partition.k_groups, partition.label_names)


@dataclass(frozen=True)
class TestResult:
    __test__ = False  # not a pytest class

    observed: models.ScoreValue
    null_samples: int
    null_mean: float
    null_sd: float
    p_value: float
    mode: str
    seed: int
    model: str
    null_scores: np.ndarray | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "observed": self.observed.as_dict(),
            "null_mean": self.null_mean,
            "null_sd": self.null_sd,
            "n_permutations": self.null_samples,
            "p_value": self.p_value,
            "seed": self.seed,
            "mode": self.mode,
        }


def _n_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("METANET_THREADS", "").strip()
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, threads)


def _count_extreme(null_scores: np.ndarray, observed: float, orientation: str) -> int:
    # ties count as at least as extreme
    if orientation == "lower":
        return int((null_scores <= observed).sum())
    return int((null_scores >= observed).sum())


def _arrangement_count(sizes: np.ndarray) -> int:
    total = math.factorial(int(sizes.sum()))
    for c in sizes:
        total //= math.factorial(int(c))
    return total


def run_bestest(graph: Graph, metadata: Partition, model: str = "sbm",
                n_perm: int = 1000, seed: int = 0, mode: str = "monte_carlo",
                threads: int | None = None, keep_null: bool = False,
                exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP) -> TestResult:
    """Test whether metadata describes the network better than permuted labels.

    Monte-carlo mode uses the permutation-inclusive estimator
    p = (1 + #extreme) / (1 + n_perm); exhaustive mode enumerates all
    distinct label arrangements (the observed one included) and returns the
    exact fraction.
    """
    if len(metadata) != graph.n_nodes:
        raise ValueError("metadata length does not match graph")
    kid = models.model_kernel_id(model)
    orientation = models.model_orientation(model)
    if model in ("modularity", "multinomial-dcsbm") and graph.n_edges < 1:
        raise ValueError(f"model '{model}' requires at least one edge")

    assign = metadata.assignment
    k = metadata.k_groups

    def score_rows(rows: np.ndarray) -> np.ndarray:
        return kernels.batch_scores(graph.edges, graph.degree, rows, k,
                                    graph.n_edges, kid)

    observed_value = float(score_rows(assign[None, :])[0])
    observed = models.ScoreValue(observed_value, models.model_kind(model), model)

    if mode == "monte_carlo":
        if n_perm < 1:
            raise ValueError("monte_carlo mode requires n_perm >= 1")
        n_chunks = (n_perm + CHUNK - 1) // CHUNK
        sizes = [CHUNK] * (n_chunks - 1) + [n_perm - CHUNK * (n_chunks - 1)]

        def run_chunk(c: int) -> np.ndarray:
            rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(c,)))
            rows = rng.permuted(np.tile(assign, (sizes[c], 1)), axis=1)
            return score_rows(rows)

        workers = min(_n_threads(threads), n_chunks)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                chunks = list(pool.map(run_chunk, range(n_chunks)))
        else:
            chunks = [run_chunk(c) for c in range(n_chunks)]
        null = np.concatenate(chunks)
        extreme = _count_extreme(null, observed_value, orientation)
        p = (1 + extreme) / (1 + n_perm)
        sd = float(np.std(null, ddof=1)) if len(null) > 1 else 0.0
        return TestResult(observed, n_perm, float(null.mean()), sd, p,
                          "monte_carlo", seed, model,
                          null if keep_null else None)

    if mode == "exhaustive":
        sizes_arr = metadata.group_sizes()
        total = _arrangement_count(sizes_arr)
        if total > exhaustive_cap:
            raise InstanceTooLargeError(
                f"{total} distinct label arrangements exceed the cap {exhaustive_cap}")
        from sympy.utilities.iterables import multiset_permutations

        arrangements = np.array(list(multiset_permutations(sorted(assign.tolist()))),
                                dtype=np.int64)
        assert len(arrangements) == total
        null = score_rows(arrangements)
        extreme = _count_extreme(null, observed_value, orientation)
        p = extreme / total
        return TestResult(observed, total, float(null.mean()),
                          float(np.std(null, ddof=0)), p, "exhaustive", seed,
                          model, null if keep_null else None)

    raise ValueError(f"unknown mode '{mode}'")


def sensitivity_experiment(n_nodes: int, epsilon, ell, mean_degree: float,
                           n_reps: int, n_perm: int, seed: int = 0,
                           model: str = "sbm", threads: int | None = None) -> list[dict]:
    """Mean BESTest p-value on planted two-block networks, per (epsilon, ell).

    For each replicate a fresh network is drawn at community strength
    epsilon, metadata is copied from the planted partition with probability
    ell per node (uniform label otherwise), and one test is run.
    """
    eps_grid = np.atleast_1d(np.asarray(epsilon, dtype=np.float64))
    ell_grid = np.atleast_1d(np.asarray(ell, dtype=np.float64))
    if ((eps_grid < 0) | (eps_grid > 1)).any():
        raise ValueError("epsilon must lie in [0, 1]")
    if ((ell_grid < 0) | (ell_grid > 1)).any():
        raise ValueError("ell must lie in [0, 1]")
    records = []
    for ei, eps in enumerate(eps_grid):
        for li, lv in enumerate(ell_grid):
            ps = np.empty(n_reps)
            for rep in range(n_reps):
                ss = np.random.SeedSequence(seed, spawn_key=(ei, li, rep))
                gen_seed, test_seed = ss.generate_state(2)
                rng = np.random.default_rng(np.random.SeedSequence(int(gen_seed)))
                cfg = synthgen.SynthConfig(n_nodes=n_nodes, epsilon=float(eps),
                                           ell=float(lv), mean_degree=mean_degree)
                g, truth = synthgen.gen_two_block(cfg, rng)
                meta = synthgen.corrupt_metadata(truth, float(lv), rng)
                res = run_bestest(g, meta, model=model, n_perm=n_perm,
                                  seed=int(test_seed), threads=threads)
                ps[rep] = res.p_value
            records.append({
                "epsilon": float(eps), "ell": float(lv),
                "mean_p": float(ps.mean()), "sd_p": float(ps.std(ddof=1)) if n_reps > 1 else 0.0,
                "n_reps": n_reps, "n_perm": n_perm, "model": model,
            })
    return records


SENSITIVITY_FIELDS = ("epsilon", "ell", "mean_p", "sd_p", "n_reps", "n_perm", "model")


def write_sensitivity_csv(records: list[dict], stream) -> None:
    """One row per (epsilon, ell) record; the plotting component reads this."""
    import csv

    writer = csv.DictWriter(stream, fieldnames=SENSITIVITY_FIELDS,
                            lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow({k: rec[k] for k in SENSITIVITY_FIELDS})
