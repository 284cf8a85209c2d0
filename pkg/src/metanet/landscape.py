"""Partition-space landscape export: sampling, distances, 2D embedding.

Partitions sampled around a set of parents are scored, pairwise variation
of information is used as the distance, and classical (Torgerson) MDS
projects the set to two dimensions for the plotting component. The
embedding is deterministic up to rotation/reflection; reflections are
pinned by making the first nonzero coordinate of each axis positive.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from . import metrics
from .graph import Partition


@dataclass(frozen=True)
class LandscapePoint:
    coords: tuple[float, float]
    score: float
    partition_id: str


def crossover_sample(parents: Sequence[Partition], n_samples: int,
                     rng: np.random.Generator) -> list[Partition]:
    """Mix pairs of parents: q random nodes from one, the rest from the other.

    Each sample picks two distinct parents uniformly, q uniform in 0..N,
    and a uniform random q-subset of nodes taking the first parent's labels.
    """
    if len(parents) < 2:
        raise ValueError("crossover sampling needs at least two parents")
    n = len(parents[0])
    if any(len(p) != n for p in parents):
        raise ValueError("parents must cover the same nodes")
    out = []
    for _ in range(n_samples):
        i, j = rng.choice(len(parents), size=2, replace=False)
        q = int(rng.integers(0, n + 1))
        take_first = np.zeros(n, dtype=bool)
        take_first[rng.choice(n, size=q, replace=False)] = True
        mixed = np.where(take_first, parents[i].assignment, parents[j].assignment)
        out.append(Partition.from_assignment(mixed))
    return out


def vi_matrix(partitions: Sequence[Partition]) -> np.ndarray:
    """Symmetric pairwise variation-of-information matrix, zero diagonal."""
    if not partitions:
        raise ValueError("need at least one partition")
    n = len(partitions)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = metrics.vi(partitions[i], partitions[j])
    return d


def mds_embed(dist: np.ndarray) -> np.ndarray:
    """Classical MDS to 2D: double-center -1/2 J D^2 J, top eigenpairs.

    Coordinates are eigenvector * sqrt(eigenvalue) for the two largest
    non-negative eigenvalues; axes with non-positive eigenvalues collapse
    to zero. Each axis is sign-fixed so its first nonzero entry is positive.
    """
    dist = np.asarray(dist, dtype=np.float64)
    if dist.ndim != 2 or dist.shape[0] != dist.shape[1]:
        raise ValueError("distance matrix must be square")
    if not np.allclose(dist, dist.T, atol=1e-12):
        raise ValueError("distance matrix must be symmetric")
    n = len(dist)
    j = np.eye(n) - np.ones((n, n)) / n
    b = -0.5 * j @ (dist ** 2) @ j
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals)[::-1]
    coords = np.zeros((n, 2))
    for axis in range(min(2, n)):
        lam = evals[order[axis]]
        if lam <= 0:
            continue
        v = evecs[:, order[axis]] * np.sqrt(lam)
        nz = np.flatnonzero(np.abs(v) > 1e-12)
        if len(nz) and v[nz[0]] < 0:
            v = -v
        coords[:, axis] = v
    return coords


def export_surface(points: Sequence[LandscapePoint], stream: IO[str]) -> None:
    """Write x,y,score,partition_id rows in input order (CSV with header)."""
    if not points:
        raise ValueError("no landscape points to export")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["x", "y", "score", "partition_id"])
    for p in points:
        writer.writerow([repr(p.coords[0]), repr(p.coords[1]),
                         repr(p.score), p.partition_id])


def build_landscape(parents: Sequence[Partition], parent_ids: Sequence[str],
                    scores_fn, n_samples: int,
                    rng: np.random.Generator) -> list[LandscapePoint]:
    """Sample around parents, embed everything, and score each partition.

    scores_fn maps a list of Partitions to a float score per partition.
    Parents come first in the output, in their input order.
    """
    samples = crossover_sample(parents, n_samples, rng) if n_samples else []
    everything = list(parents) + samples
    ids = list(parent_ids) + [f"sample_{i:05d}" for i in range(len(samples))]
    coords = mds_embed(vi_matrix(everything))
    scores = scores_fn(everything)
    return [LandscapePoint((float(x), float(y)), float(s), pid)
            for (x, y), s, pid in zip(coords, scores, ids)]
