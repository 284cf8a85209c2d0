"""Partition-comparison metrics and exhaustive partition-space checks.

All information quantities use base-2 logarithms. The expected mutual
information is taken over pairs of partitions drawn uniformly from the
group-size-preserving classes of the two inputs, which coincides with the
fixed-marginal hypergeometric model evaluated in closed form.
"""

from __future__ import annotations

import warnings
from functools import lru_cache
from typing import Iterator

import numpy as np
from scipy.special import gammaln

from .errors import InstanceTooLargeError
from .graph import Partition

ENUMERATION_CAP = 12  # B_12 = 4,213,597 partitions

_DEGENERATE_TOL = 1e-12


class ContingencyTable:
    """Co-occurrence counts of two partitions of the same objects."""

    def __init__(self, u: np.ndarray, v: np.ndarray):
        if len(u) != len(v):
            raise ValueError(f"partition lengths differ: {len(u)} != {len(v)}")
        ku = int(u.max()) + 1 if len(u) else 0
        kv = int(v.max()) + 1 if len(v) else 0
        flat = np.bincount(u * kv + v, minlength=ku * kv)
        self.counts = flat.reshape(ku, kv)
        self.row = self.counts.sum(axis=1)
        self.col = self.counts.sum(axis=0)
        self.n = int(self.counts.sum())


def _assignment(p) -> np.ndarray:
    if isinstance(p, Partition):
        return p.assignment
    return np.asarray(p, dtype=np.int64)


def _entropy_from_counts(counts: np.ndarray) -> float:
    c = counts[counts > 0].astype(np.float64)
    p = c / c.sum()
    return float(-(p * np.log2(p)).sum())


def partition_entropy(u) -> float:
    return _entropy_from_counts(np.bincount(_assignment(u)))


def mutual_information(u, v) -> float:
    t = ContingencyTable(_assignment(u), _assignment(v))
    nz = t.counts > 0
    c = t.counts[nz].astype(np.float64)
    outer = np.outer(t.row, t.col)[nz].astype(np.float64)
    return float((c / t.n * np.log2(c * t.n / outer)).sum())


def nmi(u, v, normalization: str = "sqrt") -> float:
    """Normalized mutual information with sqrt/avg/max denominators.

    A zero denominator yields 0 unless the two inputs are the same
    partition (up to relabeling), in which case 1.
    """
    ua, va = _assignment(u), _assignment(v)
    if len(ua) != len(va):
        raise ValueError(f"partition lengths differ: {len(ua)} != {len(va)}")
    hu, hv = partition_entropy(ua), partition_entropy(va)
    if normalization == "sqrt":
        denom = np.sqrt(hu * hv)
    elif normalization == "avg":
        denom = 0.5 * (hu + hv)
    elif normalization == "max":
        denom = max(hu, hv)
    else:
        raise ValueError(f"unknown normalization '{normalization}'")
    if denom <= 0.0:
        return 1.0 if _same_partition(ua, va) else 0.0
    return mutual_information(ua, va) / denom


def vi(u, v) -> float:
    """Variation of information H(u) + H(v) - 2 I(u,v), in bits."""
    ua, va = _assignment(u), _assignment(v)
    if len(ua) != len(va):
        raise ValueError(f"partition lengths differ: {len(ua)} != {len(va)}")
    if _same_partition(ua, va):
        return 0.0
    val = partition_entropy(ua) + partition_entropy(va) - 2.0 * mutual_information(ua, va)
    return max(0.0, float(val))


def _canonical(a: np.ndarray) -> tuple:
    remap: dict[int, int] = {}
    out = []
    for g in a:
        g = int(g)
        if g not in remap:
            remap[g] = len(remap)
        out.append(remap[g])
    return tuple(out)


def _same_partition(u: np.ndarray, v: np.ndarray) -> bool:
    return _canonical(u) == _canonical(v)


@lru_cache(maxsize=4096)
def _emi_cached(a_sizes: tuple, b_sizes: tuple, n: int) -> float:
    """Closed-form expected MI for fixed group-size multisets (bits)."""
    total = 0.0
    lg_n = gammaln(n + 1)
    for ai in a_sizes:
        for bj in b_sizes:
            lo = max(1, ai + bj - n)
            hi = min(ai, bj)
            if hi < lo:
                continue
            nij = np.arange(lo, hi + 1, dtype=np.float64)
            log_w = (gammaln(ai + 1) + gammaln(bj + 1)
                     + gammaln(n - ai + 1) + gammaln(n - bj + 1)
                     - lg_n - gammaln(nij + 1) - gammaln(ai - nij + 1)
                     - gammaln(bj - nij + 1) - gammaln(n - ai - bj + nij + 1))
            total += float(((nij / n) * np.log2(nij * n / (ai * bj)) * np.exp(log_w)).sum())
    return total


def expected_mi(u, v, mode: str = "closed_form") -> float:
    """E[I(u',v')] over group-size-preserving randomizations of u and v.

    closed_form evaluates the hypergeometric expectation; brute_force
    averages I over every pair from the two partition classes (small n only).
    """
    ua, va = _assignment(u), _assignment(v)
    if len(ua) != len(va):
        raise ValueError(f"partition lengths differ: {len(ua)} != {len(va)}")
    if mode == "closed_form":
        a = tuple(sorted(int(c) for c in np.bincount(ua) if c > 0))
        b = tuple(sorted(int(c) for c in np.bincount(va) if c > 0))
        return _emi_cached(a, b, len(ua))
    if mode == "brute_force":
        n = len(ua)
        if n > 8:
            raise InstanceTooLargeError(
                f"brute-force expected MI capped at n=8 objects, got {n}")
        cls_u = tuple(sorted(np.bincount(ua)))
        cls_v = tuple(sorted(np.bincount(va)))
        phi_u = [p for p in _enumerate_arrays(n)
                 if tuple(sorted(np.bincount(p))) == cls_u]
        phi_v = [p for p in _enumerate_arrays(n)
                 if tuple(sorted(np.bincount(p))) == cls_v]
        total = sum(mutual_information(pu, pv) for pu in phi_u for pv in phi_v)
        return total / (len(phi_u) * len(phi_v))
    raise ValueError(f"unknown expected_mi mode '{mode}'")


def ami(u, v) -> float:
    """Adjusted mutual information (I - E[I]) / (sqrt(H(u)H(v)) - E[I]).

    Boundary conventions: the 1-partition paired with itself and the
    N-partition paired with itself give 1; a boundary partition paired with
    anything else gives 0. A degenerate denominator elsewhere returns 0
    with a warning.
    """
    ua, va = _assignment(u), _assignment(v)
    if len(ua) != len(va):
        raise ValueError(f"partition lengths differ: {len(ua)} != {len(va)}")
    hu, hv = partition_entropy(ua), partition_entropy(va)
    if hu == 0.0 or hv == 0.0:  # a 1-partition is involved
        return 1.0 if (hu == 0.0 and hv == 0.0) else 0.0
    n = len(ua)
    u_sing = len(np.unique(ua)) == n
    v_sing = len(np.unique(va)) == n
    if u_sing or v_sing:  # the N-partition is involved
        return 1.0 if (u_sing and v_sing) else 0.0
    i_uv = mutual_information(ua, va)
    e_i = expected_mi(ua, va)
    denom = np.sqrt(hu * hv) - e_i
    if abs(denom) <= _DEGENERATE_TOL * max(1.0, np.sqrt(hu * hv)):
        if _same_partition(ua, va):
            return 1.0
        warnings.warn("degenerate AMI denominator; returning 0", RuntimeWarning)
        return 0.0
    return float((i_uv - e_i) / denom)


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------

def bell_number(n: int) -> int:
    """Count of set partitions of n objects, via the Bell triangle."""
    if n < 1:
        return 1
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


def _enumerate_arrays(n: int) -> Iterator[np.ndarray]:
    """All set partitions of n objects as restricted-growth strings."""
    a = np.zeros(n, dtype=np.int64)
    b = np.zeros(n, dtype=np.int64)  # b[i] = max(a[:i+1])
    yield a.copy()
    if n == 1:
        return
    while True:
        i = n - 1
        while i > 0 and a[i] == b[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        b[i] = max(b[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            b[j] = b[i]
        yield a.copy()


def enumerate_partitions(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Partition]:
    """Yield every set partition of n objects exactly once (RGS order)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise InstanceTooLargeError(
            f"partition enumeration capped at n={cap} objects, got {n}")
    for a in _enumerate_arrays(n):
        yield Partition.from_assignment(a)


def homogeneity_profile(u, n: int, cap: int = ENUMERATION_CAP) -> float:
    """Mean AMI from u to every partition of n objects.

    Zero for interior partitions; 1/B_n for the 1-partition and the
    N-partition (each matches only itself, at AMI 1).
    """
    ua = _assignment(u)
    if len(ua) != n:
        raise ValueError(f"partition has {len(ua)} objects, expected {n}")
    if n > cap:
        raise InstanceTooLargeError(
            f"partition enumeration capped at n={cap} objects, got {n}")
    total = 0.0
    count = 0
    for va in _enumerate_arrays(n):
        total += ami(ua, va)
        count += 1
    return total / count


def class_homogeneity_means(n: int) -> list[dict]:
    """Mean AMI over all partitions, for one representative u per size class."""
    reps: dict[tuple, np.ndarray] = {}
    for a in _enumerate_arrays(n):
        key = tuple(sorted(int(c) for c in np.bincount(a) if c > 0))
        if key not in reps:
            reps[key] = a
    rows = []
    for key in sorted(reps, key=lambda k: (len(k), k)):
        rows.append({
            "group_sizes": key,
            "mean_ami": homogeneity_profile(reps[key], n),
        })
    return rows
