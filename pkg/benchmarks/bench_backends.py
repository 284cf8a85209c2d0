#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel backends.

Runs the two hot paths (permutation scoring, MCMC sweeps) in subprocesses
with METANET_NUMBA=1 and =0 and reports wall times. Usage:

    python benchmarks/bench_backends.py [--n-nodes 300] [--n-perm 2000]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = """
import json, time
import numpy as np
from metanet import kernels
from metanet.bestest import run_bestest
from metanet.graph import Graph, Partition
from metanet.neosbm import NeoConfig, infer

n_nodes = {n_nodes}
n_perm = {n_perm}
rng = np.random.default_rng(1)
iu, ju = np.triu_indices(n_nodes, k=1)
keep = rng.random(len(iu)) < 10.0 / n_nodes
g = Graph.from_edges(n_nodes, list(zip(iu[keep].tolist(), ju[keep].tolist())))
meta = Partition.from_assignment(rng.integers(0, 4, n_nodes))

# warm-up triggers JIT compilation; excluded from timings
run_bestest(g, meta, model="sbm", n_perm=8, seed=0)
infer(g, meta, NeoConfig(theta=0.3, sweeps=4, restarts=1), seed=0,
      init_assignment=meta.assignment)

t0 = time.perf_counter()
run_bestest(g, meta, model="sbm", n_perm=n_perm, seed=3)
t_perm = time.perf_counter() - t0

t0 = time.perf_counter()
infer(g, meta, NeoConfig(theta=0.3, sweeps=300, restarts=2), seed=4,
      init_assignment=meta.assignment)
t_mcmc = time.perf_counter() - t0

print(json.dumps({{"backend": kernels.active_backend(),
                   "permutation_scoring_s": round(t_perm, 4),
                   "mcmc_sweeps_s": round(t_mcmc, 4)}}))
"""


def run_backend(flag: str, n_nodes: int, n_perm: int) -> dict:
    env = dict(os.environ, METANET_NUMBA=flag)
    code = WORKLOAD.format(n_nodes=n_nodes, n_perm=n_perm)
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-nodes", type=int, default=300)
    ap.add_argument("--n-perm", type=int, default=2000)
    args = ap.parse_args()
    rows = [run_backend(flag, args.n_nodes, args.n_perm) for flag in ("1", "0")]
    print(f"{'backend':>8} {'perm scoring':>14} {'mcmc sweeps':>12}")
    for r in rows:
        print(f"{r['backend']:>8} {r['permutation_scoring_s']:>13.3f}s "
              f"{r['mcmc_sweeps_s']:>11.3f}s")
    fast, slow = rows
    for key in ("permutation_scoring_s", "mcmc_sweeps_s"):
        if fast[key] > 0:
            print(f"speedup {key}: {slow[key] / fast[key]:.1f}x")


if __name__ == "__main__":
    main()
