"""Command-line entry point.

Subcommands: bestest, neosbm, metrics, generate, landscape, homogeneity.
All randomness flows from --seed through numpy's PCG64 generator (and
fixed-index substreams derived with SeedSequence spawn keys), so equal
invocations reproduce bit-identical numbers on any platform. Exit codes:
0 success, 2 usage error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, bestest, landscape, metrics, models, neosbm, synthgen
from .errors import MetanetError
from .graph import load_edge_list, load_labels, load_label_pairs, write_labels
from .manifest import RunManifest


def _read_graph(path: str):
    with open(path, encoding="utf-8") as fh:
        return load_edge_list(fh)


def _read_labels(path: str, graph):
    with open(path, encoding="utf-8") as fh:
        return load_labels(fh, graph)


def _write_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _parse_grid(spec: str) -> list[float]:
    try:
        a, b, step = (float(x) for x in spec.split(":"))
    except ValueError as exc:
        raise MetanetError(f"bad theta grid '{spec}'; expected a:b:step") from exc
    if step <= 0 or b < a:
        raise MetanetError(f"bad theta grid '{spec}'")
    n = int(round((b - a) / step))
    grid = [a + i * step for i in range(n + 1)]
    return [t for t in grid if t <= b + 1e-12]


def _cmd_bestest(args, argv) -> int:
    graph = _read_graph(args.graph)
    meta = _read_labels(args.metadata, graph)
    mode = "exhaustive" if args.exhaustive else "monte_carlo"
    result = bestest.run_bestest(graph, meta, model=args.model,
                                 n_perm=args.permutations, seed=args.seed,
                                 mode=mode, threads=args.threads,
                                 keep_null=args.dump_null is not None)
    if args.dump_null:
        with open(args.dump_null, "w", encoding="utf-8") as fh:
            for s in result.null_scores:
                fh.write(f"{s!r}\n")
    payload = result.as_dict()
    payload["manifest"] = RunManifest.build(
        "bestest", argv, args.seed, [args.graph, args.metadata]).as_dict()
    _write_json(payload, args.out)
    return 0


def _cmd_neosbm(args, argv) -> int:
    graph = _read_graph(args.graph)
    meta = _read_labels(args.metadata, graph)
    grid = _parse_grid(args.theta_grid)
    cfg = neosbm.NeoConfig(theta=grid[0], model=args.model,
                           sweeps=args.sweeps, restarts=args.restarts)
    path = neosbm.theta_sweep(graph, meta, grid, cfg, seed=args.seed,
                              k=args.k, jump_threshold=args.jump_threshold)

    def fitted_omega(partition):
        from .graph import block_stats
        from .models import BernoulliParams
        st = block_stats(graph, partition)
        return [[round(x, 10) for x in row]
                for row in BernoulliParams.estimate(st).omega]

    records = []
    for rec in path.records:
        d = rec.as_dict()
        d["omega"] = fitted_omega(rec.partition)
        records.append(d)
    payload = {
        "model": args.model,
        "theta_grid": grid,
        "records": records,
        "jumps": path.jumps,
        "optimum": path.optimum.assignment.tolist(),
        "optimum_omega": fitted_omega(path.optimum),
        "metadata_omega": fitted_omega(meta),
        "manifest": RunManifest.build("neosbm", argv, args.seed,
                                      [args.graph, args.metadata]).as_dict(),
    }
    _write_json(payload, args.out)
    part_dir = Path(args.out).with_name(Path(args.out).stem + "_partitions")
    part_dir.mkdir(parents=True, exist_ok=True)
    with open(part_dir / "metadata.labels", "w", encoding="utf-8") as fh:
        write_labels(meta, graph.node_names, fh)
    with open(part_dir / "optimum.labels", "w", encoding="utf-8") as fh:
        write_labels(path.optimum, graph.node_names, fh)
    for rec in path.records:
        name = f"theta_{rec.theta:.6f}.labels"
        with open(part_dir / name, "w", encoding="utf-8") as fh:
            write_labels(rec.partition, graph.node_names, fh)
    return 0


def _aligned_partitions(path_a: str, path_b: str):
    with open(path_a, encoding="utf-8") as fh:
        nodes_a, part_a = load_label_pairs(fh)
    with open(path_b, encoding="utf-8") as fh:
        nodes_b, part_b = load_label_pairs(fh)
    if set(nodes_a) != set(nodes_b):
        raise MetanetError("label files cover different node sets")
    order = {n: i for i, n in enumerate(nodes_b)}
    reorder = np.array([order[n] for n in nodes_a], dtype=np.int64)
    return part_a.assignment, part_b.assignment[reorder]


def _cmd_metrics(args, argv) -> int:
    if args.metric == "homogeneity":
        return _cmd_homogeneity(args, argv)
    a, b = _aligned_partitions(args.a, args.b)
    if args.metric == "nmi":
        value = metrics.nmi(a, b, normalization=args.normalization)
    elif args.metric == "ami":
        value = metrics.ami(a, b)
    else:
        value = metrics.vi(a, b)
    print(f"{value:.6f}")
    return 0


def _cmd_homogeneity(args, argv) -> int:
    rows = metrics.class_homogeneity_means(args.n)
    lines = ["group_sizes,mean_ami"]
    lines += [f"{'|'.join(str(s) for s in r['group_sizes'])},{r['mean_ami']!r}"
              for r in rows]
    text = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_generate(args, argv) -> int:
    rng = np.random.default_rng(np.random.SeedSequence(args.seed))
    prefix = args.out_prefix
    if args.kind == "two-block":
        cfg = synthgen.SynthConfig(n_nodes=args.n, epsilon=args.epsilon,
                                   ell=args.ell, mean_degree=args.mean_degree,
                                   seed=args.seed)
        graph, truth = synthgen.gen_two_block(cfg, rng)
        meta = synthgen.corrupt_metadata(truth, args.ell, rng)
        params = {"n": args.n, "epsilon": args.epsilon, "ell": args.ell,
                  "mean_degree": args.mean_degree}
        outputs = {"truth": truth, "metadata": meta}
    else:
        if args.config:
            cfg_mo = synthgen.MultiOptimumConfig.load(args.config)
        else:
            cfg_mo = synthgen.default_multi_optimum_config()
        graph, meta, planted = synthgen.gen_multi_optimum_default(rng, cfg_mo)
        params = {"config": args.config or "bundled default",
                  "provenance": cfg_mo.provenance}
        outputs = {"metadata": meta, "planted": planted}
    with open(f"{prefix}.edges", "w", encoding="utf-8") as fh:
        graph.write_edge_list(fh)
    # the edge-list format cannot carry isolated nodes, so label files are
    # restricted to the nodes present in the written graph
    present = graph.degree > 0
    for name, part in outputs.items():
        with open(f"{prefix}_{name}.labels", "w", encoding="utf-8") as fh:
            for i, node in enumerate(graph.node_names):
                if present[i]:
                    fh.write(f"{node} {part.label_names[part.assignment[i]]}\n")
    payload = {
        "kind": args.kind,
        "parameters": params,
        "n_nodes": int(present.sum()),
        "n_edges": graph.n_edges,
        "isolated_nodes_dropped": int((~present).sum()),
        "files": [f"{prefix}.edges"] + [f"{prefix}_{n}.labels" for n in outputs],
        "manifest": RunManifest.build("generate", argv, args.seed,
                                      [args.config] if getattr(args, "config", None) else []).as_dict(),
    }
    _write_json(payload, f"{prefix}_run.json")
    return 0


def _cmd_landscape(args, argv) -> int:
    graph = _read_graph(args.graph)
    label_files = sorted(Path(args.partitions).glob("*.labels"))
    if not label_files:
        raise MetanetError(f"no .labels files found in {args.partitions}")
    parents = [_read_labels(str(p), graph) for p in label_files]
    ids = [p.stem for p in label_files]
    chain_model = neosbm.CHAIN_MODELS[args.model]
    k = max(p.k_groups for p in parents)

    def scores_fn(parts):
        assigns = np.stack([p.assignment for p in parts])
        from . import kernels
        score_id = {kernels.CHAIN_BERNOULLI: kernels.SCORE_BERNOULLI_RAPID,
                    kernels.CHAIN_DCSBM: kernels.SCORE_POISSON_DCSBM,
                    kernels.CHAIN_MODULARITY: kernels.SCORE_MODULARITY}[chain_model]
        raw = kernels.batch_scores(graph.edges, graph.degree, assigns,
                                   max(k, int(assigns.max()) + 1),
                                   graph.n_edges, score_id)
        if score_id == kernels.SCORE_BERNOULLI_RAPID:
            return -raw * kernels.LN2
        return raw

    rng = np.random.default_rng(np.random.SeedSequence(args.seed))
    points = landscape.build_landscape(parents, ids, scores_fn, args.samples, rng)
    with open(args.out, "w", encoding="utf-8") as fh:
        landscape.export_surface(points, fh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metanet",
        description="Blockmodel significance tests and metadata/community diagnostics")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bestest", help="permutation significance test")
    p.add_argument("--graph", required=True)
    p.add_argument("--metadata", required=True)
    p.add_argument("--model", default="sbm", choices=models.MODEL_NAMES)
    p.add_argument("--permutations", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--dump-null", metavar="F.csv")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_bestest)

    p = sub.add_parser("neosbm", help="free-node model sweep over theta")
    p.add_argument("--graph", required=True)
    p.add_argument("--metadata", required=True)
    p.add_argument("--model", default="sbm", choices=sorted(neosbm.CHAIN_MODELS))
    p.add_argument("--theta-grid", required=True, metavar="a:b:step")
    p.add_argument("--sweeps", type=int, default=1000)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--jump-threshold", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_neosbm)

    p = sub.add_parser("metrics", help="partition comparison metrics")
    p.add_argument("metric", choices=["nmi", "ami", "vi", "homogeneity"])
    p.add_argument("--a", help="first label file")
    p.add_argument("--b", help="second label file")
    p.add_argument("--normalization", default="sqrt", choices=["sqrt", "avg", "max"])
    p.add_argument("--n", type=int, default=None, help="object count (homogeneity)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("homogeneity", help="mean AMI per partition class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_homogeneity)

    p = sub.add_parser("generate", help="synthetic benchmark networks")
    gsub = p.add_subparsers(dest="kind", required=True)
    g1 = gsub.add_parser("two-block")
    g1.add_argument("--n", type=int, required=True)
    g1.add_argument("--epsilon", type=float, required=True)
    g1.add_argument("--ell", type=float, default=1.0)
    g1.add_argument("--mean-degree", type=float, default=10.0)
    g1.add_argument("--seed", type=int, default=0)
    g1.add_argument("--out-prefix", required=True)
    g1.set_defaults(func=_cmd_generate)
    g2 = gsub.add_parser("multi-optimum")
    g2.add_argument("--config", default=None, help="block matrix JSON")
    g2.add_argument("--seed", type=int, default=0)
    g2.add_argument("--out-prefix", required=True)
    g2.set_defaults(func=_cmd_generate)

    p = sub.add_parser("landscape", help="partition-space surface export")
    p.add_argument("--graph", required=True)
    p.add_argument("--partitions", required=True, help="directory of .labels files")
    p.add_argument("--model", default="sbm", choices=sorted(neosbm.CHAIN_MODELS))
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_landscape)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "metrics" and args.metric != "homogeneity":
        if not args.a or not args.b:
            parser.error("metrics nmi/ami/vi require --a and --b")
    if (args.command == "homogeneity" or
            (args.command == "metrics" and args.metric == "homogeneity")):
        if args.n is None:
            parser.error("homogeneity requires --n")
    try:
        return args.func(args, argv)
    except (MetanetError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
