"""Command-line surface: generate instances, cluster streams, evaluate,
compare against oracles, and benchmark.

Exit codes: 0 success, 1 property-check failure, 2 usage or format error.
stdout carries the delimited payload (TSV); JSON summaries go to stderr or a
file so pipelines stay clean.
"""

import argparse
import json
import math
import os
import sys

from .core import (
    InvalidInstanceError,
    OracleCapacityError,
    ParameterError,
    Permutation,
    SINGLETON,
    StreamFormatError,
)
from .cost import disagreement_cost
from .edgelist import (
    edge_digest,
    iter_edges,
    parse_edge_line,
    parse_header,
    read_clustering_tsv,
    read_positive_graph,
    scan_header_and_n,
    write_clustering_tsv,
    write_edge_list,
)
from .gen import InstanceSpec, KINDS, ORDERS, SORTED, emit_stream, generate
from .reference import classic_pivot, reveal_pivot
from .streaming import cluster_stream

USAGE_ERROR = 2
CHECK_FAILURE = 1


class _CheckFailure(Exception):
    """A runtime property check (not a usage problem) failed."""


def _default_seed(args_seed):
    if args_seed is not None:
        return args_seed
    env = os.environ.get("STREAMCC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParameterError(f"STREAMCC_SEED must be an integer, got {env!r}") from None
    return 0


def _parse_k_list(text):
    try:
        ks = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"bad k list {text!r}") from None
    if not ks or any(k < 2 for k in ks):
        raise ParameterError("k values must be integers >= 2")
    return ks


def _summary_out(args):
    if getattr(args, "summary", None):
        return open(args.summary, "w"), True
    return sys.stderr, False


def _load_graph_arg(args):
    """Graph from --edges or from generator flags."""
    if getattr(args, "edges", None):
        return read_positive_graph(args.edges)
    if getattr(args, "kind", None):
        return generate(_spec_from_args(args))
    raise ParameterError("provide an edge file or generator flags (--kind ...)")


def _spec_from_args(args):
    sizes = ()
    if args.sizes:
        try:
            sizes = tuple(int(s) for s in args.sizes.split(","))
        except ValueError:
            raise InvalidInstanceError(f"bad --sizes {args.sizes!r}") from None
    n = args.n if args.n is not None else sum(sizes)
    return InstanceSpec(
        kind=args.kind,
        n=n or 0,
        sizes=sizes,
        flip_prob=args.flip,
        edge_prob=args.p,
        seed=_default_seed(args.seed),
    )


def cmd_gen(args):
    g = generate(_spec_from_args(args))
    stream = emit_stream(
        g, order=args.order, seed=_default_seed(args.seed), include_negatives=args.include_negatives
    )
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        write_edge_list(out, g.n, stream)
    finally:
        if args.out:
            out.close()
    return 0


def _stdin_edge_source(fobj, first_edge):
    if first_edge is not None:
        yield first_edge
    yield from iter_edges(fobj, start_lineno=2)


def cmd_cluster(args):
    seed = _default_seed(args.seed)
    if args.k < 2:
        raise ParameterError(f"k must be >= 2, got {args.k}")

    from_stdin = args.input == "-"
    first_edge = None
    if from_stdin:
        if args.order_check:
            raise ParameterError("--order-check needs a re-readable file, not stdin")
        if args.evaluate:
            raise ParameterError("--evaluate needs a re-readable file, not stdin")
        n = args.n
        # Peek at the first meaningful line: it may be a header carrying n.
        first_line = None
        for line in sys.stdin:
            if line.strip() and not line.lstrip().startswith("#"):
                first_line = line
                break
        header_n = parse_header(first_line) if first_line is not None else None
        if header_n is not None:
            if n is not None and n != header_n:
                raise StreamFormatError(f"--n {n} contradicts header n {header_n}")
            n = header_n
        elif first_line is not None:
            first_edge = parse_edge_line(first_line, 1)
        if n is None:
            raise ParameterError("--n is required on stdin (no buffering, single pass)")
        source = _stdin_edge_source(sys.stdin, first_edge)
    else:
        n = args.n if args.n is not None else scan_header_and_n(args.input)
        source = None  # opened below

    def run(order_reverse=False):
        if from_stdin:
            return cluster_stream(source, n, args.k, seed=seed, halved=args.halved)
        with open(args.input) as f:
            edges = iter_edges(f)
            if order_reverse:
                edges = reversed(list(edges))
            return cluster_stream(edges, n, args.k, seed=seed, halved=args.halved)

    clustering, stats = run()

    if args.order_check:
        again, _ = run(order_reverse=True)
        if again != clustering:
            raise _CheckFailure("order check failed: reversed stream changed the clustering")

    out = open(args.out, "w") if args.out else sys.stdout
    try:
        write_clustering_tsv(out, clustering)
    finally:
        if args.out:
            out.close()

    summary = {
        "n": n,
        "k": args.k,
        "seed": seed,
        "halved": args.halved,
        "num_clusters": clustering.num_clusters,
        "num_singletons": clustering.num_singletons,
        "edges_seen": stats.edges_seen,
        "peak_entries": stats.peak_entries,
        "ignored_negative": stats.ignored_negative,
        "phase_times": stats.phase_times,
    }
    if args.evaluate:
        g = read_positive_graph(args.input, n=n)
        summary["cost"] = disagreement_cost(clustering, g).as_dict()
    sink, close = _summary_out(args)
    try:
        json.dump(summary, sink)
        sink.write("\n")
    finally:
        if close:
            sink.close()
    return 0


def cmd_eval(args):
    clustering = read_clustering_tsv(args.clustering)
    g = read_positive_graph(args.edges)
    if clustering.n != g.n:
        raise InvalidInstanceError(
            f"clustering covers {clustering.n} vertices, edges file has {g.n}"
        )
    print(json.dumps(disagreement_cost(clustering, g).as_dict()))
    return 0


def cmd_compare(args):
    g = read_positive_graph(args.edges)
    k = args.k
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    stream = emit_stream(g, order=SORTED)
    failures = 0
    for seed in args.seeds:
        pi = Permutation.from_seed(g.n, seed)
        streamed, stats = cluster_stream(stream, g.n, k, pi=pi)
        halved, _ = cluster_stream(stream, g.n, k, pi=pi, halved=True)
        oracle, diag = reveal_pivot(g, pi, k)
        cost = disagreement_cost(streamed, g).total
        checks = {
            "stream=oracle": streamed == oracle,
            "halved=default": halved == streamed,
            "cost=P+S": cost == diag.total_cost,
            "memory<=kn": stats.peak_entries <= k * g.n,
        }
        if k >= g.n:
            checks["=classic"] = classic_pivot(g, pi) == streamed
            checks["no-singletons"] = SINGLETON not in streamed.role
        ok = all(checks.values())
        status = "PASS" if ok else "FAIL"
        detail = "" if ok else " " + ",".join(name for name, v in checks.items() if not v)
        print(f"seed={seed}\tcost={cost}\t{status}{detail}")
        if not ok:
            failures += 1
            print(
                f"repro: n={g.n} k={k} seed={seed} edges={edge_digest(g)}",
                file=sys.stderr,
            )
    if failures:
        raise _CheckFailure(f"{failures}/{len(args.seeds)} seeds failed")
    return 0


def cmd_bench(args):
    g = _load_graph_arg(args)
    seed = _default_seed(args.seed)
    ks = _parse_k_list(args.k_list)
    stream = emit_stream(g, order=SORTED)
    m = max(len(stream), 1)
    rows = []
    for k in ks:
        costs = []
        singles = 0
        peak = 0
        ingest_time = 0.0
        finalize_time = 0.0
        for i in range(args.trials):
            clustering, stats = cluster_stream(stream, g.n, k, seed=seed + i)
            if stats.peak_entries > k * g.n:
                raise _CheckFailure(
                    f"peak entries {stats.peak_entries} exceed budget {k * g.n}"
                )
            peak = max(peak, stats.peak_entries)
            ingest_time += stats.phase_times["stream"]
            finalize_time += stats.phase_times["finalize"]
            costs.append(disagreement_cost(clustering, g).total)
            singles += clustering.num_singletons
        mean = sum(costs) / len(costs)
        var = sum((c - mean) ** 2 for c in costs) / len(costs)
        rows.append(
            {
                "k": k,
                "trials": args.trials,
                "mean_cost": mean,
                "se_cost": math.sqrt(var / len(costs)),
                "mean_singletons": singles / args.trials,
                "peak_entries": peak,
                "kn_bound": k * g.n,
                "ingest_us_per_edge": ingest_time / args.trials / m * 1e6,
                "finalize_ms": finalize_time / args.trials * 1e3,
            }
        )
    cols = list(rows[0].keys())
    print("\t".join(cols))
    for row in rows:
        print("\t".join(f"{row[c]:.6g}" if isinstance(row[c], float) else str(row[c]) for c in cols))
    sink, close = _summary_out(args)
    try:
        json.dump({"n": g.n, "m": g.m, "seed": seed, "rows": rows}, sink)
        sink.write("\n")
    finally:
        if close:
            sink.close()
    if args.plot_dir:
        from .plots import render_bench_figures

        for path in render_bench_figures(rows, args.plot_dir, title=f"(n={g.n}, m={g.m})"):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _add_gen_flags(p, require_kind):
    p.add_argument("--kind", choices=KINDS, required=require_kind, help="instance family")
    p.add_argument("--n", type=int, default=None, help="vertex count")
    p.add_argument("--sizes", default="", help="planted cluster sizes, e.g. 3,3")
    p.add_argument("--flip", type=float, default=0.0, help="planted pair flip probability")
    p.add_argument("--p", type=float, default=0.0, help="random positive edge probability")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="streamcc",
        description="Semi-streaming correlation clustering with capped rank queues.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic edge-list file")
    _add_gen_flags(p, require_kind=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--order", choices=ORDERS, default=SORTED)
    p.add_argument("--include-negatives", action="store_true")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cluster", help="cluster an edge stream in one pass")
    p.add_argument("input", nargs="?", default="-", help="edge file, or - for stdin")
    p.add_argument("--n", type=int, default=None, help="vertex count (required on stdin)")
    p.add_argument("--k", type=int, required=True, help="queue capacity, >= 2")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--halved", action="store_true", help="store only better-ranked neighbours")
    p.add_argument("--order-check", action="store_true",
                   help="re-run on the reversed stream and require an identical clustering")
    p.add_argument("--evaluate", action="store_true",
                   help="add the disagreement cost to the summary (file input only)")
    p.add_argument("--out", default=None, help="TSV output path (default stdout)")
    p.add_argument("--summary", default=None, help="JSON summary path (default stderr)")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("eval", help="disagreement cost of a clustering file")
    p.add_argument("--clustering", required=True)
    p.add_argument("--edges", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("compare", help="check streaming output against the oracles")
    p.add_argument("edges")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seeds", type=int, nargs="+", required=True)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bench", help="benchmark cost, time, and memory per k")
    p.add_argument("--edges", default=None, help="edge file (or use generator flags)")
    _add_gen_flags(p, require_kind=False)
    p.add_argument("--k-list", default="2,5,10")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--summary", default=None, help="JSON output path (default stderr)")
    p.add_argument("--plot-dir", default=None, help="directory for report figures")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CheckFailure as exc:
        print(f"streamcc: check failed: {exc}", file=sys.stderr)
        return CHECK_FAILURE
    except (
        ParameterError,
        InvalidInstanceError,
        StreamFormatError,
        OracleCapacityError,
        FileNotFoundError,
    ) as exc:
        print(f"streamcc: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
