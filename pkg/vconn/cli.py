"""Command-line interface: `vconn <subcommand> [options] [input]`.

The graph is read from the `input` file, or from stdin.
Reports go to stdout (human-readable, or one JSON object with `--json`),
diagnostics to stderr.

Exit codes: 0 on success, 2 on a usage or input-format error,
3 on an invalid query (e.g. unknown or adjacent terminals).
"""

import argparse
import hashlib
import json
import sys

from struct_tools import AlignedDict

from vconn import __version__
from vconn import bench as _bench
from vconn.certificate import k_certificate
from vconn.directed import directed_vertex_connectivity
from vconn.driver import vertex_connectivity
from vconn.graphs import (FORMATS, GraphFormatError, InvalidQuery, load_graph,
                          serialize, validate_vertex_cut)
from vconn.isolating import isolating_cuts
from vconn.kernel import detect_scratch
from vconn.maxflow import ENGINES, st_vertex_connectivity
from vconn.oracle import oracle_directed, oracle_exhaustive, oracle_vertex_connectivity
from vconn.stats import RunStats
from vconn.tools.colors import diagnose
from vconn.vc_config import RunConfig

EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 2, 3


#########################################
# Parser
#########################################
def _seed(text):
    seed = int(text)
    if seed < 0:
        raise argparse.ArgumentTypeError(f"the seed must be non-negative, got {seed}")
    return seed


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="graph file (default: stdin)")
    common.add_argument("--seed", type=_seed, default=0,
                        help="master seed (default: 0)")
    common.add_argument("--format", choices=FORMATS, default="edge-list")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--stats", action="store_true",
                        help="include flow accounting and timings")
    common.add_argument("--flow", choices=sorted(ENGINES), default=None,
                        help="maxflow engine")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes")
    common.add_argument("--verbose", action="store_true",
                        help="print the search transcript to stderr")

    parser = argparse.ArgumentParser(
        prog="vconn", description="Vertex connectivity via maxflow reductions.")
    parser.add_argument("--version", action="version", version=f"vconn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    def add(name, help):
        return sub.add_parser(name, parents=[common], help=help)

    add("vc", "vertex connectivity of an undirected graph")
    p = add("vc-directed", "vertex connectivity of a digraph")
    p.add_argument("--l", type=int, default=None, help="small-side bound ℓ")
    p = add("stcut", "minimum s-t separator")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--directed", action="store_true")
    p = add("isolating", "isolating cuts of a set of terminals")
    p.add_argument("--terminals", required=True,
                   help="file of whitespace-separated terminal ids")
    p = add("scratch", "detector of cuts with a small side")
    p.add_argument("--k", type=int, required=True)
    p = add("certificate", "sparse certificate for cuts of size < k")
    p.add_argument("--k", type=int, required=True)
    p = add("oracle", "exact vertex connectivity (slow)")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--exhaustive", action="store_true",
                   help="enumerate separators instead of maxflows (n <= 12)")
    p = add("bench", "compare with the oracle over a seeded corpus")
    p.add_argument("--size", type=int, default=500, help="number of random graphs")
    p.add_argument("--directed", action="store_true")
    return parser


#########################################
# Helpers
#########################################
def _read(path):
    if path is None or path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def _config(args):
    overrides = dict(seed=args.seed)
    if args.flow:
        overrides["flow"] = args.flow
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.verbose:
        overrides["verbose"] = True
    return RunConfig().replace(**overrides)


def _labels(G, vertices):
    return sorted(G.label(v) for v in vertices)


def _cut_report(G, result):
    if result.is_complete:
        return dict(kappa=result.kappa, complete=True)
    cut = result.witness
    assert validate_vertex_cut(G, cut), "refusing to print an invalid cut"
    return dict(kappa=result.kappa, cut=cut.labelled(G.labels))


def _emit(args, report, stats=None, out=None):
    out = out or sys.stdout
    if args.stats and stats is not None:
        report["stats"] = stats.as_dict()
    if args.json:
        print(json.dumps(report), file=out)
        return
    human = {k: v for k, v in report.items() if k != "stats"}
    print(AlignedDict(human), file=out)
    if args.stats and stats is not None:
        print(stats.summary(), file=out)


#########################################
# Subcommands
#########################################
def cmd_vc(args, G, conf, stats):
    return dict(algorithm="vc", **_cut_report(G, vertex_connectivity(G, conf, stats)))


def cmd_vc_directed(args, G, conf, stats):
    result = directed_vertex_connectivity(G, args.l, conf, stats)
    return dict(algorithm="vc-directed", **_cut_report(G, result))


def cmd_stcut(args, G, conf, stats):
    s, t = G.index_of(args.s), G.index_of(args.t)
    with stats.counting():
        res = st_vertex_connectivity(G, s, t, conf.flow)
    return dict(algorithm="stcut", value=res.value,
                separator=_labels(G, res.separator),
                source_side=_labels(G, res.source_side))


def cmd_isolating(args, G, conf, stats):
    try:
        with open(args.terminals) as f:
            labels = [int(tok) for tok in f.read().split()]
    except ValueError as error:
        raise GraphFormatError(f"terminals: {error}") from None
    res = isolating_cuts(G, [G.index_of(lb) for lb in labels], conf.flow, stats, conf)
    cuts = [dict(terminal=G.label(v), size=res.size(v), separator=_labels(G, res[v]))
            for v in res]
    return dict(algorithm="isolating", cuts=cuts)


def cmd_scratch(args, G, conf, stats):
    if not 1 <= args.k <= G.n - 1:
        raise InvalidQuery(f"--k must lie in [1, {G.n - 1}].")
    cut = detect_scratch(G, args.k, conf, stats)
    if cut is None:
        return dict(algorithm="scratch", k=args.k, complete=True)
    assert validate_vertex_cut(G, cut)
    return dict(algorithm="scratch", k=args.k, size=cut.size,
                below_k=cut.size < args.k, cut=cut.labelled(G.labels))


def cmd_certificate(args, G, conf, stats):
    with stats.phase("certificate"):
        H = k_certificate(G, args.k).H
    if args.json:
        edges = [[G.label(u), G.label(v)] for u, v in H.edges()]
        return dict(algorithm="certificate", k=args.k, m=H.m, edges=edges)
    sys.stdout.write(serialize(H, args.format))
    return None


def cmd_oracle(args, G, conf, stats):
    with stats.counting():
        if args.exhaustive:
            result = oracle_exhaustive(G)
        elif G.directed:
            result = oracle_directed(G, conf.flow)
        else:
            result = oracle_vertex_connectivity(G, conf.flow)
    name = "oracle-exhaustive" if args.exhaustive else "oracle"
    return dict(algorithm=name, **_cut_report(G, result))


def cmd_bench(args, conf):
    rows, calls = _bench.run_bench(args.size, args.seed, args.directed,
                                   conf.threads, conf)
    print(_bench.summary(rows), file=sys.stderr)
    if args.json:
        print(json.dumps(dict(algorithm="bench", seed=args.seed, rows=rows)))
    else:
        _bench.write_calls(calls, sys.stdout)
    return EXIT_OK


COMMANDS = {
    "vc": cmd_vc,
    "vc-directed": cmd_vc_directed,
    "stcut": cmd_stcut,
    "isolating": cmd_isolating,
    "scratch": cmd_scratch,
    "certificate": cmd_certificate,
    "oracle": cmd_oracle,
}

DIRECTED = {"vc-directed"}


def run_cli(argv=None):
    """Run the CLI on `argv` (default: `sys.argv[1:]`). Returns the exit code."""
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return stop.code or EXIT_OK

    try:
        conf = _config(args)
        if args.command == "bench":
            return cmd_bench(args, conf)
        raw = _read(args.input)
        directed = args.command in DIRECTED or getattr(args, "directed", False)
        G = load_graph(raw, args.format, directed)
        stats = RunStats(verbose=conf.verbose)
        report = COMMANDS[args.command](args, G, conf, stats)
        if report is not None:
            report.update(seed=args.seed,
                          input_digest=hashlib.sha256(raw).hexdigest())
            _emit(args, report, stats)
    except GraphFormatError as error:
        diagnose(f"vconn: error: {error}", color="red")
        return EXIT_USAGE
    except InvalidQuery as error:
        diagnose(f"vconn: invalid query: {error}", color="red")
        return EXIT_INVALID
    except OSError as error:
        diagnose(f"vconn: error: {error}", color="red")
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run_cli())
