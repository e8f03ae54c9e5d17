"""Benchmark: compare the randomized algorithms with the oracles over a seeded corpus.

For each graph, records whether κ agrees with the oracle, whether the witness
validates, and the ratio of the flow edges solved to the accounting bound
`C m ceil(log2 n)^5`. Every solved flow network is also logged,
for the per-call CSV.
"""

import csv
import time

from tabulate import tabulate

from vconn import families
from vconn.directed import directed_vertex_connectivity
from vconn.driver import accounting_bound, vertex_connectivity
from vconn.graphs import validate_vertex_cut
from vconn.oracle import oracle_directed, oracle_vertex_connectivity
from vconn.stats import RunStats
from vconn.tools.multiproc import Pool
from vconn.tools.progressbar import progbar
from vconn.tools.seeding import substream
from vconn.vc_config import RunConfig

DENSITIES = (0.1, 0.3, 0.6)


def structured():
    """The families with known κ."""
    return [
        ("C8", families.cycle(8)),
        ("K6", families.complete(6)),
        ("K3,4", families.complete_bipartite(3, 4)),
        ("petersen", families.petersen()),
        ("Q3", families.hypercube(3)),
        ("Q4", families.hypercube(4)),
        ("barbell", families.barbell(5)),
        ("W7", families.wheel(7)),
    ]


def corpus(size=500, seed=0, directed=False):
    """Named graphs: `size` random ones, then (if undirected) the structured families.

    Random graphs have `n` in `[4, 40]` (`[4, 25]` for digraphs)
    and edge probability in `DENSITIES`.
    """
    graphs = []
    n_max = 25 if directed else 40
    for i in range(size):
        rng = substream(seed, "corpus", i)
        n = int(rng.integers(4, n_max + 1))
        p = DENSITIES[i % len(DENSITIES)]
        if directed:
            graphs.append((f"D({n},{p})#{i}", families.random_digraph(n, p, seed=i)))
        else:
            graphs.append((f"G({n},{p})#{i}", families.gnp(n, p, seed=i)))
    if not directed:
        graphs += structured()
    return graphs


def run_one(name, G, config):
    """Run the algorithm and its oracle on `G`.

    Returns a row (dict) and the flow log.
    """
    stats = RunStats(keep_log=True)
    t0 = time.perf_counter()
    if G.directed:
        result = directed_vertex_connectivity(G, config=config, stats=stats)
        truth = oracle_directed(G)
    else:
        result = vertex_connectivity(G, config=config, stats=stats)
        truth = oracle_vertex_connectivity(G)
    seconds = time.perf_counter() - t0
    valid = result.is_complete or validate_vertex_cut(G, result.witness)
    row = dict(
        graph=name, n=G.n, m=G.m, kappa=result.kappa, oracle=truth.kappa,
        agree=result.kappa == truth.kappa, valid=valid,
        flows=stats.flows.calls, flow_edges=stats.flows.total_edges,
        ratio=stats.flows.total_edges / accounting_bound(G, config),
        seconds=seconds,
    )
    return row, list(stats.flows.log)


def run_bench(size=500, seed=0, directed=False, threads=1, config=None):
    """Run the whole corpus (graphs in parallel if `threads > 1`).

    Returns
    -------
    rows: list of dict
    calls: list of `(graph, call, vertices, edges)`
    """
    conf = (config or RunConfig()).replace(seed=seed, threads=1)
    graphs = corpus(size, seed, directed)

    def task(item):
        return run_one(*item, conf)

    with Pool(threads) as pool:
        results = list(progbar(pool.map(task, graphs), desc="Bench", total=len(graphs)))

    rows, calls = [], []
    for row, log in results:
        rows.append(row)
        calls += [(row["graph"], i, v, e) for i, (v, e) in enumerate(log)]
    return rows, calls


def summary(rows):
    """Table of agreement, validity and accounting over the corpus."""
    count = len(rows)
    table = [
        ["graphs", count],
        ["kappa = oracle", f"{sum(r['agree'] for r in rows) / max(count, 1):.1%}"],
        ["valid witness", f"{sum(r['valid'] for r in rows) / max(count, 1):.1%}"],
        ["max accounting ratio", f"{max((r['ratio'] for r in rows), default=0):.3g}"],
        ["maxflow calls", sum(r["flows"] for r in rows)],
        ["seconds", f"{sum(r['seconds'] for r in rows):.1f}"],
    ]
    disagree = [r["graph"] for r in rows if not r["agree"]]
    if disagree:
        table.append(["disagreements", ", ".join(disagree)])
    return tabulate(table, ["", "value"])


def write_calls(calls, file):
    """CSV of the solved flow networks: graph, call, vertices, edges."""
    writer = csv.writer(file, lineterminator="\n")
    writer.writerow(["graph", "call", "vertices", "edges"])
    writer.writerows(calls)
