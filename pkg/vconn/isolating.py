"""Isolating vertex cuts, and the detector of cuts whose sides are both large.

`isolating_cuts` finds, for every terminal `v` of an independent set `I`,
a minimum separator between `v` and the rest of `I`,
using `O(log |I|)` maxflows on `G` plus one local maxflow per terminal,
whose networks are disjoint up to the separators.
"""

import math
from dataclasses import dataclass, field

from vconn.graphs import (InvalidQuery, VertexCut, components, min_degree_cut,
                          validate_vertex_cut)
from vconn.maxflow import set_vertex_connectivity, st_vertex_connectivity
from vconn.stats import RunStats
from vconn.tools.multiproc import Pool
from vconn.tools.seeding import sample_rate, substream
from vconn.vc_config import RunConfig


@dataclass
class IsolatingResult:
    """Per terminal `v`: its minimum separator `C_v` and the side `S_v` it cuts off.

    `N(S_v) = C_v`, and `S_v ∩ I = {v}`.
    """

    separators: dict = field(default_factory=dict)
    sides: dict = field(default_factory=dict)

    def __getitem__(self, v):
        return self.separators[v]

    def __iter__(self):
        return iter(self.separators)

    def __len__(self):
        return len(self.separators)

    def size(self, v):
        return len(self.separators[v])

    def cut(self, G, v):
        """`(S_v, C_v, rest)`, or `None` if the rest is empty."""
        S, C = self.sides[v], self.separators[v]
        R = frozenset(G.vertices) - S - C
        return VertexCut(S, C, R) if R else None


@dataclass(frozen=True)
class SamplingPlan:
    """The independent terminal sets of one grid cell `(i, j)`."""

    i: int
    j: int
    T: frozenset
    T_low: frozenset

    def terminal_sets(self, G):
        return [greedy_mis(G, self.T), greedy_mis(G, self.T_low)]


def greedy_mis(G, T):
    """Maximal independent subset of `T`, greedily in ascending id order.

    Example:
    >>> from vconn.families import path
    >>> greedy_mis(path(5), range(5))
    [0, 2, 4]
    """
    chosen = []
    taken = set()
    for v in sorted(T):
        if v not in taken:
            chosen.append(v)
            taken.add(v)
            taken.update(G.neighbors(v))
    return chosen


def _local_network(G, U, NU):
    """`G[U ∪ N(U)]` minus the edges inside `N(U)`, plus a sink joined to `N(U)`.

    Returns the network and its vertex list (the sink is last).
    """
    order = sorted(U) + sorted(NU)
    index = {v: i for i, v in enumerate(order)}
    t = len(order)
    edges = [(index[u], index[w]) for u in U for w in G.neighbors(u)]
    edges += [(index[w], t) for w in NU]
    return type(G).from_edges(t + 1, edges), order


def isolating_cuts(G, I, engine=None, stats=None, config=None):
    """Minimum `(v, I - v)`-separators for all `v` in the independent set `I`.

    Rounds: the terminals are numbered in sorted order, and for each bit of
    the numbers, a minimum separator between the terminals with the bit unset
    and those with it set is computed. Removing all of these separators leaves
    each terminal `v` in a component `U_v` free of other terminals.
    The separator of `v` is then a minimum `v`-`N(U_v)` separator,
    computed locally on `U_v ∪ N(U_v)`.

    Example:
    >>> from vconn.families import star
    >>> res = isolating_cuts(star(4), [1, 2, 3, 4])
    >>> [sorted(res[v]) for v in res]
    [[0], [0], [0], [0]]
    """
    conf = config or RunConfig()
    engine = engine or conf.flow
    stats = stats or RunStats()
    I = sorted(set(map(int, I)))
    if len(I) < 2:
        raise InvalidQuery("At least two terminals are required.")
    for v in I:
        if not 0 <= v < G.n:
            raise InvalidQuery(f"Unknown vertex: {v}")
    if any(G.has_edge(u, v) for u in I for v in I):
        raise InvalidQuery("The terminals must be an independent set.")

    flows0 = stats.flows.total_edges
    with stats.phase("isolating"), stats.counting():
        removed = set()
        for bit in range(math.ceil(math.log2(len(I)))):
            A = [v for idx, v in enumerate(I) if not (idx >> bit) & 1]
            B = [v for idx, v in enumerate(I) if (idx >> bit) & 1]
            if A and B:
                removed |= set_vertex_connectivity(G, A, B, engine).separator

        result = IsolatingResult()
        terminals = set(I)
        for U in components(G, removed):
            mine = U & terminals
            if not mine:
                continue
            [v] = mine
            NU = G.neighborhood(U)
            H, order = _local_network(G, U, NU)
            res = st_vertex_connectivity(H, order.index(v), H.n - 1, engine)
            result.separators[v] = frozenset(order[w] for w in res.separator)
            result.sides[v] = frozenset(order[w] for w in res.source_side)

    bound = conf.isolating_bound * max(G.m, 1) * max(1, math.ceil(math.log2(len(I))))
    stats.soft_bound("isolating flow edges", stats.flows.total_edges - flows0, bound)
    return result


def sampling_plans(G, k, config=None):
    """The grid `i = 1..log2 n`, `j < J`, of samples at rate `2^-i`.

    `T_low` only samples the vertices of degree at most `low_degree_factor * k`.
    """
    conf = config or RunConfig()
    n = G.n
    low = frozenset(v for v in G.vertices if G.degree(v) <= conf.low_degree_factor * k)
    J = max(conf.nonscratch_floor,
            math.ceil(conf.nonscratch_reps * math.log(max(n, 2))**3))
    for i in range(1, int(math.log2(max(n, 2))) + 1):
        for j in range(J):
            T = sample_rate(substream(conf.seed, "nonscratch", k, i, j), n, 2.0**-i)
            T_low = sample_rate(substream(conf.seed, "nonscratch", k, i, j, "low"),
                                n, 2.0**-i)
            yield SamplingPlan(i, j, T, T_low & low)


def _best_isolated(G, key, I, conf, keep_log=False):
    """Task: the best valid cut among the isolating cuts of `I`, and the stats."""
    stats = RunStats(keep_log=keep_log)
    best = None
    with stats.counting(detach=True):
        res = isolating_cuts(G, I, conf.flow, stats, conf)
    for v in res:
        cut = res.cut(G, v)
        if cut is not None and validate_vertex_cut(G, cut):
            rank = (cut.size, key, v)
            if best is None or rank < best[0]:
                best = (rank, cut)
    return best, stats


def detect_nonscratch(G, k, config=None, stats=None):
    """Find a cut with `|S| < k`, if `G` has one whose small side is not tiny.

    `G` should have at most `n k` edges (see `vconn.certificate`).
    Returns the smallest valid cut over the grid of terminal samples
    (ties: lowest `(i, j, v)`), or the minimum-degree cut if that is smaller.
    Returns `None` only for complete graphs.

    Example:
    >>> from vconn.families import cycle
    >>> detect_nonscratch(cycle(6), 3).size
    2
    """
    conf = config or RunConfig()
    stats = stats or RunStats()
    fallback = min_degree_cut(G)
    if fallback is None:
        return None

    tasks, seen = [], set()
    for plan in sampling_plans(G, k, conf):
        for I in plan.terminal_sets(G):
            if len(I) >= 2 and tuple(I) not in seen:
                seen.add(tuple(I))
                tasks.append(((plan.i, plan.j), I))

    keep_log = stats.flows.keep_log

    def task(args):
        return _best_isolated(G, *args, conf, keep_log)

    best = None
    with stats.phase("nonscratch"):
        if conf.early_exit:
            # Sequential and lazy, so that the grid stops at the first hit.
            results = map(task, tasks)
        else:
            with Pool(conf.threads) as pool:
                results = list(pool.map(task, tasks))
        for found, task_stats in results:
            stats.merge(task_stats)
            if found is not None and (best is None or found[0] < best[0]):
                best = found
            if conf.early_exit and best is not None and best[1].size < k:
                break

    if best is None or fallback.size < best[1].size:
        return fallback
    return best[1]
