"""Vertex connectivity of digraphs.

The kernelization of `vconn.kernel` runs unchanged on out-neighbourhoods
(without the cap on the search). A probe of `k` looks, in both `G` and
its reverse, for cuts with a small side `L` (`|L| <= l`, and `|L| <= n/10`
when `k >= n/2`) via kernels, and for the other cuts via random source/sink pairs.
"""

import math
import warnings

import numpy as np

from vconn.driver import NO_CUT, accounting_bound, search_kappa
from vconn.graphs import (COMPLETE, ConnectivityResult, InvalidQuery, VertexCut,
                          best_cut, cut_from_separator, is_complete,
                          is_strongly_connected, min_degree_cut, neighborhood_cut,
                          sink_component, validate_vertex_cut)
from vconn.kernel import (build_neighbor_oracle, kernel_cuts, scratch_samples,
                          sketchy_search)
from vconn.maxflow import st_vertex_connectivity
from vconn.stats import RunStats
from vconn.tools.seeding import substream
from vconn.vc_config import RunConfig


def default_l(n, m):
    """`n^(1/8)` for sparse digraphs (`m <= n^1.5`), else `m^(3/4) / n`.

    Rounded, and clamped to `[1, max(1, n // 10)]`.

    Example:
    >>> default_l(10_000, 50_000), default_l(100, 100), default_l(5, 20)
    (3, 2, 1)
    """
    ell = n**(1 / 8) if m <= n**1.5 else m**0.75 / n
    return int(min(max(1, round(ell)), max(1, n // 10)))


def directed_sketchy_search(oracle, x, T, bad):
    """The directed kernel of `(x, T)`, or `BOT`. The search is not capped."""
    return sketchy_search(oracle, x, T, bad, cap=None)


def detect_unbalanced_directed(G, a, k, config=None, stats=None, key=()):
    """Find a cut with `|S| < k` if `G` has one with `|L| <= a`.

    Returns the best valid cut found, falling back to the minimum-degree cut
    (or immediately to the out-neighbourhood cut of a vertex of out-degree `< k`).
    Returns `None` only for complete digraphs.
    """
    conf = config or RunConfig()
    stats = stats or RunStats()
    if not 1 <= a <= G.n:
        raise InvalidQuery(f"The side bound a={a} is outside [1, {G.n}].")
    out_degrees = [G.out_degree(v) for v in G.vertices]
    v = int(np.argmin(out_degrees))
    if out_degrees[v] < k:
        cut = neighborhood_cut(G, v)
        if cut is not None:
            return cut
    best = min_degree_cut(G)
    if best is None:
        return None
    lnn = math.log(max(G.n, 2))
    key = ("directed",) + tuple(key)
    with stats.phase("directed kernels"), stats.counting():
        level, i = 1, 0
        while level <= a:
            oracle = build_neighbor_oracle(G, k, level, conf.seed,
                                           key + (a, k, i), conf)
            bound = conf.directed_kernel_bound * G.n * level * math.ceil(lnn)
            for params in scratch_samples(G, k, level, conf, key + (a,)):
                cuts = kernel_cuts(G, oracle, params, None, conf, stats, bound)
                best = best_cut([best, *cuts])
            level, i = 2 * level, i + 1
    return best


def random_pair_cuts(G, count, seed, key=(), engine=None):
    """Separator cuts of `count` random ordered pairs `(s, t)` with no arc `s -> t`."""
    rng = substream(seed, "pairs", *key)
    for _ in range(count):
        s, t = map(int, rng.integers(G.n, size=2))
        if s == t or G.has_edge(s, t):
            continue
        res = st_vertex_connectivity(G, s, t, engine)
        cut = cut_from_separator(G, {s}, res.separator)
        if cut is not None:
            yield cut


def _probe(G, GR, k, ell, conf, stats):
    n = G.n
    p = math.ceil(conf.pair_factor * n / ell * math.log(max(n, 2)))
    cuts = []
    for side, H in [("forward", G), ("reverse", GR)]:
        found = [detect_unbalanced_directed(H, ell, k, conf, stats, (side,))]
        if k >= n / 2:
            found.append(detect_unbalanced_directed(H, max(1, n // 10), k, conf, stats,
                                                    (side, "extreme")))
        with stats.phase("pairs"), stats.counting():
            found += random_pair_cuts(H, p, conf.seed, (k, side), conf.flow)
        if H is GR:
            found = [c.reversed() for c in found if c is not None]
        cuts += found
    valid = [c for c in cuts if c is not None and validate_vertex_cut(G, c)]
    return best_cut(valid) or NO_CUT


def directed_vertex_connectivity(G, l=None, config=None, stats=None):
    """The vertex connectivity κ of the digraph `G`, with a witness.

    Parameters
    ----------
    G: DirectedGraph
    l: int, optional
        Bound on the small side handled by kernels. Default: `default_l`.

    Example:
    >>> from vconn.families import directed_cycle, complete_digraph
    >>> directed_vertex_connectivity(directed_cycle(6)).kappa
    1
    >>> directed_vertex_connectivity(complete_digraph(4))
    ConnectivityResult(kappa=3, witness=COMPLETE)
    """
    conf = config or RunConfig()
    stats = stats or RunStats(verbose=conf.verbose)
    if not G.directed:
        raise InvalidQuery("Use vertex_connectivity for undirected graphs.")
    if G.n < 2:
        raise InvalidQuery("Vertex connectivity needs at least two vertices.")
    if is_complete(G):
        return ConnectivityResult(G.n - 1, COMPLETE)
    if not is_strongly_connected(G):
        L = sink_component(G)
        return ConnectivityResult(0, VertexCut(L, (), frozenset(G.vertices) - L))
    ell = default_l(G.n, G.m) if l is None else int(l)
    if not 1 <= ell <= G.n:
        raise InvalidQuery(f"The parameter l={ell} is outside [1, {G.n}].")
    if l is not None and not 2 <= ell <= G.n / 10:
        warnings.warn(f"l={ell} lies outside [2, n/10] = [2, {G.n / 10:g}];"
                      " the running-time bounds assume it does not.", stacklevel=2)

    GR = G.reverse()
    with stats.counting():
        best = search_kappa(lambda k: _probe(G, GR, k, ell, conf, stats),
                            min_degree_cut(G), 1, stats)
    stats.soft_bound("flow edges", stats.flows.total_edges, accounting_bound(G, conf))
    assert validate_vertex_cut(G, best)
    assert validate_vertex_cut(GR, best.reversed())
    return ConnectivityResult(best.size, best)

