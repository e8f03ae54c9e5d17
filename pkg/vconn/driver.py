"""Vertex connectivity of undirected graphs.

`detect_below_k` sparsifies `G` to a k-certificate and runs the two
detectors on it. `vertex_connectivity` binary searches `k` over these probes,
keeping the best (always valid) cut ever seen.
Each probe may miss (it is Monte Carlo), in which case the result is too large,
but never too small.
"""

import math

from vconn.certificate import k_certificate
from vconn.graphs import (COMPLETE, ConnectivityResult, InvalidQuery, VertexCut,
                          articulation_cut, best_cut, components, cut_from_separator,
                          is_complete, is_connected, min_degree_cut, sentinel,
                          validate_vertex_cut)
from vconn.isolating import detect_nonscratch
from vconn.kernel import detect_scratch
from vconn.stats import RunStats
from vconn.vc_config import RunConfig

NO_CUT = sentinel("NO_CUT")
"""Answer of a probe that found no cut (of any size)."""


def detect_below_k(G, k, config=None, stats=None):
    """A valid cut of `G`, with `|S| < k` (w.h.p.) if `κ(G) < k`; else `NO_CUT`.

    Example:
    >>> from vconn.families import cycle
    >>> detect_below_k(cycle(6), 3).size
    2
    """
    conf = config or RunConfig()
    stats = stats or RunStats()
    if not 1 <= k <= G.n - 1:
        raise InvalidQuery(f"The probe k={k} is outside [1, {G.n - 1}].")
    with stats.phase("certificate"):
        H = k_certificate(G, k).H
    cuts = [detect_scratch(H, k, conf, stats), detect_nonscratch(H, k, conf, stats)]
    cuts = [_in_original(G, c) for c in cuts if c is not None]
    valid = [c for c in cuts if c is not None and validate_vertex_cut(G, c)]
    return best_cut(valid) or NO_CUT


def _in_original(G, cut):
    """A cut of `G` from a cut of its certificate.

    The separator of a small cut of the certificate also separates `G`,
    but `G` may join some of the components on either side.
    """
    if validate_vertex_cut(G, cut):
        return cut
    return cut_from_separator(G, {min(cut.L)}, cut.S)


def search_kappa(probe, best, lo, stats):
    """Binary search for the smallest cut, given `best` and the lower bound `lo`.

    `probe(k)` returns a valid cut (hopefully with `|S| < k`) or `NO_CUT`.
    A probe answering with nothing below `k` raises `lo` to `k`.
    Once the search closes, `k = |best.S|` is probed once more;
    if that finds a smaller cut, the search is reopened from `lo`.
    """
    floor = lo
    hi = best.size
    reopened = False
    while True:
        while lo < hi:
            k = (lo + hi + 1) // 2
            cut = probe(k)
            stats.probe(k, None if cut is NO_CUT else cut)
            if cut is not NO_CUT:
                best = best_cut([best, cut])
            if best.size < k:
                hi = best.size
            else:
                lo = k
        if reopened or hi <= floor:
            return best
        reopened = True
        cut = probe(hi)
        stats.probe(hi, None if cut is NO_CUT else cut)
        if cut is NO_CUT or cut.size >= hi:
            return best
        best = best_cut([best, cut])
        hi, lo = best.size, floor


def accounting_bound(G, config):
    return config.accounting_bound * max(G.m, 1) * math.ceil(math.log2(max(G.n, 2)))**5


def vertex_connectivity(G, config=None, stats=None):
    """The vertex connectivity κ of `G`, with a minimum cut (or `COMPLETE`) as witness.

    Parameters
    ----------
    G: UndirectedGraph
    config: RunConfig, optional
        Seed and constants. Default: `RunConfig()`.
    stats: RunStats, optional
        Filled in with the flow accounting, timings and the search transcript.

    Example:
    >>> from vconn.families import cycle, complete
    >>> vertex_connectivity(cycle(7)).kappa
    2
    >>> vertex_connectivity(complete(5))
    ConnectivityResult(kappa=4, witness=COMPLETE)
    """
    conf = config or RunConfig()
    stats = stats or RunStats(verbose=conf.verbose)
    if G.directed:
        raise InvalidQuery("Use directed_vertex_connectivity for digraphs.")
    if G.n < 2:
        raise InvalidQuery("Vertex connectivity needs at least two vertices.")
    if is_complete(G):
        return ConnectivityResult(G.n - 1, COMPLETE)
    if not is_connected(G):
        L = components(G)[0]
        return ConnectivityResult(0, VertexCut(L, (), frozenset(G.vertices) - L))
    cut = articulation_cut(G)
    if cut is not None:
        return ConnectivityResult(1, cut)

    with stats.counting():
        best = search_kappa(lambda k: detect_below_k(G, k, conf, stats),
                            min_degree_cut(G), 2, stats)
    stats.soft_bound("flow edges", stats.flows.total_edges, accounting_bound(G, conf))
    assert validate_vertex_cut(G, best)
    return ConnectivityResult(best.size, best)
