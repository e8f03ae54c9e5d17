"""Exact (slow) vertex connectivity, as the reference for the randomized algorithms.

- `oracle_vertex_connectivity` and `oracle_directed` minimise `s`-`t` maxflows.
- `oracle_exhaustive` enumerates candidate separators by increasing size,
  and uses no flows at all.
"""

import itertools

from vconn.graphs import (COMPLETE, ConnectivityResult, InvalidQuery, VertexCut,
                          best_cut, components, cut_from_separator, is_complete,
                          is_connected, is_strongly_connected, sink_component)
from vconn.maxflow import st_vertex_connectivity

OracleResult = ConnectivityResult

EXHAUSTIVE_LIMIT = 12


def _trivial(G):
    """The result for complete or disconnected input, else `None`."""
    if G.n < 2:
        raise InvalidQuery("Vertex connectivity needs at least two vertices.")
    if is_complete(G):
        return OracleResult(G.n - 1, COMPLETE)
    if G.directed and not is_strongly_connected(G):
        L = sink_component(G)
        return OracleResult(0, VertexCut(L, (), frozenset(G.vertices) - L))
    if not G.directed and not is_connected(G):
        L = components(G)[0]
        return OracleResult(0, VertexCut(L, (), frozenset(G.vertices) - L))
    return None


def _pair_cuts(G, pairs, engine):
    for s, t in pairs:
        res = st_vertex_connectivity(G, s, t, engine)
        yield cut_from_separator(G, {s}, res.separator)


def oracle_vertex_connectivity(G, engine=None):
    """Minimum over sources `s` (the `δ + 1` lowest ids) and non-neighbours `t`.

    Some vertex among any `δ + 1` lies outside a minimum separator,
    hence on one of its sides, and the other side holds a non-neighbour.

    Example:
    >>> from vconn.families import cycle
    >>> oracle_vertex_connectivity(cycle(6)).kappa
    2
    """
    if G.directed:
        raise InvalidQuery("Use oracle_directed for digraphs.")
    trivial = _trivial(G)
    if trivial:
        return trivial
    sources = range(min(G.n, int(G.degrees.min()) + 1))
    pairs = [(s, t) for s in sources for t in G.vertices
             if t != s and not G.has_edge(s, t)]
    best = best_cut(_pair_cuts(G, pairs, engine))
    return OracleResult(best.size, best)


def oracle_directed(G, engine=None):
    """Minimum over all ordered pairs `(s, t)` without the arc `s -> t`.

    Example:
    >>> from vconn.families import directed_cycle
    >>> oracle_directed(directed_cycle(4)).kappa
    1
    """
    if not G.directed:
        raise InvalidQuery("Use oracle_vertex_connectivity for undirected graphs.")
    trivial = _trivial(G)
    if trivial:
        return trivial
    pairs = [(s, t) for s in G.vertices for t in G.vertices
             if t != s and not G.has_edge(s, t)]
    best = best_cut(_pair_cuts(G, pairs, engine))
    return OracleResult(best.size, best)


def _split_by(G, S):
    """A cut with separator `S`, if removing `S` disconnects the rest."""
    if G.directed:
        L = sink_component(G, S)
    else:
        L = components(G, S)[0]
    R = frozenset(G.vertices) - L - S
    return VertexCut(L, S, R) if R else None


def oracle_exhaustive(G, limit=EXHAUSTIVE_LIMIT):
    """Smallest `S` (lexicographically first among those) whose removal
    disconnects the rest (or makes it not strongly connected).

    Example:
    >>> from vconn.families import path, complete
    >>> oracle_exhaustive(path(4)).witness
    VertexCut(L=frozenset({0}), S=frozenset({1}), R=frozenset({2, 3}))
    >>> oracle_exhaustive(complete(3))
    ConnectivityResult(kappa=2, witness=COMPLETE)
    """
    if G.n > limit:
        raise InvalidQuery(f"Exhaustive search is limited to n <= {limit}, got {G.n}.")
    if G.n < 2:
        raise InvalidQuery("Vertex connectivity needs at least two vertices.")
    for size in range(G.n - 1):
        for S in itertools.combinations(G.vertices, size):
            cut = _split_by(G, frozenset(S))
            if cut is not None:
                return OracleResult(size, cut)
    return OracleResult(G.n - 1, COMPLETE)
