"""Catalogue of graphs: structured families, random graphs and planted cuts.

The structured families have known vertex connectivity:

| family                       | κ          |
|------------------------------|------------|
| `cycle(n)`, n ≥ 4            | 2          |
| `complete(n)`                | n - 1      |
| `complete_bipartite(a, b)`   | min(a, b)  |
| `petersen()`                 | 3          |
| `hypercube(d)`               | d          |
| `barbell(c)`                 | 1          |
| `wheel(n)`                   | 3          |
| `directed_cycle(n)`          | 1          |
| `complete_digraph(n)`        | n - 1      |

Random generators take a `seed` and are reproducible.
"""

import networkx as nx
import numpy as np

from vconn.graphs import DirectedGraph, UndirectedGraph, VertexCut, from_networkx
from vconn.tools.seeding import substream


#########################################
# Structured
#########################################
def path(n):
    return from_networkx(nx.path_graph(n))


def cycle(n):
    return from_networkx(nx.cycle_graph(n))


def star(leaves):
    """Centre 0, leaves `1..leaves`."""
    return from_networkx(nx.star_graph(leaves))


def wheel(n):
    """Hub 0 and a rim cycle of `n - 1` vertices."""
    return from_networkx(nx.wheel_graph(n))


def complete(n):
    return from_networkx(nx.complete_graph(n))


def complete_bipartite(a, b):
    return from_networkx(nx.complete_bipartite_graph(a, b))


def petersen():
    return from_networkx(nx.petersen_graph())


def hypercube(d):
    return from_networkx(nx.hypercube_graph(d))


def barbell(clique=5):
    """Two cliques and a hub `c = 2*clique` adjacent to all of them.

    The hub is the only minimum separator.
    """
    c = 2 * clique
    g = nx.disjoint_union(nx.complete_graph(clique), nx.complete_graph(clique))
    g.add_edges_from((c, v) for v in range(c))
    return from_networkx(g)


def two_disjoint_edges():
    return UndirectedGraph.from_edges(4, [(0, 1), (2, 3)])


def directed_cycle(n):
    return from_networkx(nx.cycle_graph(n, create_using=nx.DiGraph))


def complete_digraph(n):
    return from_networkx(nx.complete_graph(n, create_using=nx.DiGraph))


#########################################
# Random
#########################################
def _nx_seed(seed, *key):
    return int(substream(seed, "family", *key).integers(2**31))


def gnp(n, p, seed=0):
    """Erdős–Rényi G(n, p)."""
    g = nx.gnp_random_graph(n, p, seed=_nx_seed(seed, "gnp", n, int(1000 * p)))
    return from_networkx(g)


def random_digraph(n, p, seed=0):
    g = nx.gnp_random_graph(n, p, seed=_nx_seed(seed, "digraph", n, int(1000 * p)),
                            directed=True)
    return from_networkx(g)


def tournament(n, seed=0):
    g = nx.tournament.random_tournament(n, seed=_nx_seed(seed, "tournament", n))
    return from_networkx(g)


def random_independent_set(G, size, seed=0):
    """A random independent set of (at most) `size` vertices."""
    rng = substream(seed, "independent", G.n, size)
    chosen = []
    for v in rng.permutation(G.n):
        v = int(v)
        if all(not G.has_edge(v, u) for u in chosen):
            chosen.append(v)
            if len(chosen) == size:
                break
    return sorted(chosen)


def planted_cut(l, s, r, p_ls=1.0, p_sr=1.0, seed=0, directed=False):
    """Cliques `L`, `S`, `R` (in this vertex order), with `S` separating `L` and `R`.

    Every `L`-`S` (and `S`-`R`) pair is joined with probability `p_ls` (`p_sr`),
    but each vertex of `L` keeps at least one neighbour in `S`.
    For digraphs, the cliques are complete digraphs, `S` -> `R` and `L` <-> `S`
    arcs are planted, and `R` -> `L` arcs are added, so that the only
    separation is of `L` from `R` (no arc from `L` to `R`).

    Returns
    -------
    (graph, VertexCut)
    """
    rng = substream(seed, "planted", l, s, r, int(1000 * p_ls), int(1000 * p_sr))
    L = range(0, l)
    S = range(l, l + s)
    R = range(l + s, l + s + r)
    edges = []
    for part in (L, S, R):
        edges += [(u, v) for u in part for v in part if u != v]
    for u in L:
        joined = [v for v in S if rng.random() < p_ls] or [int(rng.choice(S))]
        edges += [(u, v) for v in joined] + [(v, u) for v in joined]
    for u in S:
        edges += [(u, v) for v in R if rng.random() < p_sr]
        if directed:
            edges += [(v, u) for v in R]
    if directed:
        edges += [(v, u) for v in R for u in L]
        G = DirectedGraph.from_edges(l + s + r, edges)
    else:
        G = UndirectedGraph.from_edges(l + s + r, edges)
    return G, VertexCut(L, S, R)


def planted_scratch(n, seed=0):
    """`|L| = 2`, `|S| = ceil(n/3) - 1`, `R` the rest: every `L`-`S` pair joined.

    The minimum degree (attained in `L`) is `ceil(n/3)`,
    while `S` is a separator of size `ceil(n/3) - 1`.
    """
    k = int(np.ceil(n / 3))
    return planted_cut(2, k - 1, n - k - 1, seed=seed)
