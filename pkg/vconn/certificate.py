"""Sparse k-connectivity certificates by scan-first forest decomposition.

A single maximum-adjacency scan numbers the edges: when vertex `x` is scanned,
each edge to an unscanned neighbour `y` goes to forest `r(y) + 1`,
and `r(y)` is incremented. The union of the first `k` forests has at most
`n k` edges and keeps every vertex cut with a separator smaller than `k`.
"""

import heapq
from dataclasses import dataclass

from vconn.graphs import InvalidQuery, UndirectedGraph


@dataclass(frozen=True)
class Certificate:
    """The subgraph `H` of `G` preserving vertex cuts of size `< k`."""

    H: UndirectedGraph
    k: int


def forest_index(G):
    """Map each edge `(u, v)`, `u < v`, to its forest number (1-based).

    Scans the unscanned vertex of largest `r`, breaking ties by lowest id.

    Example:
    >>> K3 = UndirectedGraph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    >>> forest_index(K3)
    {(0, 1): 1, (0, 2): 1, (1, 2): 2}
    """
    r = [0] * G.n
    scanned = [False] * G.n
    index = {}
    heap = [(0, v) for v in G.vertices]
    heapq.heapify(heap)
    while heap:
        neg_r, x = heapq.heappop(heap)
        if scanned[x] or -neg_r != r[x]:
            continue  # stale entry
        scanned[x] = True
        for y in G.neighbors(x):
            if not scanned[y]:
                r[y] += 1
                index[(min(x, y), max(x, y))] = r[y]
                heapq.heappush(heap, (-r[y], y))
    return index


def k_certificate(G, k):
    """Union of the first `k` scan-first forests of `G`.

    Example:
    >>> from vconn.families import complete
    >>> cert = k_certificate(complete(5), 2)
    >>> cert.H.m <= 5 * 2
    True
    """
    if k < 1:
        raise InvalidQuery(f"The certificate parameter must be >= 1, got {k}.")
    edges = [e for e, i in forest_index(G).items() if i <= k]
    return Certificate(UndirectedGraph.from_edges(G.n, edges, G.labels), k)
