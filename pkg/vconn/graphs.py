"""Immutable simple graphs, vertex cuts, and the text formats they come in.

Vertices are the dense integers `range(n)`.
The original labels of the input (e.g. the 1-based DIMACS ids, or the
possibly sparse integers of an edge list) are kept in `G.labels`
and only used when reporting results.

Both `UndirectedGraph` and `DirectedGraph` provide `successors` and
`predecessors`, so that reachability, cut validation and flow networks
are written once for both kinds (an undirected edge counts in both directions).
"""

import re
from collections import deque
from dataclasses import dataclass

import networkx as nx
import numpy as np
import scipy.sparse as sparse
from scipy.sparse.csgraph import connected_components


#########################################
# Errors and sentinels
#########################################
class GraphFormatError(ValueError):
    """Malformed graph text."""

    def __init__(self, msg, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)


class EmptyGraphError(GraphFormatError):
    """The input defines no vertices."""


class InvalidQuery(ValueError):
    """A query that violates the contract of the operation."""


class AdjacentTerminals(InvalidQuery):
    """The source and sink (sets) are joined by an edge: no separator exists."""


class Sentinel:
    """A named singleton value, e.g. `COMPLETE`."""

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        # Preserve identity across (dill) pickling.
        return (sentinel, (self.name,))


_SENTINELS = {}


def sentinel(name):
    return _SENTINELS.setdefault(name, Sentinel(name))


COMPLETE = sentinel("COMPLETE")
"""Witness of a complete graph (or complete digraph), which has no vertex cut."""


#########################################
# Cuts
#########################################
@dataclass(frozen=True)
class VertexCut:
    """A partition `(L, S, R)` of the vertices with separator `S`.

    Validity (no edge between `L` and `R`, or no arc from `L` to `R`)
    is relative to a graph; see `validate_vertex_cut`.
    """

    L: frozenset
    S: frozenset
    R: frozenset

    def __post_init__(self):
        for name in "LSR":
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    @property
    def size(self):
        return len(self.S)

    def sort_key(self):
        """Smaller is better: by size, then lexicographically by separator."""
        return (len(self.S), tuple(sorted(self.S)))

    def reversed(self):
        """The same cut, seen in the reverse digraph."""
        return VertexCut(self.R, self.S, self.L)

    def labelled(self, labels=None):
        """Sorted lists of (original) labels, keyed by part."""
        def lbl(part):
            if labels is None:
                return sorted(part)
            return sorted(labels[v] for v in part)
        return {"L": lbl(self.L), "S": lbl(self.S), "R": lbl(self.R)}


@dataclass(frozen=True)
class ConnectivityResult:
    """The vertex connectivity `kappa` and a witness.

    The witness is a `VertexCut` with `|S| = kappa`,
    or `COMPLETE` (then `kappa = n - 1`).
    """

    kappa: int
    witness: object

    @property
    def is_complete(self):
        return self.witness is COMPLETE

    @property
    def cut(self):
        return None if self.is_complete else self.witness


def best_cut(cuts):
    """The smallest cut (ties: smallest separator), ignoring `None`s."""
    cuts = [c for c in cuts if c is not None]
    return min(cuts, key=VertexCut.sort_key, default=None)


#########################################
# Graphs
#########################################
class _Graph:
    """Common ground of the two graph kinds."""

    directed = None

    def __init__(self, n, labels=None):
        self.n = int(n)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != self.n:
                raise ValueError("There must be one label per vertex.")
        self.labels = labels

    @property
    def vertices(self):
        return range(self.n)

    def label(self, v):
        return v if self.labels is None else self.labels[v]

    def index_of(self, label):
        """Inverse of `label`."""
        if self.labels is None:
            if isinstance(label, (int, np.integer)) and 0 <= label < self.n:
                return int(label)
        else:
            try:
                return self._label_index[label]
            except AttributeError:
                self._label_index = {lb: i for i, lb in enumerate(self.labels)}
                return self.index_of(label)
            except KeyError:
                pass
        raise InvalidQuery(f"Unknown vertex: {label}")

    def neighborhood(self, T):
        """`N(T)` (out-neighbourhood for digraphs): successors of `T` outside `T`."""
        T = set(T)
        out = set()
        for u in T:
            out.update(self.successors(u))
        return frozenset(out - T)

    def in_neighborhood(self, T):
        T = set(T)
        out = set()
        for u in T:
            out.update(self.predecessors(u))
        return frozenset(out - T)

    def reachable(self, sources, blocked=()):
        """Vertices reachable from `sources` without entering `blocked`."""
        blocked = set(blocked)
        seen = set(sources) - blocked
        queue = deque(seen)
        while queue:
            u = queue.popleft()
            for w in self.successors(u):
                if w not in seen and w not in blocked:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def to_csr(self, keep=None):
        """Adjacency matrix (arcs in both directions if undirected).

        Vertices outside `keep` (a boolean mask) lose their edges.
        """
        rows, cols = [], []
        for u, v in self.arcs():
            if keep is None or (keep[u] and keep[v]):
                rows.append(u)
                cols.append(v)
        data = np.ones(len(rows), dtype=np.int32)
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def __eq__(self, other):
        return (type(self) is type(other) and self.n == other.n
                and self._key() == other._key())

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, m={self.m})"


def _sorted_lists(n, pairs):
    lists = [set() for _ in range(n)]
    for u, v in pairs:
        lists[u].add(v)
    return tuple(tuple(sorted(s)) for s in lists)


def _check_edges(n, edges):
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"Edge ({u}, {v}) has an endpoint outside [0, {n}).")
        if u != v:
            yield int(u), int(v)


class UndirectedGraph(_Graph):
    """Immutable simple undirected graph.

    Example:
    >>> G = UndirectedGraph.from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 0)])
    >>> G.m, G.neighbors(0)
    (3, (1, 2))
    """

    directed = False

    def __init__(self, adjacency, labels=None):
        super().__init__(len(adjacency), labels)
        self.adjacency = tuple(tuple(a) for a in adjacency)
        self._sets = [frozenset(a) for a in self.adjacency]
        self.m = sum(map(len, self.adjacency)) // 2

    @classmethod
    def from_edges(cls, n, edges, labels=None):
        """Build from any iterable of pairs; loops and repeats are dropped."""
        pairs = []
        for u, v in _check_edges(n, edges):
            pairs += [(u, v), (v, u)]
        return cls(_sorted_lists(n, pairs), labels)

    def _key(self):
        return self.adjacency

    def neighbors(self, v):
        return self.adjacency[v]

    successors = neighbors
    predecessors = neighbors

    def closed_neighbors(self, v):
        return self._sets[v] | {v}

    def degree(self, v):
        return len(self.adjacency[v])

    @property
    def degrees(self):
        return np.fromiter(map(len, self.adjacency), dtype=int, count=self.n)

    def has_edge(self, u, v):
        return v in self._sets[u]

    def edges(self):
        """Each edge once, as `(u, v)` with `u < v`, sorted."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def arcs(self):
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                yield u, v


class DirectedGraph(_Graph):
    """Immutable simple digraph with out- and in-adjacency.

    Example:
    >>> G = DirectedGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    >>> G.out_neighbors(0), G.in_neighbors(0), G.reverse().out_neighbors(0)
    ((1,), (2,), (2,))
    """

    directed = True

    def __init__(self, out_adjacency, in_adjacency=None, labels=None):
        super().__init__(len(out_adjacency), labels)
        self.out_adjacency = tuple(tuple(a) for a in out_adjacency)
        if in_adjacency is None:
            in_adjacency = _sorted_lists(
                self.n, [(v, u) for u, a in enumerate(self.out_adjacency) for v in a])
        self.in_adjacency = tuple(tuple(a) for a in in_adjacency)
        self._sets = [frozenset(a) for a in self.out_adjacency]
        self.m = sum(map(len, self.out_adjacency))

    @classmethod
    def from_edges(cls, n, edges, labels=None):
        pairs = list(_check_edges(n, edges))
        return cls(_sorted_lists(n, pairs), labels=labels)

    def _key(self):
        return self.out_adjacency

    def out_neighbors(self, v):
        return self.out_adjacency[v]

    def in_neighbors(self, v):
        return self.in_adjacency[v]

    successors = out_neighbors
    predecessors = in_neighbors

    def closed_out_neighbors(self, v):
        return self._sets[v] | {v}

    closed_neighbors = closed_out_neighbors

    def out_degree(self, v):
        return len(self.out_adjacency[v])

    def in_degree(self, v):
        return len(self.in_adjacency[v])

    def has_edge(self, u, v):
        return v in self._sets[u]

    def edges(self):
        for u, nbrs in enumerate(self.out_adjacency):
            for v in nbrs:
                yield u, v

    arcs = edges

    def reverse(self):
        """The digraph with every arc flipped."""
        return DirectedGraph(self.in_adjacency, self.out_adjacency, self.labels)


#########################################
# Text formats
#########################################
_INT = re.compile(r"\d+$")


def _lines(text):
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode()
        except UnicodeDecodeError as error:
            lineno = text[:error.start].count(b"\n") + 1
            raise GraphFormatError("the input is not valid UTF-8", lineno) from None
    return text.splitlines()


def _ints(tokens, lineno):
    for tok in tokens:
        if not _INT.match(tok):
            raise GraphFormatError(f"expected a non-negative integer, got '{tok}'",
                                   lineno)
    return [int(t) for t in tokens]


def _read_edge_list(text):
    pairs = []
    for lineno, line in enumerate(_lines(text), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"expected 2 vertex ids, got {len(tokens)}", lineno)
        pairs.append(_ints(tokens, lineno))
    labels = sorted({x for p in pairs for x in p})
    index = {lb: i for i, lb in enumerate(labels)}
    return len(labels), [(index[u], index[v]) for u, v in pairs], labels


def _read_dimacs(text):
    n = None
    pairs = []
    for lineno, line in enumerate(_lines(text), 1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        kind, args = tokens[0], tokens[1:]
        if kind == "p":
            if n is not None:
                raise GraphFormatError("repeated 'p' line", lineno)
            if len(args) != 3:
                raise GraphFormatError("expected 'p edge <n> <m>'", lineno)
            n, _ = _ints(args[1:], lineno)
        elif kind in ("e", "a"):
            if n is None:
                raise GraphFormatError("edge before the 'p' line", lineno)
            if len(args) != 2:
                raise GraphFormatError("expected 'e <u> <v>'", lineno)
            u, v = _ints(args, lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"vertex outside [1, {n}]", lineno)
            pairs.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"unknown line type '{kind}'", lineno)
    if n is None:
        n = 0
    return n, pairs, list(range(1, n + 1))


FORMATS = ("edge-list", "dimacs")


def load_graph(text, format="edge-list", directed=False):
    """Parse a graph.

    Parameters
    ----------
    text: str or bytes
        The input.
    format: str
        `"edge-list"`: one edge per line, two non-negative integers,
        `#`-comments. Labels are remapped to `range(n)` in sorted order.
        `"dimacs"`: `p edge n m` header, `e u v` lines, 1-based.
    directed: bool
        Read `u v` as the arc `u -> v`.

    Self-loops and repeated edges are dropped
    (but a vertex mentioned only in a self-loop is kept).

    Example:
    >>> G = load_graph("0 1\\n0 1\\n0 0")
    >>> G.n, G.m
    (2, 1)
    """
    if format == "edge-list":
        n, pairs, labels = _read_edge_list(text)
    elif format == "dimacs":
        n, pairs, labels = _read_dimacs(text)
    else:
        raise ValueError(f"Unknown format: {format}")
    if n == 0:
        raise EmptyGraphError("the graph has no vertices")
    cls = DirectedGraph if directed else UndirectedGraph
    return cls.from_edges(n, pairs, labels)


def serialize(G, format="edge-list"):
    """Canonical text for `G`, which `load_graph` reads back into an equal graph.

    The edge list uses the original labels and writes an
    isolated vertex `v` as the line `v v`.
    """
    if format == "dimacs":
        lines = [f"p edge {G.n} {G.m}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in G.edges()]
        return "\n".join(lines) + "\n"
    if format != "edge-list":
        raise ValueError(f"Unknown format: {format}")
    lines = [f"{G.label(u)} {G.label(v)}" for u, v in G.edges()]
    touched = {x for e in G.edges() for x in e}
    lines += [f"{G.label(v)} {G.label(v)}" for v in G.vertices if v not in touched]
    return "\n".join(lines) + "\n"


#########################################
# Operations
#########################################
def validate_vertex_cut(G, cut):
    """Whether `cut` is a vertex cut of `G`.

    Checks that `L, S, R` partition the vertices, that `L` and `R` are
    non-empty, and that no edge joins `L` to `R` (no arc from `L` to `R`).

    Example:
    >>> C4 = UndirectedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    >>> validate_vertex_cut(C4, VertexCut({0}, {1, 3}, {2}))
    True
    >>> validate_vertex_cut(C4, VertexCut({0}, {1}, {2, 3}))
    False
    """
    L, S, R = cut.L, cut.S, cut.R
    if not L or not R:
        return False
    if (L & S) or (L & R) or (S & R):
        return False
    if len(L) + len(S) + len(R) != G.n:
        return False
    if any(not (isinstance(v, (int, np.integer)) and 0 <= v < G.n) for v in L | S | R):
        return False
    return not any(w in R for u in L for w in G.successors(u))


def contract_set(G, T):
    """Merge the vertex set `T` into a single new vertex.

    The other vertices keep their relative order (and labels);
    the merged vertex comes last and gets the label of `min(T)`.
    Parallel edges are merged and self-loops dropped.

    Returns
    -------
    (graph, merged_vertex)

    Example:
    >>> P4 = UndirectedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    >>> H, z = contract_set(P4, {1, 2})
    >>> H.n, H.m, z, H.neighbors(z)
    (3, 2, 2, (0, 1))
    """
    T = frozenset(T)
    if not T:
        raise InvalidQuery("Cannot contract an empty set.")
    if not T <= set(G.vertices):
        raise InvalidQuery("The contracted set must consist of vertices of the graph.")
    kept = [v for v in G.vertices if v not in T]
    z = len(kept)
    index = {v: i for i, v in enumerate(kept)}
    index.update({v: z for v in T})
    labels = None
    if G.labels is not None:
        labels = [G.labels[v] for v in kept] + [G.labels[min(T)]]
    edges = {(index[u], index[v]) for u, v in G.edges()}
    return type(G).from_edges(z + 1, edges, labels), z


def is_complete(G):
    """Whether every (ordered, for digraphs) pair of vertices is adjacent."""
    if G.directed:
        return G.m == G.n * (G.n - 1)
    return G.m == G.n * (G.n - 1) // 2


def cut_from_separator(G, sources, separator):
    """Turn a separator into a vertex cut, if it is one.

    `L` are the vertices reachable from `sources` avoiding `separator`,
    `S = N(L)` (a subset of `separator`) and `R` the rest.

    Returns `None` if `sources` meets `separator` or `R` would be empty.
    """
    separator = frozenset(separator)
    sources = frozenset(sources)
    if not sources or sources & separator:
        return None
    L = G.reachable(sources, separator)
    S = G.neighborhood(L)
    R = frozenset(G.vertices) - L - S
    if not R:
        return None
    return VertexCut(L, S, R)


def neighborhood_cut(G, v):
    """The cut `({v}, N(v), rest)`, or `None` if `N[v]` is everything."""
    S = G.neighborhood({v})
    R = frozenset(G.vertices) - S - {v}
    return VertexCut({v}, S, R) if R else None


def in_neighborhood_cut(G, v):
    """The cut `(rest, N_in(v), {v})` of a digraph, or `None`."""
    S = G.in_neighborhood({v})
    L = frozenset(G.vertices) - S - {v}
    return VertexCut(L, S, {v}) if L else None


def min_degree_cut(G):
    """The neighbourhood cut of a minimum-degree vertex (lowest id on ties).

    For digraphs, both out- and in-neighbourhoods are considered.
    Returns `None` for complete graphs.
    """
    if G.directed:
        cuts = [neighborhood_cut(G, v) for v in G.vertices]
        cuts += [in_neighborhood_cut(G, v) for v in G.vertices]
        return best_cut(cuts)
    if G.n == 0:
        return None
    v = int(np.argmin(G.degrees))
    return neighborhood_cut(G, v)


def components(G, removed=()):
    """(Weakly) connected components of `G - removed`, ordered by least vertex."""
    keep = np.ones(G.n, dtype=bool)
    keep[list(removed)] = False
    _, label = connected_components(G.to_csr(keep), directed=True,
                                    connection="weak")
    comps = {}
    for v in np.flatnonzero(keep):
        comps.setdefault(label[v], []).append(int(v))
    return [frozenset(c) for c in comps.values()]


def is_connected(G):
    ncomp, _ = connected_components(G.to_csr(), directed=False)
    return ncomp <= 1


def is_strongly_connected(G):
    ncomp, _ = connected_components(G.to_csr(), directed=True, connection="strong")
    return ncomp <= 1


def sink_component(G, removed=()):
    """A strongly connected component of `G - removed` with no arc leaving it.

    Among those, the one containing the least vertex.
    """
    keep = np.ones(G.n, dtype=bool)
    keep[list(removed)] = False
    _, label = connected_components(G.to_csr(keep), directed=True,
                                    connection="strong")
    leaves = set()
    for u, v in G.arcs():
        if keep[u] and keep[v] and label[u] != label[v]:
            leaves.add(label[u])
    for v in G.vertices:
        if keep[v] and label[v] not in leaves:
            return frozenset(int(w) for w in np.flatnonzero((label == label[v]) & keep))
    return frozenset()


def articulation_cut(G):
    """A cut with a single-vertex separator, or `None` (G assumed connected)."""
    points = sorted(nx.articulation_points(to_networkx(G)))
    if not points:
        return None
    a = points[0]
    comps = components(G, {a})
    L = comps[0]
    return VertexCut(L, {a}, frozenset(G.vertices) - L - {a})


def to_networkx(G):
    g = nx.DiGraph() if G.directed else nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges())
    return g


def from_networkx(g):
    """Convert, numbering the nodes in sorted order."""
    g = nx.convert_node_labels_to_integers(g, ordering="sorted")
    cls = DirectedGraph if g.is_directed() else UndirectedGraph
    return cls.from_edges(g.number_of_nodes(), g.edges())
