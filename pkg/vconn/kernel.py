"""Kernelization: neighbour oracle over sketches, sketchy search, scratch detector.

For a source `x` and a sample `T` of the vertices, the kernel is a small graph
on `x`, a sink `t` (standing for `T_x = T - N[x]`) and the vertices met by a
BFS from `x` that stops at the neighbours of `T_x`.
A minimum `x`-`t` separator `Y` of the kernel, together with the vertices `Z`
of `N(x)` that are adjacent to `T_x`, is a minimum `(x, T_x)`-separator of `G`.

The BFS never reads adjacency lists beyond `N(x)`: it asks the
`NeighborOracle` for `N(v) - N[x]`, which is decoded from a difference of
linear sketches, or declared `TOO_BIG`.

All of it is written over `successors`, and also serves digraphs
(out-neighbourhoods), see `vconn.directed`.
"""

import math
from collections import deque
from dataclasses import dataclass

from vconn.graphs import (DirectedGraph, InvalidQuery, UndirectedGraph, best_cut,
                          cut_from_separator, min_degree_cut, sentinel,
                          validate_vertex_cut)
from vconn.maxflow import st_vertex_connectivity
from vconn.sketches import (TOO_DENSE, SketchContext, SparseVector, l2_estimate,
                            l2_sketch, sr_decode, sr_sketch)
from vconn.stats import RunStats
from vconn.tools.seeding import sample_count, sample_rate, substream
from vconn.vc_config import RunConfig

TOO_BIG = sentinel("TOO_BIG")
"""Answer of the oracle when `N(v) - N[x]` is (estimated) larger than `s`."""

BOT = sentinel("BOT")
"""Answer of the sketchy search when no kernel is built."""


def _ln(n):
    return math.log(max(n, 2))


#########################################
# Neighbour oracle
#########################################
class NeighborOracle:
    """Sketches of every `N(v)` and `N[v]`, for queries `N(v) - N[x]`.

    Parameters
    ----------
    G: UndirectedGraph or DirectedGraph
        Out-neighbourhoods are sketched for digraphs.
    k: int
        Queries require `|N[x]| <= k + 2*level`.
    level: int
        The estimate ℓ̃ of the small side. The sparsity is
        `s = ceil(oracle_factor * level * ln n)`, at most `n`.

    When `s` reaches `n` every difference decodes, and the
    ℓ2 pre-check is skipped.
    """

    def __init__(self, G, k, level, seed=0, key=(), config=None):
        if level < 1:
            raise InvalidQuery(f"The level must be >= 1, got {level}.")
        conf = config or RunConfig()
        self.G = G
        self.k = int(k)
        self.level = int(level)
        nominal = math.ceil(conf.oracle_factor * level * _ln(G.n))
        self.s = max(1, min(nominal, G.n))
        self.exact = nominal >= G.n
        self.ctx = SketchContext(G.n, self.s, seed, ("oracle",) + tuple(key),
                                 config=conf)
        self.sr_open, self.sr_closed = [], []
        self.l2_open, self.l2_closed = [], []
        for v in G.vertices:
            nbrs = SparseVector.indicator(G.successors(v))
            self_ = SparseVector.indicator([v])
            sr = sr_sketch(self.ctx, nbrs)
            l2 = l2_sketch(self.ctx, nbrs)
            self.sr_open.append(sr)
            self.sr_closed.append(sr + sr_sketch(self.ctx, self_))
            self.l2_open.append(l2)
            self.l2_closed.append(l2 + l2_sketch(self.ctx, self_))
        self._answers = {}

    @property
    def max_query_degree(self):
        return self.k + 2 * self.level

    def admits(self, x):
        """Whether `x` is a valid query source."""
        return len(self.G.closed_neighbors(x)) <= self.max_query_degree

    def out_neighbor(self, x, v):
        """`N(v) - N[x]` as a frozenset, or `TOO_BIG`.

        Exact if `|N(v) - N[x]|` is well below `s`, and `TOO_BIG`
        if it is above `s` (with high probability in between).
        """
        if v == x:
            raise InvalidQuery("The queried vertex must differ from the source.")
        if not self.admits(x):
            raise InvalidQuery(
                f"|N[{x}]| exceeds k + 2ℓ̃ = {self.max_query_degree}.")
        # Memoised per (x, v).
        if (x, v) not in self._answers:
            self._answers[(x, v)] = self._query(x, v)
        return self._answers[(x, v)]

    def _query(self, x, v):
        if not self.exact:
            # Squared norm of the difference = size of the symmetric difference.
            est = l2_estimate(self.l2_open[v] - self.l2_closed[x])
            if est**2 > self.s:
                return TOO_BIG
        decoded = sr_decode(self.sr_open[v] - self.sr_closed[x])
        if decoded is TOO_DENSE:
            return TOO_BIG
        return decoded.support(+1)


def build_neighbor_oracle(G, k, level, seed=0, key=(), config=None):
    return NeighborOracle(G, k, level, seed, key, config)


#########################################
# Kernel
#########################################
@dataclass(frozen=True)
class Kernel:
    """Kernel graph (source 0, sink last) and the classification that built it.

    `vertices[i]` is the vertex of `G` behind kernel vertex `i` (`-1` for the sink).
    The kernel order is: `x`, then `N_x`, `F`, `N_t` (each sorted), then the sink.
    """

    graph: object
    vertices: tuple
    Z: frozenset
    N_x: frozenset
    N_t: frozenset
    F: frozenset
    count: int

    @property
    def sink(self):
        return len(self.vertices) - 1

    def lift(self, Y):
        """The separator `Y` of the kernel, as vertices of `G`, joined with `Z`."""
        return frozenset(self.vertices[y] for y in Y) | self.Z

    def min_separator(self, engine=None):
        """Minimum separator between the source and the sink of the kernel."""
        return st_vertex_connectivity(self.graph, 0, self.sink, engine)


@dataclass(frozen=True)
class ScratchParams:
    """The samples behind one batch of sketchy searches."""

    k: int
    level: int
    T: frozenset
    X: tuple


def bad_vertices(G, T):
    """`{v : T ⊆ N[v]}` (closed out-neighbourhoods), the sources with `T_x` empty."""
    T = frozenset(T)
    return frozenset(v for v in G.vertices if T <= G.closed_neighbors(v))


def _assemble(G, x, Z, N_x, F, N_t, edges, count):
    order = [x] + sorted(N_x) + sorted(F) + sorted(N_t)
    index = {v: i for i, v in enumerate(order)}
    t = len(order)
    arcs = [(0, index[v]) for v in N_x]
    arcs += [(index[v], index[w]) for v, w in edges]
    arcs += [(index[v], t) for v in N_t]
    cls = DirectedGraph if G.directed else UndirectedGraph
    graph = cls.from_edges(t + 1, arcs)
    return Kernel(graph, tuple(order) + (-1,), frozenset(Z), frozenset(N_x),
                  frozenset(N_t), frozenset(F), count)


def sketchy_search(oracle, x, T, bad, cap=None):
    """Build the kernel of `(x, T)`, or return `BOT`.

    The first loop classifies `N(x)`: a vertex adjacent to `T_x`
    (or `TOO_BIG`) goes to `Z`, the others to `N_x` and their outside
    neighbours into a FIFO queue. The second loop classifies the queue:
    `TOO_BIG` vertices and those adjacent to `T_x` go to `N_t`, the others to `F`,
    and their outside neighbours into the queue.

    Parameters
    ----------
    oracle: NeighborOracle
    x: int
        The source.
    T: set
        The sample. Since decoded sets exclude `N[x]`,
        a decoded vertex is in `T_x` iff it is in `T`.
    bad: set
        `bad_vertices(G, T)`.
    cap: int, optional
        Return `BOT` once more than `cap` queue vertices decoded successfully.
    """
    if x in bad or not oracle.admits(x):
        return BOT
    G = oracle.G
    T = frozenset(T)
    visited = {x, *G.successors(x)}
    Z, N_x, N_t, F = set(), set(), set(), set()
    edges = []
    queue = deque()

    def expand(v, out):
        for w in out:
            edges.append((v, w))
            if w not in visited:
                queue.append(w)

    for v in G.successors(x):
        out = oracle.out_neighbor(x, v)
        if out is TOO_BIG or out & T:
            Z.add(v)
        else:
            N_x.add(v)
            expand(v, out)

    count = 0
    while queue:
        v = queue.popleft()
        if v in visited:
            continue
        visited.add(v)
        out = oracle.out_neighbor(x, v)
        if out is TOO_BIG:
            N_t.add(v)
            continue
        count += 1
        if cap is not None and count > cap:
            return BOT
        if out & T:
            N_t.add(v)
        else:
            F.add(v)
            expand(v, out)

    return _assemble(G, x, Z, N_x, F, N_t, edges, count)


#########################################
# Reduction rules
#########################################
def identify(G, s, t):
    """Isolate the common neighbours `Z = N_out(s) ∩ N_in(t)`.

    Every `s`-`t` separator contains `Z`, so the `s`-`t` connectivity
    drops by exactly `|Z|`.

    Returns
    -------
    (graph, Z)
    """
    Z = frozenset(G.successors(s)) & frozenset(G.predecessors(t))
    kept = [(u, v) for u, v in G.edges() if u not in Z and v not in Z]
    return type(G).from_edges(G.n, kept, G.labels), Z


def filter_rules(G, s, t):
    """Drop edges and isolate vertices that no `s`-`t` path needs.

    1. Edges inside `N(s)` or inside `N(t)`
       (digraphs: arcs into `N_out[s]` other than from `s`,
       and arcs out of `N_in[t]` other than into `t`).
    2. Vertices `v` with `t ∈ N(v) ⊆ N[t]`
       (digraphs: `t ∈ N_out(v)` and `N_in(v) ⊆ N_in[t]`).
    3. Vertices outside `N[t]` (digraphs: `N_in[t]`)
       that `s` cannot reach without passing through it.

    Returns a graph on the same vertices with the same `s`-`t` connectivity.
    """
    if G.has_edge(s, t):
        raise InvalidQuery(f"The terminals {s} and {t} are adjacent.")
    Ns = frozenset(G.successors(s))
    Nt = frozenset(G.predecessors(t))
    if G.directed:
        out_s = Ns | {s}
        in_t = Nt | {t}
        kept = [(u, v) for u, v in G.edges()
                if not (v in out_s and u != s) and not (u in in_t and v != t)]
    else:
        kept = [(u, v) for u, v in G.edges()
                if not (u in Ns and v in Ns) and not (u in Nt and v in Nt)]
    H = type(G).from_edges(G.n, kept, G.labels)

    closed_t = Nt | {t}
    isolated = set()
    for v in H.vertices:
        if v in (s, t):
            continue
        if t in H.successors(v) and set(H.predecessors(v)) <= closed_t:
            isolated.add(v)
    reach = H.reachable([s], closed_t)
    isolated |= {v for v in H.vertices
                 if v not in closed_t and v != s and v not in reach}

    kept = [(u, v) for u, v in H.edges() if u not in isolated and v not in isolated]
    return type(G).from_edges(G.n, kept, G.labels)


#########################################
# Scratch detector
#########################################
def scratch_levels(n, k, config=None):
    """Levels ℓ̃ = 2^i, i >= 0, with `ℓ̃ <= k / (level_factor * ln n)`."""
    conf = config or RunConfig()
    top = k / (conf.level_factor * _ln(n))
    levels = []
    level = 1
    while level <= top:
        levels.append(level)
        level *= 2
    return levels


def scratch_samples(G, k, level, config=None, key=("scratch",)):
    """The candidate sources `X` and the `J` samples `T` of one level.

    The randomness is keyed by `key`, `k` and the level.
    """
    conf = config or RunConfig()
    n = G.n
    lnn = _ln(n)
    X = sample_count(substream(conf.seed, *key, k, level, "X"), n,
                     math.ceil(conf.candidates_factor * n * lnn / level))
    J = max(conf.scratch_floor, math.ceil(conf.scratch_reps * lnn))
    for j in range(J):
        rng = substream(conf.seed, *key, k, level, "T", j)
        T = sample_rate(rng, n, 1 / (conf.sample_rate * level))
        yield ScratchParams(k, level, T, tuple(X))


def kernel_cuts(G, oracle, params, cap=None, config=None, stats=None,
                bound=None):
    """Cuts of `G` found through the kernels of `params.X` against `params.T`.

    Every yielded cut is validated against `G`.
    """
    conf = config or RunConfig()
    stats = stats or RunStats()
    bad = bad_vertices(G, params.T)
    for x in params.X:
        kernel = sketchy_search(oracle, x, params.T, bad, cap)
        if kernel is BOT:
            stats.kernels["bot"] += 1
            continue
        stats.kernels["built"] += 1
        stats.levels[params.level] += 1
        if bound is not None:
            stats.soft_bound("kernel edges", kernel.graph.m, bound)
        Y = kernel.min_separator(conf.flow).separator
        cut = cut_from_separator(G, {x}, kernel.lift(Y))
        if cut is not None and validate_vertex_cut(G, cut):
            yield cut


def detect_scratch(G, k, config=None, stats=None):
    """Find a cut with `|S| < k` if `G` has one with a small enough side `L`.

    Returns the best valid cut found, falling back to the minimum-degree cut
    (immediately, if the minimum degree is below `k`).
    Returns `None` only for complete graphs.

    Example:
    >>> from vconn.families import cycle
    >>> detect_scratch(cycle(6), 3).size
    2
    """
    conf = config or RunConfig()
    stats = stats or RunStats()
    best = min_degree_cut(G)
    if best is None or best.size < k:
        return best
    lnn = _ln(G.n)
    with stats.phase("scratch"), stats.counting():
        for i, level in enumerate(scratch_levels(G.n, k, conf)):
            oracle = build_neighbor_oracle(G, k, level, conf.seed, ("scratch", k, i),
                                           conf)
            bound = conf.kernel_bound * k * level * math.ceil(lnn)
            for params in scratch_samples(G, k, level, conf):
                cuts = kernel_cuts(G, oracle, params, conf.count_cap * k, conf, stats,
                                   bound)
                best = best_cut([best, *cuts])
    return best
