"""Unit-vertex-capacity s-t maxflow, i.e. vertex connectivity between terminals.

The standard reduction: every non-terminal vertex `v` is split into
`v_in -> v_out` with capacity 1, and every edge `u -- v` becomes the arcs
`u_out -> v_in` and `v_out -> u_in` of "infinite" capacity
(arcs `u_out -> v_in` only, for digraphs). Terminals are not split.
The maxflow equals the maximum number of internally vertex-disjoint paths,
and a minimum separator is read off the residual network:
the vertices whose `v_in` is reachable from the source, but not `v_out`.

The flow algorithm is pluggable (`ENGINES`); all engines solve the
same `SplitNetwork`.

Every solved network is counted in the process-wide `FlowStats`
(see `flow_stats_snapshot`) and in the counters activated by `flow_counting`.
"""

import contextlib
import contextvars
import threading
from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sparse
from scipy.sparse.csgraph import maximum_flow

from vconn.graphs import AdjacentTerminals, InvalidQuery
from vconn.vc_config import rc


@dataclass(frozen=True)
class SeparatorResult:
    """Value of a maxflow and the minimum separator realising it.

    `source_side` contains the source(s), is disjoint from `separator`,
    and its neighbourhood in the queried graph is exactly `separator`.
    """

    value: int
    separator: frozenset
    source_side: frozenset


#########################################
# Accounting
#########################################
@dataclass
class FlowStats:
    """Number and sizes of the solved flow networks.

    Sizes are those of the split networks (nodes and forward arcs).
    Totals only ever grow. Increments are thread-safe.

    Example:
    >>> stats = FlowStats()
    >>> stats.record(10, 12); stats.record(4, 3)
    >>> stats.calls, stats.total_vertices, stats.total_edges
    (2, 14, 15)
    """

    calls: int = 0
    total_vertices: int = 0
    total_edges: int = 0
    keep_log: bool = False
    log: list = field(default_factory=list)

    def __post_init__(self):
        self._lock = threading.Lock()

    def record(self, vertices, edges):
        with self._lock:
            self.calls += 1
            self.total_vertices += vertices
            self.total_edges += edges
            if self.keep_log:
                self.log.append((vertices, edges))

    def merge(self, other):
        """Add the totals (and log) of `other`, e.g. from a worker process."""
        with self._lock:
            self.calls += other.calls
            self.total_vertices += other.total_vertices
            self.total_edges += other.total_edges
            if self.keep_log:
                self.log.extend(other.log)
        return self

    def snapshot(self):
        with self._lock:
            return FlowStats(self.calls, self.total_vertices, self.total_edges,
                             self.keep_log, list(self.log))

    def as_dict(self):
        return dict(calls=self.calls, total_vertices=self.total_vertices,
                    total_edges=self.total_edges)

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()


_GLOBAL_STATS = FlowStats()
_ACTIVE = contextvars.ContextVar("flow_counters", default=())


def flow_stats_snapshot():
    """Totals of every maxflow solved by this process since import."""
    return _GLOBAL_STATS.snapshot()


@contextlib.contextmanager
def flow_counting(stats, detach=False):
    """Also count the flows solved within the `with` block into `stats`.

    Re-entering with an already active counter does not count twice.
    With `detach`, the enclosing counters are suspended for the block
    (for work whose counts are merged explicitly, e.g. from worker processes).
    """
    active = () if detach else _ACTIVE.get()
    if any(s is stats for s in active):
        yield stats
        return
    token = _ACTIVE.set(active + (stats,))
    try:
        yield stats
    finally:
        _ACTIVE.reset(token)


def _record(net):
    size = (net.size, net.n_arcs)
    _GLOBAL_STATS.record(*size)
    for stats in _ACTIVE.get():
        stats.record(*size)


#########################################
# Split network
#########################################
class SplitNetwork:
    """Flow network in arc-pair representation.

    Arc `a` and its residual twin `a ^ 1` are stored next to each other.
    `cap` holds *residual* capacities once a flow has been pushed.
    """

    def __init__(self, size):
        self.size = size
        self.head = [[] for _ in range(size)]
        self.tail = []
        self.to = []
        self.cap = []

    @property
    def n_arcs(self):
        return len(self.to) // 2

    def add_arc(self, u, v, c):
        self.head[u].append(len(self.to))
        self.tail.append(u)
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.tail.append(v)
        self.to.append(u)
        self.cap.append(0)

    def residual_reach(self, source):
        """Nodes reachable from `source` in the residual network."""
        seen = np.zeros(self.size, dtype=bool)
        seen[source] = True
        queue = deque([source])
        to, cap, head = self.to, self.cap, self.head
        while queue:
            u = queue.popleft()
            for a in head[u]:
                w = to[a]
                if cap[a] > 0 and not seen[w]:
                    seen[w] = True
                    queue.append(w)
        return seen


def _v_in(v):
    return 2 * v


def _v_out(v):
    return 2 * v + 1


def _split(G, sources, sinks):
    """Split network of `G` with a super source/sink attached to the terminals."""
    n = G.n
    inf = 2 * n + 2
    net = SplitNetwork(2 * n + 2)
    terminals = sources | sinks
    for v in G.vertices:
        if v not in terminals:
            net.add_arc(_v_in(v), _v_out(v), 1)
    for u, v in G.arcs():
        # Arcs into a source or out of a sink carry no useful flow.
        if v in sources or u in sinks:
            continue
        net.add_arc(_v_out(u), _v_in(v), inf)
    src, snk = 2 * n, 2 * n + 1
    for s in sorted(sources):
        net.add_arc(src, _v_out(s), inf)
    for t in sorted(sinks):
        net.add_arc(_v_in(t), snk, inf)
    return net, src, snk


#########################################
# Engines
#########################################
class FlowEngine:
    """Interface of a maxflow algorithm on a `SplitNetwork`.

    `solve` must leave the residual capacities in `net.cap`
    and return the flow value.
    """

    name = None

    def solve(self, net, source, sink):
        raise NotImplementedError


class DinicEngine(FlowEngine):
    """Dinic's blocking flows: BFS levels, then DFS with current-arc pointers."""

    name = "dinic"

    def solve(self, net, source, sink):
        total = 0
        while True:
            level = self._levels(net, source)
            if level[sink] < 0:
                return total
            pointer = [0] * net.size
            while True:
                pushed = self._augment(net, source, sink, level, pointer)
                if not pushed:
                    break
                total += pushed

    @staticmethod
    def _levels(net, source):
        level = [-1] * net.size
        level[source] = 0
        queue = deque([source])
        to, cap, head = net.to, net.cap, net.head
        while queue:
            u = queue.popleft()
            for a in head[u]:
                w = to[a]
                if cap[a] > 0 and level[w] < 0:
                    level[w] = level[u] + 1
                    queue.append(w)
        return level

    @staticmethod
    def _augment(net, source, sink, level, pointer):
        """Push flow along one shortest augmenting path (0 if none is left)."""
        to, cap, head = net.to, net.cap, net.head
        stack = [source]
        path = []
        while stack:
            u = stack[-1]
            if u == sink:
                pushed = min(cap[a] for a in path)
                for a in path:
                    cap[a] -= pushed
                    cap[a ^ 1] += pushed
                return pushed
            arcs = head[u]
            while pointer[u] < len(arcs):
                a = arcs[pointer[u]]
                if cap[a] > 0 and level[to[a]] == level[u] + 1:
                    break
                pointer[u] += 1
            else:
                # Dead end: never come back here in this phase.
                level[u] = -1
                stack.pop()
                if path:
                    path.pop()
                continue
            path.append(a)
            stack.append(to[a])
        return 0


class CsgraphEngine(FlowEngine):
    """`scipy.sparse.csgraph.maximum_flow` (its Dinic variant)."""

    name = "csgraph"

    def solve(self, net, source, sink):
        fwd = np.arange(0, len(net.to), 2)
        tails = np.asarray(net.tail)[fwd]
        heads = np.asarray(net.to)[fwd]
        caps = np.asarray(net.cap, dtype=np.int32)[fwd]
        C = sparse.csr_matrix((caps, (tails, heads)), shape=(net.size, net.size))
        result = maximum_flow(C, source, sink, method="dinic")
        flow = np.asarray(result.flow[tails, heads]).ravel()
        for a, f in zip(fwd, flow):
            net.cap[a] -= int(f)
            net.cap[a + 1] += int(f)
        return int(result.flow_value)


ENGINES = {engine.name: engine for engine in [DinicEngine(), CsgraphEngine()]}


def get_engine(engine=None):
    """Look up an engine by name (default: `rc.flow`), or pass one through."""
    if isinstance(engine, FlowEngine):
        return engine
    name = engine or rc.flow
    try:
        return ENGINES[name]
    except KeyError:
        raise InvalidQuery(f"Unknown flow engine '{name}'. "
                           f"Choose from {sorted(ENGINES)}.") from None


#########################################
# Queries
#########################################
def _solve(G, sources, sinks, engine):
    net, src, snk = _split(G, sources, sinks)
    value = get_engine(engine).solve(net, src, snk)
    _record(net)
    reach = net.residual_reach(src)
    separator = frozenset(v for v in G.vertices
                          if v not in sources and reach[_v_in(v)]
                          and not reach[_v_out(v)])
    source_side = frozenset(v for v in G.vertices
                            if v in sources or reach[_v_out(v)])
    return SeparatorResult(value, separator, source_side)


def st_vertex_connectivity(G, s, t, engine=None):
    """Maximum number of internally vertex-disjoint `s -> t` paths, and a min separator.

    Works on both graph kinds.

    Example:
    >>> from vconn.graphs import UndirectedGraph
    >>> C4 = UndirectedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    >>> res = st_vertex_connectivity(C4, 0, 2)
    >>> res.value, sorted(res.separator)
    (2, [1, 3])
    """
    for v in (s, t):
        if not (0 <= v < G.n):
            raise InvalidQuery(f"Unknown vertex: {v}")
    if s == t:
        raise InvalidQuery("The source and sink must differ.")
    if G.has_edge(s, t):
        raise AdjacentTerminals(f"The terminals {s} and {t} are adjacent.")
    return _solve(G, frozenset([s]), frozenset([t]), engine)


def set_vertex_connectivity(G, A, B, engine=None):
    """Minimum `(A, B)`-separator, via a super source and super sink.

    `A` and `B` must be non-empty, disjoint, and without an edge from `A` to `B`.
    """
    A, B = frozenset(A), frozenset(B)
    if not A or not B:
        raise InvalidQuery("Both terminal sets must be non-empty.")
    if A & B:
        raise InvalidQuery("The terminal sets must be disjoint.")
    if not (A | B) <= set(G.vertices):
        raise InvalidQuery("The terminal sets must consist of vertices of the graph.")
    if any(w in B for a in A for w in G.successors(a)):
        raise AdjacentTerminals("There is an edge from A to B.")
    return _solve(G, A, B, engine)
