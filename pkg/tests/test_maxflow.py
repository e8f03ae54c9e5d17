"""Test the vertex-capacity maxflow engines and their accounting."""
import itertools

import pytest

from vconn import families
from vconn.graphs import AdjacentTerminals, InvalidQuery
from vconn.maxflow import (ENGINES, FlowStats, flow_counting, flow_stats_snapshot,
                           get_engine, set_vertex_connectivity, st_vertex_connectivity)
from vconn.oracle import oracle_exhaustive
from vconn.tools.seeding import substream

engines = pytest.mark.parametrize("engine", sorted(ENGINES))


def brute_separator(G, A, B):
    """Size of the smallest set (outside `A`, `B`) cutting every `A -> B` path."""
    others = [v for v in G.vertices if v not in A and v not in B]
    for size in range(len(others) + 1):
        for S in itertools.combinations(others, size):
            if not G.reachable(A, S) & set(B):
                return size
    raise AssertionError("A and B are adjacent")


def check_separator(G, sources, res):
    assert len(res.separator) == res.value
    assert sources <= res.source_side
    assert not res.source_side & res.separator
    assert G.neighborhood(res.source_side) == res.separator


@engines
def test_cycle(engine):
    res = st_vertex_connectivity(families.cycle(4), 0, 2, engine)
    assert res.value == 2
    assert res.separator == frozenset({1, 3})
    assert res.source_side == frozenset({0})


@engines
def test_path(engine):
    res = st_vertex_connectivity(families.path(3), 0, 2, engine)
    assert res.value == 1
    assert res.separator == frozenset({1})


@engines
def test_petersen(engine):
    G = families.petersen()
    for s, t in itertools.combinations(G.vertices, 2):
        if not G.has_edge(s, t):
            res = st_vertex_connectivity(G, s, t, engine)
            assert res.value == 3
            check_separator(G, {s}, res)


@engines
def test_directed_cycle(engine):
    G = families.directed_cycle(4)
    assert st_vertex_connectivity(G, 0, 2, engine).separator == frozenset({1})
    assert st_vertex_connectivity(G, 2, 0, engine).separator == frozenset({3})


@engines
def test_set_cycle(engine):
    assert set_vertex_connectivity(families.cycle(6), {0}, {3}, engine).value == 2


@engines
def test_set_star(engine):
    res = set_vertex_connectivity(families.star(4), {1}, {2, 3}, engine)
    assert res.value == 1
    assert res.separator == frozenset({0})


@engines
@pytest.mark.parametrize("seed", range(6))
def test_set_vs_enumeration(engine, seed):
    G = families.gnp(12, 0.4, seed=seed)
    rng = substream(seed, "test", "terminals")
    for _ in range(20):
        A, B = map(set, rng.choice(12, size=(2, 2), replace=False).tolist())
        if any(G.has_edge(a, b) for a in A for b in B):
            continue
        res = set_vertex_connectivity(G, A, B, engine)
        assert res.value == brute_separator(G, A, B)
        check_separator(G, A, res)


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("directed", [False, True])
def test_engines_agree(seed, directed):
    if directed:
        G = families.random_digraph(14, 0.3, seed=seed)
    else:
        G = families.gnp(14, 0.3, seed=seed)
    for s, t in itertools.permutations(range(0, 14, 3), 2):
        if G.has_edge(s, t):
            continue
        values = {name: st_vertex_connectivity(G, s, t, name).value for name in ENGINES}
        assert len(set(values.values())) == 1, values


@pytest.mark.parametrize("seed", range(5))
def test_menger(seed):
    """The least s-t connectivity is the connectivity found by enumeration."""
    G = families.gnp(8, 0.5, seed=seed)
    pairs = [(s, t) for s, t in itertools.combinations(G.vertices, 2)
             if not G.has_edge(s, t)]
    if not pairs:
        return
    least = min(st_vertex_connectivity(G, s, t).value for s, t in pairs)
    assert least == oracle_exhaustive(G).kappa


def test_errors():
    G = families.cycle(5)
    with pytest.raises(AdjacentTerminals):
        st_vertex_connectivity(G, 0, 1)
    with pytest.raises(InvalidQuery):
        st_vertex_connectivity(G, 2, 2)
    with pytest.raises(InvalidQuery):
        st_vertex_connectivity(G, 0, 7)
    with pytest.raises(InvalidQuery):
        set_vertex_connectivity(G, set(), {2})
    with pytest.raises(InvalidQuery):
        set_vertex_connectivity(G, {0, 2}, {2, 3})
    with pytest.raises(AdjacentTerminals):
        set_vertex_connectivity(G, {0}, {1, 3})
    with pytest.raises(InvalidQuery):
        get_engine("push-relabel")


def test_adjacent_is_invalid_query():
    assert issubclass(AdjacentTerminals, InvalidQuery)


def test_flow_stats_split_sizes():
    """C4 with terminals 0, 2: 2*4 + 2 nodes.

    Two split arcs, four edge arcs and two terminal arcs.
    """
    before = flow_stats_snapshot()
    with flow_counting(FlowStats(keep_log=True)) as stats:
        st_vertex_connectivity(families.cycle(4), 0, 2)
    assert (stats.calls, stats.total_vertices, stats.total_edges) == (1, 10, 8)
    assert stats.log == [(10, 8)]
    after = flow_stats_snapshot()
    assert after.calls == before.calls + 1
    assert after.total_edges == before.total_edges + 8


def test_flow_stats_fresh():
    stats = FlowStats()
    assert (stats.calls, stats.total_vertices, stats.total_edges) == (0, 0, 0)


def test_flow_counting_nesting():
    G = families.cycle(6)
    outer, inner = FlowStats(), FlowStats()
    with flow_counting(outer):
        with flow_counting(outer):
            st_vertex_connectivity(G, 0, 3)
        with flow_counting(inner):
            st_vertex_connectivity(G, 0, 3)
        with flow_counting(inner, detach=True):
            st_vertex_connectivity(G, 0, 3)
    st_vertex_connectivity(G, 0, 3)
    assert outer.calls == 2
    assert inner.calls == 2


def test_flow_stats_merge():
    a, b = FlowStats(keep_log=True), FlowStats(keep_log=True)
    a.record(3, 4)
    b.record(5, 6)
    b.record(1, 1)
    a.merge(b)
    assert a.as_dict() == dict(calls=3, total_vertices=9, total_edges=11)
    assert a.log == [(3, 4), (5, 6), (1, 1)]
