"""Test the isolating cuts and the detector of balanced cuts."""
import itertools

import pytest

from vconn import families
from vconn.graphs import InvalidQuery, validate_vertex_cut
from vconn.isolating import (detect_nonscratch, greedy_mis, isolating_cuts,
                             sampling_plans)
from vconn.maxflow import set_vertex_connectivity
from vconn.stats import RunStats


def test_star():
    res = isolating_cuts(families.star(4), [1, 2, 3, 4])
    assert len(res) == 4
    for v in res:
        assert res[v] == frozenset({0})
        assert res.sides[v] == frozenset({v})


def test_cycle_opposite():
    G = families.cycle(6)
    res = isolating_cuts(G, [0, 3])
    assert res.size(0) == res.size(3) == 2
    assert res[0] == frozenset({1, 5})


@pytest.mark.parametrize("seed", range(5))
def test_random_vs_set_connectivity(seed):
    G = families.gnp(14, 0.3, seed=seed)
    I = families.random_independent_set(G, 4, seed=seed)
    res = isolating_cuts(G, I)
    assert sorted(res) == I
    for v in I:
        others = set(I) - {v}
        assert res.size(v) == set_vertex_connectivity(G, {v}, others).value
        assert G.neighborhood(res.sides[v]) == res[v]
        assert res.sides[v] & set(I) == {v}
        cut = res.cut(G, v)
        if cut is not None:
            assert validate_vertex_cut(G, cut)


def test_planted_sides():
    G, planted = families.planted_cut(3, 2, 5)
    res = isolating_cuts(G, [0, 9])
    assert res[0] == planted.S
    assert res.cut(G, 0) == planted


def test_counts_flows():
    stats = RunStats()
    isolating_cuts(families.cycle(8), [0, 2, 4, 6], stats=stats)
    # Two bit rounds, then one local flow per terminal.
    assert stats.flows.calls == 6
    assert stats.timings["isolating"] >= 0


@pytest.mark.parametrize("I", [[0], [0, 1], [0, 9]])
def test_invalid_terminals(I):
    with pytest.raises(InvalidQuery):
        isolating_cuts(families.cycle(6), I)


def test_greedy_mis():
    assert greedy_mis(families.path(5), range(5)) == [0, 2, 4]
    assert greedy_mis(families.star(3), [0, 1, 2]) == [0]
    assert greedy_mis(families.star(3), [1, 2, 3]) == [1, 2, 3]
    assert greedy_mis(families.path(5), []) == []


def test_sampling_plans(fast_config):
    G = families.gnp(20, 0.3, seed=1)
    plans = list(sampling_plans(G, 3, fast_config))
    # J = max(4, ceil(0.2 * ln(20)^3)) = 6, for each i = 1..4.
    assert len(plans) == 4 * 6
    assert [(p.i, p.j) for p in plans[:7]] == [(1, j) for j in range(6)] + [(2, 0)]
    low = {v for v in G.vertices if G.degree(v) <= 8 * 3}
    for plan in plans:
        assert plan.T_low <= low
        for I in plan.terminal_sets(G):
            assert not any(G.has_edge(u, v) for u in I for v in I)
    again = list(sampling_plans(G, 3, fast_config))
    assert again == plans


def test_nonscratch_planted(fast_config):
    G, planted = families.planted_cut(3, 2, 5)
    cut = detect_nonscratch(G, 3, fast_config)
    assert cut == planted


def test_nonscratch_min_degree_fallback(fast_config):
    # Only the minimum-degree cut is below k.
    G = families.star(5)
    cut = detect_nonscratch(G, 2, fast_config)
    assert cut.size == 1 and validate_vertex_cut(G, cut)
    assert detect_nonscratch(families.complete(5), 2, fast_config) is None


def test_nonscratch_early_exit(fast_config):
    G, planted = families.planted_cut(4, 3, 6)
    stats = RunStats()
    cut = detect_nonscratch(G, 4, fast_config.replace(early_exit=True), stats)
    assert cut.size < 4
    assert validate_vertex_cut(G, cut)


def test_nonscratch_deterministic(fast_config):
    G = families.gnp(16, 0.35, seed=4)
    a = detect_nonscratch(G, 5, fast_config)
    b = detect_nonscratch(G, 5, fast_config)
    assert a == b
    assert validate_vertex_cut(G, a)


def test_nonscratch_logs_worker_flows(fast_config):
    stats = RunStats(keep_log=True)
    G, _ = families.planted_cut(3, 2, 5)
    detect_nonscratch(G, 3, fast_config, stats)
    assert stats.flows.calls > 0
    assert len(stats.flows.log) == stats.flows.calls


@pytest.mark.parametrize("G", [
    families.cycle(6),
    families.gnp(6, 0.5, seed=1),
    families.gnp(6, 0.5, seed=2),
    families.random_digraph(6, 0.4, seed=3),
], ids=["cycle", "gnp1", "gnp2", "digraph"])
def test_neighbourhood_submodular(G):
    """`|N(A)| + |N(B)| >= |N(A ∪ B)| + |N(A ∩ B)|` for all vertex sets."""
    subsets = [frozenset(c) for r in range(G.n + 1)
               for c in itertools.combinations(G.vertices, r)]
    size = {A: len(G.neighborhood(A)) for A in subsets}
    for A in subsets:
        for B in subsets:
            assert size[A] + size[B] >= size[A | B] + size[A & B]
