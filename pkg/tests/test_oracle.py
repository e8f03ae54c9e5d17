"""Test the exact oracles against each other."""
import itertools

import pytest

from vconn import families
from vconn.graphs import (COMPLETE, DirectedGraph, InvalidQuery, UndirectedGraph,
                          validate_vertex_cut)
from vconn.oracle import (EXHAUSTIVE_LIMIT, oracle_directed, oracle_exhaustive,
                          oracle_vertex_connectivity)


def check(G, result):
    if result.witness is COMPLETE:
        assert result.kappa == G.n - 1
    else:
        assert result.witness.size == result.kappa
        assert validate_vertex_cut(G, result.witness)


@pytest.mark.parametrize("G, kappa", [
    (families.cycle(6), 2),
    (families.path(4), 1),
    (families.petersen(), 3),
    (families.complete_bipartite(2, 5), 2),
    (families.wheel(6), 3),
    (families.two_disjoint_edges(), 0),
    (families.complete(4), 3),
])
def test_structured(G, kappa):
    for oracle in (oracle_vertex_connectivity, oracle_exhaustive):
        result = oracle(G)
        assert result.kappa == kappa
        check(G, result)


@pytest.mark.parametrize("seed", range(15))
def test_flows_vs_enumeration(seed):
    G = families.gnp(5 + seed % 5, 0.5, seed=seed)
    a = oracle_vertex_connectivity(G)
    b = oracle_exhaustive(G)
    assert a.kappa == b.kappa
    check(G, a)
    check(G, b)


@pytest.mark.parametrize("seed", range(10))
def test_directed_vs_enumeration(seed):
    G = families.random_digraph(4 + seed % 4, 0.5, seed=seed)
    a = oracle_directed(G)
    b = oracle_exhaustive(G)
    assert a.kappa == b.kappa
    check(G, a)
    check(G, b)


def test_directed_structured():
    assert oracle_directed(families.directed_cycle(5)).kappa == 1
    assert oracle_directed(families.complete_digraph(4)).witness is COMPLETE
    G = DirectedGraph.from_edges(3, [(0, 1), (1, 2)])
    result = oracle_directed(G)
    assert result.kappa == 0
    check(G, result)


@pytest.mark.parametrize("seed", range(5))
def test_monotone(seed):
    """Adding edges never lowers κ."""
    G = families.gnp(8, 0.4, seed=seed)
    kappa = oracle_exhaustive(G).kappa
    missing = [e for e in itertools.combinations(G.vertices, 2) if not G.has_edge(*e)]
    for e in missing[:6]:
        G = UndirectedGraph.from_edges(G.n, list(G.edges()) + [e])
        new = oracle_exhaustive(G).kappa
        assert new >= kappa
        kappa = new


def test_exhaustive_lexicographic():
    result = oracle_exhaustive(families.cycle(6))
    assert result.witness.S == frozenset({0, 2})


def test_invalid():
    with pytest.raises(InvalidQuery):
        oracle_exhaustive(families.cycle(EXHAUSTIVE_LIMIT + 1))
    with pytest.raises(InvalidQuery):
        oracle_exhaustive(UndirectedGraph.from_edges(1, []))
    with pytest.raises(InvalidQuery):
        oracle_vertex_connectivity(families.directed_cycle(4))
    with pytest.raises(InvalidQuery):
        oracle_directed(families.cycle(4))
    with pytest.raises(InvalidQuery):
        oracle_vertex_connectivity(UndirectedGraph.from_edges(1, []))
