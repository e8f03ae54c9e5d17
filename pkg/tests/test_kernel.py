"""Test the neighbour oracle, the sketchy search and the scratch detector."""
import pytest

from vconn import families
from vconn.graphs import InvalidQuery, UndirectedGraph, validate_vertex_cut
from vconn.kernel import (BOT, TOO_BIG, NeighborOracle, bad_vertices,
                          build_neighbor_oracle, detect_scratch, filter_rules, identify,
                          kernel_cuts, scratch_levels, scratch_samples, sketchy_search)
from vconn.maxflow import set_vertex_connectivity, st_vertex_connectivity
from vconn.oracle import oracle_vertex_connectivity
from vconn.stats import RunStats
from vconn.tools.seeding import sample_rate, substream
from vconn.vc_config import RunConfig


@pytest.mark.parametrize("directed", [False, True])
def test_oracle_is_set_difference(directed):
    if directed:
        G = families.random_digraph(30, 0.2, seed=5)
    else:
        G = families.gnp(30, 0.2, seed=5)
    oracle = NeighborOracle(G, G.n, 1, seed=5)
    assert oracle.exact
    for x in range(0, 30, 7):
        for v in G.vertices:
            if v == x:
                continue
            expected = frozenset(G.successors(v)) - G.closed_neighbors(x)
            assert oracle.out_neighbor(x, v) == expected


def test_oracle_memoises():
    oracle = build_neighbor_oracle(families.cycle(8), 2, 1)
    first = oracle.out_neighbor(0, 2)
    assert first == frozenset({3})
    assert oracle.out_neighbor(0, 2) is first


def test_oracle_too_big():
    # Vertex 1 has 100 neighbours besides 0; the sparsity is 3.
    edges = [(0, 1)] + [(1, j) for j in range(2, 102)]
    G = UndirectedGraph.from_edges(102, edges)
    conf = RunConfig(seed=0).replace(oracle_factor=0.5)
    oracle = NeighborOracle(G, 1, 1, config=conf)
    assert oracle.s == 3 and not oracle.exact
    assert oracle.out_neighbor(0, 1) is TOO_BIG
    assert oracle.out_neighbor(2, 1) is TOO_BIG


@pytest.mark.parametrize("seed", range(20))
def test_oracle_sketched_overlap(seed):
    # 0 and 1 share the 80 neighbours 2..81; only 1 sees 82 and 83.
    edges = [(u, w) for u in (0, 1) for w in range(2, 82)]
    edges += [(1, 82), (1, 83)]
    G = UndirectedGraph.from_edges(84, edges)
    conf = RunConfig(seed=0).replace(oracle_factor=1)
    oracle = NeighborOracle(G, G.n, 1, seed=seed, config=conf)
    assert oracle.s == 5 and not oracle.exact
    assert oracle.out_neighbor(0, 1) == frozenset({82, 83})


@pytest.mark.parametrize("seed", range(2))
def test_oracle_sketched_is_set_difference(seed):
    G, _ = families.planted_cut(5, 10, 25, p_ls=0.7, p_sr=0.8, seed=seed)
    conf = RunConfig(seed=0).replace(oracle_factor=5)
    oracle = NeighborOracle(G, G.n, 1, seed=seed, config=conf)
    assert oracle.s == 19 and not oracle.exact
    decoded = 0
    for x in range(0, G.n, 3):
        for v in G.vertices:
            if v == x:
                continue
            expected = frozenset(G.successors(v)) - G.closed_neighbors(x)
            spread = len(set(G.successors(v)) ^ G.closed_neighbors(x))
            got = oracle.out_neighbor(x, v)
            if spread <= oracle.s // 2:
                assert got == expected
            else:
                assert got is TOO_BIG or got == expected
            decoded += got is not TOO_BIG
    assert decoded > 0


def test_oracle_invalid_queries():
    oracle = NeighborOracle(families.star(5), 1, 1)
    assert oracle.max_query_degree == 3
    assert oracle.admits(1) and not oracle.admits(0)
    with pytest.raises(InvalidQuery):
        oracle.out_neighbor(0, 1)
    with pytest.raises(InvalidQuery):
        oracle.out_neighbor(1, 1)
    with pytest.raises(InvalidQuery):
        NeighborOracle(families.star(5), 1, 0)


def test_isolated_vertex_zero_sketch():
    G = UndirectedGraph.from_edges(4, [(0, 1), (1, 2)])
    oracle = NeighborOracle(G, 2, 1)
    assert oracle.sr_open[3].is_zero()
    assert oracle.out_neighbor(0, 3) == frozenset()


def test_bad_vertices():
    G = families.path(6)
    assert bad_vertices(G, {1, 3}) == frozenset({2})
    assert bad_vertices(G, {2}) == frozenset({1, 2, 3})
    assert bad_vertices(G, set()) == frozenset(G.vertices)


def test_search_bot():
    G = families.path(6)
    oracle = NeighborOracle(G, 1, 1)
    T = {1, 3}
    assert sketchy_search(oracle, 2, T, bad_vertices(G, T)) is BOT
    # Not admitted: |N[x]| > k + 2.
    star = NeighborOracle(families.star(5), 1, 1)
    assert sketchy_search(star, 0, {3}, frozenset()) is BOT


def test_search_cap():
    G = families.path(6)
    oracle = NeighborOracle(G, 1, 1)
    T = {5}
    bad = bad_vertices(G, T)
    assert sketchy_search(oracle, 0, T, bad, cap=0) is BOT
    kernel = sketchy_search(oracle, 0, T, bad)
    assert kernel.N_x == frozenset({1})
    assert kernel.F == frozenset({2, 3})
    assert kernel.N_t == frozenset({4})
    assert kernel.Z == frozenset()
    assert kernel.count == 3
    assert kernel.vertices == (0, 1, 2, 3, 4, -1)
    res = kernel.min_separator()
    assert res.value == 1
    assert len(kernel.lift(res.separator)) == 1


def test_search_common_neighbours():
    G, planted = families.planted_cut(3, 2, 5)
    oracle = NeighborOracle(G, 5, 1)
    T = {6, 8}
    kernel = sketchy_search(oracle, 0, T, bad_vertices(G, T))
    assert kernel.Z == planted.S
    assert kernel.N_x == frozenset({1, 2})
    assert kernel.min_separator().value == 0
    assert kernel.lift(()) == planted.S


@pytest.mark.parametrize("seed", range(4))
@pytest.mark.parametrize("directed", [False, True])
def test_kernel_equivalence(seed, directed):
    """Kernel separator plus `Z` is a minimum `(x, T_x)`-separator of `G`."""
    if directed:
        G = families.random_digraph(16, 0.25, seed=seed)
    else:
        G = families.gnp(16, 0.25, seed=seed)
    oracle = NeighborOracle(G, G.n, 1, seed=seed)
    checked = 0
    for j in range(6):
        T = sample_rate(substream(seed, "test", "T", j), G.n, 0.25)
        bad = bad_vertices(G, T)
        for x in range(0, 16, 3):
            if x in bad:
                continue
            T_x = set(T) - G.closed_neighbors(x)
            kernel = sketchy_search(oracle, x, T, bad)
            assert kernel is not BOT
            nbrs = frozenset(G.successors(x))
            touching = G.in_neighborhood(T_x)
            assert kernel.Z == nbrs & touching
            assert kernel.N_x == nbrs - touching
            res = kernel.min_separator()
            truth = set_vertex_connectivity(G, {x}, T_x)
            assert res.value + len(kernel.Z) == truth.value
            separator = kernel.lift(res.separator)
            assert len(separator) == truth.value
            assert not G.reachable({x}, separator) & T_x
            checked += 1
    assert checked > 0


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("directed", [False, True])
def test_reduction_rules_preserve_value(seed, directed):
    if directed:
        G = families.random_digraph(12, 0.3, seed=seed)
    else:
        G = families.gnp(12, 0.35, seed=seed)
    for s in range(0, 12, 4):
        for t in range(1, 12, 3):
            if s == t or G.has_edge(s, t):
                continue
            value = st_vertex_connectivity(G, s, t).value
            H, Z = identify(G, s, t)
            assert st_vertex_connectivity(H, s, t).value + len(Z) == value
            K = filter_rules(H, s, t)
            assert K.m <= H.m
            assert st_vertex_connectivity(K, s, t).value + len(Z) == value
            assert st_vertex_connectivity(filter_rules(G, s, t), s, t).value == value


def test_filter_adjacent():
    with pytest.raises(InvalidQuery):
        filter_rules(families.path(3), 0, 1)


def test_filter_drops_edges():
    # Edges inside N(s) and inside N(t) are dropped; the far vertex 6 is unreachable.
    G = UndirectedGraph.from_edges(7, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4),
                                       (3, 5), (4, 5), (3, 4), (5, 6)])
    H = filter_rules(G, 0, 5)
    assert not H.has_edge(1, 2)
    assert not H.has_edge(3, 4)
    assert H.degree(6) == 0
    assert st_vertex_connectivity(H, 0, 5).value == 2


def test_scratch_levels():
    conf = RunConfig(seed=0).replace(level_factor=1)
    assert scratch_levels(100, 100, conf) == [1, 2, 4, 8, 16]
    assert scratch_levels(100, 3, conf) == []
    assert scratch_levels(30, 10, RunConfig(seed=0)) == []


def test_scratch_samples(fast_config):
    G = families.cycle(20)
    samples = list(scratch_samples(G, 5, 2, fast_config))
    assert len(samples) == 3
    assert all(p.k == 5 and p.level == 2 for p in samples)
    # |X| = ceil(20 ln 20 / 2) >= 20: every vertex is a candidate.
    assert samples[0].X == tuple(range(20))
    assert samples == list(scratch_samples(G, 5, 2, fast_config))


def test_kernel_cuts_are_valid(fast_config):
    G, _ = families.planted_scratch(30)
    oracle = build_neighbor_oracle(G, 10, 1, config=fast_config)
    stats = RunStats()
    for params in scratch_samples(G, 10, 1, fast_config):
        for cut in kernel_cuts(G, oracle, params, 160, fast_config, stats):
            assert validate_vertex_cut(G, cut)
    assert stats.kernels["built"] + stats.kernels["bot"] == 3 * 30


def test_detect_scratch_planted(fast_config):
    conf = fast_config.replace(level_factor=2)
    G, planted = families.planted_scratch(30)
    assert planted.size == 9
    assert min(G.degrees) == 10
    stats = RunStats()
    cut = detect_scratch(G, 10, conf, stats)
    assert cut.size == 9
    assert validate_vertex_cut(G, cut)
    assert stats.kernels["built"] > 0
    assert stats.levels[1] == stats.kernels["built"]


def test_detect_scratch_min_degree_shortcut(fast_config):
    stats = RunStats()
    cut = detect_scratch(families.cycle(6), 3, fast_config, stats)
    assert cut.size == 2
    assert stats.kernels == {}
    assert detect_scratch(families.complete(4), 2, fast_config) is None


@pytest.mark.parametrize("seed", range(6))
def test_min_cut_small_outside_neighbourhood(seed):
    """For `x` on a side `L` of a minimum cut, `|(L ∪ S) - N[x]| < |L|`."""
    cases = [families.planted_scratch(30, seed=seed)]
    for G in (families.planted_cut(3, 3, 6, p_ls=0.6, seed=seed)[0],
              families.gnp(9, 0.45, seed=seed)):
        cases.append((G, oracle_vertex_connectivity(G).cut))
    for G, cut in cases:
        if cut is None:
            continue
        for side in (cut.L, cut.R):
            for x in side:
                assert len((side | cut.S) - G.closed_neighbors(x)) < len(side)


@pytest.mark.parametrize("level", [1, 2])
@pytest.mark.parametrize("instance", ["planted", "scratch"])
def test_sampling_isolates_small_side(instance, level):
    """`∅ ≠ T_x ⊆ R` for `x ∈ L` is frequent when `|L|/4 <= ℓ̃ <= |L|`."""
    if instance == "planted":
        G, cut = families.planted_cut(2, 3, 20, p_ls=0.6, seed=1)
    else:
        G, cut = families.planted_scratch(30)
    assert len(cut.L) / 4 <= level <= len(cut.L)
    hits = trials = 0
    for seed in range(40):
        for params in scratch_samples(G, cut.size + 1, level, RunConfig(seed=seed)):
            for x in cut.L:
                T_x = params.T - G.closed_neighbors(x)
                hits += bool(T_x) and T_x <= cut.R
                trials += 1
    assert hits / trials >= 0.05


@pytest.mark.parametrize("oracle_factor", [1, 100])
def test_decoded_count_bound(oracle_factor):
    """A search from the small side of a planted cut decodes at most `16k` vertices."""
    G, cut = families.planted_cut(2, 6, 40, p_sr=0.5, seed=3)
    k = cut.size + 1
    conf = RunConfig(seed=0).replace(oracle_factor=oracle_factor)
    built = 0
    for level in (1, 2):
        oracle = NeighborOracle(G, k, level, config=conf)
        for params in scratch_samples(G, k, level, conf):
            bad = bad_vertices(G, params.T)
            for x in cut.L:
                T_x = params.T - G.closed_neighbors(x)
                if not T_x or not T_x <= cut.R:
                    continue
                kernel = sketchy_search(oracle, x, params.T, bad)
                assert kernel is not BOT
                assert len(kernel.F) <= kernel.count <= 16 * k
                assert sketchy_search(oracle, x, params.T, bad, cap=16 * k) is not BOT
                built += 1
    assert built > 0
