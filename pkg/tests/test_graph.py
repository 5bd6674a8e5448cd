from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopforge import generators as gen
from hopforge.graph import (INF, DiGraph, ShortcutSet, all_dist, condense, diameter, hopdist_all,
                            parse_graph, parse_shortcuts, format_edges, perturb_unique,
                            transitive_closure, validate_hopset, validate_shortcut_set)
from hopforge.greedy import greedy_shortcut
from oracles import (BIG, dfs_reach, floyd_warshall, shortest_path_counts, simple_path_hopdist,
                     weighted_triples)


def digraphs(max_n=12):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(
        st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n)))


# ---- construction and I/O ---------------------------------------------------

def test_from_edges_drops_loops_and_duplicates():
    with pytest.warns(UserWarning):
        g = DiGraph.from_edges(3, [(0, 1), (0, 1), (1, 1), (1, 2)])
    assert g.edges == ((0, 1), (1, 2))


def test_parallel_weighted_edges_keep_minimum():
    with pytest.warns(UserWarning):
        g = DiGraph.from_edges(2, [(0, 1, 5), (0, 1, 2)], weighted=True)
    assert g.weight(0, 1) == 2


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        DiGraph.from_edges(2, [(0, 2)])
    with pytest.raises(ValueError):
        DiGraph.from_edges(2, [(0, 1, 0)], weighted=True)
    with pytest.raises(ValueError):
        parse_graph("3 2\n0 1\n")


def test_text_roundtrip_random_dag():
    g = gen.random_dag(64, 0.05, 7)
    g2 = parse_graph(format_edges(g.n, [(u, v, None) for u, v in g.edges], False))
    assert g2.n == g.n and g2.edges == g.edges


def test_weighted_roundtrip_with_fractions():
    g = DiGraph.from_edges(3, [(0, 1, Fraction(1, 3)), (1, 2, 2)], weighted=True)
    text = format_edges(g.n, [(u, v, w) for (u, v), w in zip(g.edges, g.weights)], True)
    g2 = parse_graph(text)
    assert g2.weights == g.weights
    h = parse_shortcuts("3 1 weighted\n0 2 7/3\n")
    assert h.triples() == [(0, 2, Fraction(7, 3))]


# ---- condensation -------------------------------------------------------------

def test_condense_dag_is_identity():
    g = gen.random_dag(30, 0.1, 1)
    cd = condense(g)
    assert cd.comp == tuple(range(30)) and len(cd.stars) == 0
    assert cd.dag.edges == g.edges


def test_condense_three_cycle_star():
    g = DiGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    cd = condense(g)
    assert cd.k == 1
    # hub 0 needs 0->1, 1->0, 0->2, 2->0; two of them are already edges of g
    assert set(cd.stars) == {(1, 0), (0, 2)}
    assert set(cd.stars) | set(g.edges) >= {(0, 1), (1, 0), (0, 2), (2, 0)}


def test_condense_random_digraph_lifts_validly():
    g = gen.random_digraph(64, 0.05, 3)
    cd = condense(g)
    assert cd.dag.is_dag()
    for u, v in g.edges:
        assert cd.comp[u] == cd.comp[v] or cd.dag.has_edge(cd.comp[u], cd.comp[v])
    # stars alone give hop distance ≤ 2 inside each component
    d = all_dist(g, cd.stars)
    for ms in cd.members:
        for a in ms:
            for b in ms:
                assert d[a, b] <= 2


@settings(max_examples=60, deadline=None)
@given(digraphs())
def test_condense_is_acyclic_and_consistent(data):
    n, edges = data
    g = DiGraph.from_edges(n, sorted({e for e in edges if e[0] != e[1]}))
    cd = condense(g)
    assert cd.dag.is_dag()
    r = dfs_reach(n, g.edges)
    for a in range(n):
        for b in range(n):
            assert (cd.comp[a] == cd.comp[b]) == (r[a, b] and r[b, a])


# ---- reachability and distances ----------------------------------------------------

def test_reach_examples():
    r = transitive_closure(gen.path(3))
    assert r.reach(0, 2) and not r.reach(2, 0)
    r0 = transitive_closure(DiGraph.from_edges(4, []))
    assert (r0.matrix == np.eye(4, dtype=bool)).all()


@settings(max_examples=60, deadline=None)
@given(digraphs(16))
def test_reach_matches_dfs(data):
    n, edges = data
    g = DiGraph.from_edges(n, sorted({e for e in edges if e[0] != e[1]}))
    assert (transitive_closure(g).matrix == dfs_reach(n, g.edges)).all()


def test_dist_examples():
    p5 = gen.path(5)
    assert all_dist(p5)[0, 4] == 4
    assert all_dist(p5, ShortcutSet(5, [(0, 4)]))[0, 4] == 1


def test_dist_matches_floyd_warshall():
    g = gen.random_dag(32, 0.08, 5)
    r = transitive_closure(g)
    rng = np.random.default_rng(0)
    pairs = [(u, v) for u in range(32) for v in range(32) if u != v and r.reach(u, v)]
    h = ShortcutSet(32)
    for i in rng.choice(len(pairs), size=10, replace=False):
        h.add(*pairs[i])
    d = all_dist(g, h)
    fw = floyd_warshall(32, list(g.edges) + list(h.edges))
    assert ((d == INF) == (fw == BIG)).all()
    assert (d[d < INF] == fw[fw < BIG]).all()


def test_hopdist_examples():
    g = DiGraph.from_edges(3, [(0, 1, 1), (1, 2, 1)], weighted=True)
    h = ShortcutSet(3, [(0, 2)], [2])
    hd = hopdist_all(g, h)
    assert hd.distance(0, 2) == 2 and hd.hops[0][2] == 1
    hd0 = hopdist_all(g)
    assert hd0.distance(0, 2) == 2 and hd0.hops[0][2] == 2


def test_hopdist_matches_simple_paths():
    g = gen.random_weighted_dag(24, 0.12, 5, seed=2)
    hd = hopdist_all(g)
    best = simple_path_hopdist(g.n, weighted_triples(g))
    for s in range(g.n):
        for t in range(g.n):
            if best[s][t] is None:
                assert hd.dist[s][t] is None
            else:
                assert (hd.distance(s, t), hd.hops[s][t]) == best[s][t]


@settings(max_examples=40, deadline=None)
@given(digraphs(10), st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=6))
def test_adding_edges_never_increases_distance(data, extra):
    n, edges = data
    g = DiGraph.from_edges(n, sorted({e for e in edges if e[0] != e[1]}))
    r = transitive_closure(g)
    h = ShortcutSet(n)
    for u, v in extra:
        if u < n and v < n and u != v and r.reach(u, v):
            h.add(u, v)
    d0, d1 = all_dist(g), all_dist(g, h)
    assert (d1 <= d0).all()
    assert ((d1 < INF) == (d0 < INF)).all()


# ---- validators ------------------------------------------------------------------

def test_validate_shortcut_examples():
    assert validate_shortcut_set(gen.path(3), ShortcutSet(3, [(0, 2)]), 1).valid
    rep = validate_shortcut_set(gen.path(5), ShortcutSet(5), 3)
    assert not rep.valid and rep.kind == "hopbound" and rep.worst_pair == (0, 4) and rep.worst == 4
    bad = validate_shortcut_set(gen.path(3), ShortcutSet(3, [(2, 0)]), 5)
    assert not bad.valid and bad.kind == "non-tc-edge"


def test_validate_greedy_output_on_random_dag():
    g = gen.random_dag(40, 0.08, 9)
    h, _ = greedy_shortcut(g, 4)
    assert validate_shortcut_set(g, h, 3).valid


def test_validate_hopset_examples():
    g = DiGraph.from_edges(3, [(0, 1, 1), (1, 2, 1)], weighted=True)
    assert validate_hopset(g, ShortcutSet(3, [(0, 2)], [2]), 1).valid
    rep = validate_hopset(g, ShortcutSet(3, [(0, 2)], [1]), 1)
    assert not rep.valid and rep.kind == "distance-corrupted"
    rep = validate_hopset(g, ShortcutSet(3, [], []), 1)
    assert not rep.valid and rep.kind == "hopbound"


def test_diameter():
    assert diameter(gen.path(6)) == 5
    assert diameter(gen.total_order(6)) == 1


# ---- unique shortest paths -------------------------------------------------------------

def _sp_paths(g, s, t):
    """All shortest s-t vertex sequences (small graphs only)."""
    ws = dict(zip(g.edges, g.weights))
    adj = g.out_adj
    out = []

    def go(p, d):
        x = p[-1]
        if x == t:
            out.append((d, tuple(p)))
            return
        for y in adj[x]:
            go(p + [y], d + ws[(x, y)])

    go([s], 0)
    if not out:
        return set()
    m = min(d for d, _ in out)
    return {p for d, p in out if d == m}


def test_perturb_diamond():
    g = DiGraph.from_edges(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)], weighted=True)
    assert len(_sp_paths(g, 0, 3)) == 2
    assert len(_sp_paths(perturb_unique(g), 0, 3)) == 1


def test_perturb_keeps_unique_paths():
    g = DiGraph.from_edges(4, [(0, 1, 1), (1, 3, 1), (0, 2, 2), (2, 3, 1), (0, 3, 5)], weighted=True)
    p = perturb_unique(g)
    for s in range(4):
        for t in range(4):
            assert _sp_paths(p, s, t) == _sp_paths(g, s, t)


@pytest.mark.parametrize("seed", range(5))
def test_perturb_unique_counts(seed):
    g = gen.random_weighted_dag(20, 0.2, 2, seed)
    p = perturb_unique(g)
    cnt = shortest_path_counts(p)
    base = shortest_path_counts(g)
    r = transitive_closure(g)
    assert any(base[s][t] > 1 for s in range(20) for t in range(20))
    for s in range(20):
        for t in range(20):
            assert cnt[s][t] == (1 if r.reach(s, t) else 0)


def test_perturb_random_mode_unique():
    g = gen.random_weighted_dag(16, 0.3, 2, 4)
    p = perturb_unique(g, rng=np.random.default_rng(1))
    cnt = shortest_path_counts(p)
    r = transitive_closure(g)
    assert all(cnt[s][t] == (1 if r.reach(s, t) else 0) for s in range(16) for t in range(16))


def test_perturb_preserves_shortest_path_choice():
    g = gen.random_weighted_dag(16, 0.3, 3, 8)
    p = perturb_unique(g)
    for s in range(0, 16, 3):
        for t in range(16):
            assert _sp_paths(p, s, t) <= _sp_paths(g, s, t)
