"""Brute-force reference implementations. Slow on purpose, independent of the package code."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

BIG = 10 ** 9


def edges_of(g, h=None):
    out = list(g.edges)
    if h is not None:
        out += [e for e in h.edges if e not in set(g.edges)]
    return out


def floyd_warshall(n, edges):
    d = np.full((n, n), BIG, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v in edges:
        d[u, v] = min(d[u, v], 1)
    for k in range(n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
    return d


def dfs_reach(n, edges):
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
    out = np.zeros((n, n), dtype=bool)
    for s in range(n):
        stack = [s]
        out[s, s] = True
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not out[s, y]:
                    out[s, y] = True
                    stack.append(y)
    return out


def weighted_triples(g, h=None):
    ws = g.weights if g.weights is not None else (1,) * g.m
    out = [(u, v, Fraction(w)) for (u, v), w in zip(g.edges, ws)]
    if h is not None:
        hw = h.weights if h.weights is not None else [1] * len(h)
        out += [(u, v, Fraction(w)) for (u, v), w in zip(h.edges, hw)]
    return out


def simple_path_hopdist(n, triples):
    """best[s][t] = lexicographic min (distance, hops) over all simple paths."""
    adj = [[] for _ in range(n)]
    for u, v, w in triples:
        adj[u].append((v, w))
    best = [[None] * n for _ in range(n)]

    def go(s, x, d, k, seen):
        if best[s][x] is None or (d, k) < best[s][x]:
            best[s][x] = (d, k)
        for y, w in adj[x]:
            if y not in seen:
                seen.add(y)
                go(s, y, d + w, k + 1, seen)
                seen.discard(y)

    for s in range(n):
        go(s, s, Fraction(0), 0, {s})
    return best


def lex_floyd(n, triples):
    """(distance, hops) minimum via Floyd–Warshall over lexicographic pairs."""
    inf = (Fraction(BIG), BIG)
    d = [[inf] * n for _ in range(n)]
    for i in range(n):
        d[i][i] = (Fraction(0), 0)
    for u, v, w in triples:
        d[u][v] = min(d[u][v], (w, 1))
    for k in range(n):
        dk = d[k]
        for i in range(n):
            a = d[i][k]
            if a == inf:
                continue
            row = d[i]
            for j in range(n):
                b = dk[j]
                if b == inf:
                    continue
                c = (a[0] + b[0], a[1] + b[1])
                if c < row[j]:
                    row[j] = c
    return d


# ---- greedy -------------------------------------------------------------------

def brute_phi(n, edges, beta):
    d = floyd_warshall(n, edges)
    m = (d >= beta) & (d < BIG)
    return int(d[m].sum())


def brute_hop_phi(n, triples, beta):
    d = lex_floyd(n, triples)
    tot = 0
    for i in range(n):
        for j in range(n):
            k = d[i][j][1]
            if i != j and beta <= k < BIG:
                tot += k
    return tot


def brute_greedy(n, edges, beta):
    """Full rescan of every tc edge each round; returns [(u, v, Δ)]."""
    edges = list(edges)
    reach = dfs_reach(n, edges)
    out = []
    while True:
        p0 = brute_phi(n, edges, beta)
        if p0 == 0:
            return out
        best = None
        for u in range(n):
            for v in range(n):
                if u != v and reach[u, v]:
                    dl = p0 - brute_phi(n, edges + [(u, v)], beta)
                    if best is None or dl > best[2]:
                        best = (u, v, dl)
        out.append(best)
        edges.append(best[:2])


def brute_greedy_hopset(n, triples, beta):
    triples = list(triples)
    base = lex_floyd(n, triples)
    out = []
    while True:
        p0 = brute_hop_phi(n, triples, beta)
        if p0 == 0:
            return out
        best = None
        for u in range(n):
            for v in range(n):
                if u != v and base[u][v][1] < BIG:
                    e = (u, v, base[u][v][0])
                    dl = p0 - brute_hop_phi(n, triples + [e], beta)
                    if best is None or dl > best[3]:
                        best = (u, v, base[u][v][0], dl)
        out.append(best)
        triples.append(best[:3])


# ---- chain greedy ---------------------------------------------------------------

def valid_path_dprime(n, edges, chains, u):
    """d'(u, e(u, C)) for every chain C u reaches, by enumerating all valid paths from u."""
    cid = [-1] * n
    for c, ch in enumerate(chains):
        for v in ch:
            cid[v] = c
    reach = dfs_reach(n, edges)
    entry = {}
    for c, ch in enumerate(chains):
        for v in ch:
            if reach[u, v]:
                entry[c] = v
                break
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
    best = {}

    def ok(path):
        seen_chain = {}
        for i, v in enumerate(path):
            c = cid[v]
            if c < 0:
                continue
            if c in seen_chain:
                if seen_chain[c] != i - 1:   # left the chain and came back
                    return False
            elif v != entry[c]:
                return False
            seen_chain[c] = i
        return True

    def go(path):
        if not ok(path):
            return
        x = path[-1]
        k = len({cid[v] for v in path if cid[v] >= 0})
        if cid[x] >= 0 and entry.get(cid[x]) == x:
            c = cid[x]
            best[c] = min(best.get(c, BIG), k)
        for y in adj[x]:
            go(path + [y])

    go([u])
    if cid[u] >= 0:
        best[cid[u]] = 0
    return {c: best[c] for c in entry if c in best}


# ---- set cover --------------------------------------------------------------------

def root_path(tree, v):
    out = [v]
    while tree.tree_parent[out[-1]] != -1:
        out.append(tree.tree_parent[out[-1]])
    return out[::-1]


def relevant_subpaths(forest, D):
    """All relevant subpaths as (tree id, vertex tuple), enumerated by walking root paths."""
    cid = forest.cover.chain_of
    out = []
    for c, t in enumerate(forest.trees):
        for x in t.order:
            if cid[x] < 0 or cid[x] == c:
                continue
            rp = root_path(t, x)
            # start at the last vertex of chain c on the root path
            i = max(j for j, v in enumerate(rp) if cid[v] == c)
            pi = rp[i:]
            if sum(1 for v in pi if cid[v] == c) != 1:
                continue
            if sum(1 for v in pi if cid[v] == cid[x]) != 1:
                continue
            if len({cid[v] for v in pi if cid[v] >= 0}) != D:
                continue
            out.append((c, tuple(pi)))
        if D == 1:
            out += [(c, (v,)) for v in forest.cover.chains[c] if v in t.tree_parent]
    return out


def brute_chain_potentials(forest, D, picked):
    """φ(C) = number of uncovered relevant subpaths touching chain C."""
    cid = forest.cover.chain_of
    pk = set(picked)
    phi = [0] * len(forest.cover.chains)
    for c, p in relevant_subpaths(forest, D):
        chs = {cid[v] for v in p if cid[v] >= 0}
        if chs & pk:
            continue
        for k in chs:
            phi[k] += 1
    return phi


# ---- perturbation -------------------------------------------------------------------

def shortest_path_counts(g):
    """count[s][t] of distinct shortest s-t paths in a weighted DAG (exact rationals)."""
    n = g.n
    order = g.topological_order()
    ws = {e: Fraction(w) for e, w in zip(g.edges, g.weights)}
    preds = [[] for _ in range(n)]
    for u, v in g.edges:
        preds[v].append(u)
    out = []
    for s in range(n):
        dist = [None] * n
        cnt = [0] * n
        dist[s], cnt[s] = Fraction(0), 1
        for v in order:
            if v == s:
                continue
            cands = [(dist[u] + ws[(u, v)], u) for u in preds[v] if dist[u] is not None]
            if not cands:
                continue
            m = min(c[0] for c in cands)
            dist[v] = m
            cnt[v] = sum(cnt[u] for d, u in cands if d == m)
        out.append(cnt)
    return out


def brute_vertex_potentials(forest, D, picked):
    """φ^C(v): uncovered relevant subpaths of tree C on which v is the first vertex of its chain."""
    cid = forest.cover.chain_of
    pk = set(picked)
    out = {}
    for c, p in relevant_subpaths(forest, D):
        chs = {cid[v] for v in p if cid[v] >= 0}
        if chs & pk:
            continue
        seen = set()
        for v in p:
            if cid[v] >= 0 and cid[v] not in seen:
                seen.add(cid[v])
                out[(c, v)] = out.get((c, v), 0) + 1
    return out


def check_forest(g, cover, forest):
    """DFS-forest properties (1)-(3), checked exhaustively."""
    r = dfs_reach(g.n, g.edges)
    cid = cover.chain_of
    for c, t in enumerate(forest.trees):
        assert t.order[0] == cover.chains[c][0]
        paths = {v: root_path(t, v) for v in t.order}
        # (1) every vertex reachable from u on C is below u in T^C
        for u in cover.chains[c]:
            for v in np.flatnonzero(r[u]):
                assert v in paths and u in paths[v]
        for v, p in paths.items():
            # (3) each chain occupies one consecutive stretch of the root path
            seen = {}
            for i, x in enumerate(p):
                k = cid[x]
                if k >= 0:
                    assert k not in seen or seen[k] == i - 1
                    seen[k] = i
            # (2) a suffix starting at a vertex w of another chain is a path of T^{C(w)}
            for i, w in enumerate(p):
                k = cid[w]
                if k < 0 or k == c:
                    continue
                t2 = forest.trees[k]
                assert v in t2.tree_parent
                q = root_path(t2, v)
                assert tuple(q[len(q) - (len(p) - i):]) == tuple(p[i:])


def check_cover_state(forest, D, state):
    """Chain and vertex potentials of ``state`` equal the enumeration."""
    assert list(state.phi) == brute_chain_potentials(forest, D, state.picked)
    vref = brute_vertex_potentials(forest, D, state.picked)
    for c, t in enumerate(forest.trees):
        for v in t.order:
            if t.depth[v] <= D:
                assert state.phi_c(c, v) == vref.get((c, v), 0)
    # φ(C) is the sum of φ^{C'}(v) over v on C
    cid = forest.cover.chain_of
    tot = [0] * len(forest.trees)
    for c, t in enumerate(forest.trees):
        for v in t.order:
            if t.depth[v] <= D and cid[v] >= 0:
                tot[cid[v]] += state.phi_c(c, v)
    assert tot == list(state.phi)
