"""Deterministic D-shortcut sets via DFS forests and greedy set cover over chains.

For every chain C a DFS tree T^C is grown from C's first vertex over G plus the chain edges.
Exploration order is fixed: from a chain vertex, unexplored neighbours on the same chain
come first (earliest position first), then everything else by ascending id. T^C starts
with C itself; cutting the chain edges splits it into subtrees T'_i hanging off each c_i.

Depth in T^C counts distinct chains on the root path. A relevant subpath of C runs from
some c_i down T'_i to a vertex x at depth D that is the first vertex of its chain on the
path, so these subpaths correspond one-to-one to such endpoints x. A picked chain covers
every relevant subpath it touches; the greedy picks chains until nothing is uncovered.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .chains import ChainCover, chain_cover, entry_table, split_chains
from .graph import DiGraph, ShortcutSet, condense, transitive_closure
from .supershortcut import supershortcut


@dataclass
class DfsTree:
    root_chain: int
    parent: dict          # vertex -> T'-parent, or -1 for a vertex of the root chain
    children: dict        # vertex -> list of T'-children in exploration order
    depth: dict           # vertex -> number of distinct chains on the root path
    first: dict           # vertex -> True if it is the first vertex of its chain on the root path
    order: list           # vertices in DFS preorder
    tree_parent: dict     # parent in the uncut tree T^C (-1 for the root)


@dataclass
class DfsForest:
    cover: ChainCover
    trees: list
    depth_limit: int | None = None

    def treefinder(self, v: int, c: int):
        """The vertex of chain c whose subtree T'_i contains v, or None."""
        t = self.trees[c]
        if v not in t.parent:
            return None
        while t.parent[v] != -1:
            v = t.parent[v]
        return v


def _dfs_graph(g: DiGraph, cover: ChainCover) -> list:
    idx = cover.index
    succ = [set(g.out_adj[v]) for v in range(g.n)]
    for ch in cover.chains:
        for a, b in zip(ch, ch[1:]):
            succ[a].add(b)
    adj = []
    for v in range(g.n):
        if idx[v] is None:
            adj.append(sorted(succ[v]))
            continue
        c = idx[v][0]
        same = sorted((w for w in succ[v] if idx[w] is not None and idx[w][0] == c), key=lambda w: idx[w][1])
        rest = sorted(w for w in succ[v] if idx[w] is None or idx[w][0] != c)
        adj.append(same + rest)
    return adj


def _grow(adj: list, cover: ChainCover, c: int) -> DfsTree:
    cid = cover.chain_of
    root = cover.chains[c][0]
    tparent = {root: -1}
    last = {root: c}          # last chain seen on the root path
    depth = {root: 1}
    order = [root]
    stack = [(root, 0)]
    while stack:
        x, i = stack[-1]
        nb = adj[x]
        while i < len(nb) and nb[i] in tparent:
            i += 1
        if i == len(nb):
            stack.pop()
            continue
        stack[-1] = (x, i + 1)
        y = nb[i]
        tparent[y] = x
        cy = cid[y]
        if cy >= 0 and cy != last[x]:
            depth[y] = depth[x] + 1
            last[y] = cy
        else:
            depth[y] = depth[x]
            last[y] = last[x]
        order.append(y)
        stack.append((y, 0))
    parent, children, first = {}, {}, {}
    for v in order:
        children[v] = []
    for v in order:
        p = tparent[v]
        if cid[v] == c:
            parent[v] = -1
            first[v] = True
            continue
        parent[v] = p
        children[p].append(v)
        first[v] = cid[v] >= 0 and cid[v] != last[p]
    return DfsTree(c, parent, children, depth, first, order, tparent)


def consistent_dfs(g: DiGraph, cover: ChainCover) -> DfsForest:
    if g.topological_order() is None:
        raise ValueError("graph has a cycle; condense it first")
    adj = _dfs_graph(g, cover)
    return DfsForest(cover, [_grow(adj, cover, c) for c in range(len(cover.chains))])


def truncate(forest: DfsForest, D: int) -> DfsForest:
    trees = []
    for t in forest.trees:
        keep = [v for v in t.order if t.depth[v] <= D]
        ks = set(keep)
        trees.append(DfsTree(
            t.root_chain,
            {v: t.parent[v] for v in keep},
            {v: [w for w in t.children[v] if w in ks] for v in keep},
            {v: t.depth[v] for v in keep},
            {v: t.first[v] for v in keep},
            keep,
            {v: t.tree_parent[v] for v in keep},
        ))
    return DfsForest(forest.cover, trees, D)


def _is_endpoint(t: DfsTree, v: int, D: int) -> bool:
    return t.depth[v] == D and t.first[v]


@dataclass
class CoverPotentials:
    forest: DfsForest
    D: int
    cnt: list             # per chain: dict vertex -> live relevant endpoints below (in T')
    alive: list           # per chain: dict vertex -> bool
    phi: np.ndarray       # per chain: φ(C)
    picked: list = field(default_factory=list)

    def phi_c(self, c: int, v: int) -> int:
        """φ^C(v): live count at v if v is the first vertex of its chain, else 0."""
        t = self.forest.trees[c]
        if v not in t.first or not t.first[v] or not self.alive[c].get(v, False):
            return 0
        return self.cnt[c][v]


def init_potentials(forest: DfsForest, D: int, picked=()) -> CoverPotentials:
    """Leaf counts over the truncated forest, with relevant subpaths through ``picked`` chains removed."""
    if forest.depth_limit is None or forest.depth_limit > D:
        forest = truncate(forest, D)
    cid = forest.cover.chain_of
    pk = set(picked)
    K = len(forest.trees)
    cnt, alive = [], []
    phi = np.zeros(K, np.int64)
    for c, t in enumerate(forest.trees):
        dead = set()
        if c in pk:
            dead = set(t.order)
        else:
            for v in t.order:
                p = t.parent[v]
                if cid[v] in pk or (p != -1 and p in dead):
                    dead.add(v)
        cc = {}
        for v in reversed(t.order):
            if v in dead:
                cc[v] = 0
                continue
            cc[v] = (1 if _is_endpoint(t, v, D) else 0) + sum(cc[w] for w in t.children[v])
        al = {v: v not in dead for v in t.order}
        for v in t.order:
            if al[v] and t.first[v]:
                phi[cid[v]] += cc[v]
        cnt.append(cc)
        alive.append(al)
    return CoverPotentials(forest, D, cnt, alive, phi, list(picked))


def pick_and_update(state: CoverPotentials, c: int, oracle_check: bool = False) -> CoverPotentials:
    """Mark chain c as picked: drop every relevant subpath through one of its vertices."""
    if c in state.picked:
        raise ValueError(f"chain {c} already picked")
    cid = state.forest.cover.chain_of
    for c2, t in enumerate(state.forest.trees):
        cnt, alive = state.cnt[c2], state.alive[c2]
        for u in state.forest.cover.chains[c]:
            if not alive.get(u, False):
                continue
            x = cnt[u]
            a = t.parent[u]
            while a != -1 and x:
                cnt[a] -= x
                if t.first[a]:
                    state.phi[cid[a]] -= x
                a = t.parent[a]
            stack = [u]
            while stack:
                y = stack.pop()
                if not alive[y]:
                    continue
                if t.first[y]:
                    state.phi[cid[y]] -= cnt[y]
                cnt[y] = 0
                alive[y] = False
                stack.extend(t.children[y])
    state.picked.append(c)
    if oracle_check:
        ref = init_potentials(state.forest, state.D, state.picked)
        if not np.array_equal(ref.phi, state.phi):
            raise AssertionError(f"potentials diverged after picking {c}")
        for c2 in range(len(state.forest.trees)):
            for v in state.forest.trees[c2].order:
                if state.phi_c(c2, v) != ref.phi_c(c2, v):
                    raise AssertionError(f"φ^{c2}({v}) diverged after picking {c}")
    return state


def greedy_setcover(state: CoverPotentials, oracle_check: bool = False) -> list:
    while len(state.phi) and state.phi.max() > 0:
        c = int(np.argmax(state.phi))   # first maximum = lowest chain id
        pick_and_update(state, c, oracle_check)
    return list(state.picked)


@dataclass
class DetResult:
    h: ShortcutSet
    picked: list
    chains: int
    entry_edges: int
    max_chain_len: int


def det_shortcut_dag(g: DiGraph, D: int, method: str = "d4", oracle_check: bool = False) -> DetResult:
    if D < 1:
        raise ValueError("D must be positive")
    n = g.n
    if n <= 1:
        return DetResult(ShortcutSet(n), [], 0, 0, 0)
    ell = min(n, math.ceil(n / D))
    cover = split_chains(chain_cover(g, ell), math.ceil(n / ell))
    h = supershortcut(g, cover, method)
    forest = truncate(consistent_dfs(g, cover), D)
    state = init_potentials(forest, D)
    picked = greedy_setcover(state, oracle_check)
    reach = transitive_closure(g)
    sub = ChainCover(n, tuple(cover.chains[c] for c in picked), cover.ell)
    pos = entry_table(reach, sub)
    before = len(h)
    for c in picked:
        for v in cover.chains[c]:
            for j, ch in enumerate(sub.chains):
                p = pos[v][j]
                if p >= 0 and ch[p] != v and not g.has_edge(v, ch[p]):
                    h.add(v, ch[p])
    return DetResult(h, picked, len(cover.chains), len(h) - before,
                     max((len(ch) for ch in cover.chains), default=0))


def det_shortcut(g: DiGraph, D: int, method: str = "d4", oracle_check: bool = False) -> ShortcutSet:
    cd = condense(g)
    return cd.lift(det_shortcut_dag(cd.dag, D, method, oracle_check).h)


def setcover_size_bound(n: int, D: int) -> float:
    return 2 * (n / D ** 2) * math.log(n)
