"""Chain cover + supershortcut + greedy reduction of the normalized-distance potential.

A path from a is *valid* if it meets every chain in one contiguous stretch that starts at the
earliest vertex of that chain reachable from a. d'(a, b) is the fewest chains on a valid a-b
path (a's own chain counts). Important pairs are (a, e(a, C)) over all chains C; a pair whose
start already lies on C has d' = 0.

On a DAG, valid paths cannot come back to a chain they left, so d' from a is a topological
DP over vertices: stepping onto a non-chain vertex or along the current chain is free, and
stepping onto another chain costs 1 and is only allowed at a's entry vertex of that chain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np

from .chains import ChainCover, chain_cover, entry_table
from .graph import DiGraph, ShortcutSet, condense, transitive_closure
from .greedy import RoundBudgetExceeded
from .supershortcut import supershortcut

BIG = 1 << 30


@numba.njit(cache=True)
def _labels(indptr, indices, cid, topo, tpos, ent_row, start, start_label, lab):
    n = lab.shape[0]
    for i in range(n):
        lab[i] = BIG
    lab[start] = start_label
    for i in range(tpos[start], n):
        x = topo[i]
        lx = lab[x]
        if lx == BIG:
            continue
        cx = cid[x]
        for j in range(indptr[x], indptr[x + 1]):
            y = indices[j]
            cy = cid[y]
            if cy < 0 or cy == cx:
                c = lx
            elif ent_row[cy] == y:
                c = lx + 1
            else:
                continue
            if c < lab[y]:
                lab[y] = c


@numba.njit(cache=True)
def _all_labels(indptr, indices, cid, topo, tpos, ent):
    n = ent.shape[0]
    lab = np.empty((n, n), np.int64)
    for a in range(n):
        _labels(indptr, indices, cid, topo, tpos, ent[a], a, 1 if cid[a] >= 0 else 0, lab[a])
    return lab


@numba.njit(cache=True)
def _gains(indptr, indices, cid, topo, tpos, ent, lab, blocked, X):
    n, K = ent.shape
    delta = np.zeros((n, K), np.int64)
    rw = np.empty(n, np.int64)
    g = np.zeros(X + 2, np.int64)
    for a in range(n):
        ca = cid[a]
        for k in range(K):
            w = ent[a, k]
            if w < 0 or k == ca:
                continue
            _labels(indptr, indices, cid, topo, tpos, ent[a], w, 0, rw)
            for x in range(X + 1):
                tot = 0
                for k2 in range(K):
                    b = ent[a, k2]
                    if b < 0 or k2 == ca or rw[b] == BIG:
                        continue
                    diff = lab[a, b] - x - 1 - rw[b]
                    if diff > 0:
                        tot += diff
                g[x] = tot
            if g[0] == 0:
                continue
            for v in range(n):
                lv = lab[a, v]
                if lv > X or cid[v] == k or ent[v, k] != w or blocked[v, k]:
                    continue
                delta[v, k] += g[lv]
    return delta


@dataclass
class NormalizedState:
    """Shortcut set over a DAG with a fixed chain cover, plus the current d' table."""

    g: DiGraph
    cover: ChainCover
    h: ShortcutSet
    ent: np.ndarray = field(init=False)       # ent[a, k] = entry vertex of a on chain k, or -1
    cid: np.ndarray = field(init=False)
    lab: np.ndarray = field(init=False)

    def __post_init__(self):
        order = self.g.topological_order()
        if order is None:
            raise ValueError("graph has a cycle; condense it first")
        n, K = self.g.n, len(self.cover.chains)
        self.topo = np.asarray(order, np.int64)
        self.tpos = np.empty(n, np.int64)
        self.tpos[self.topo] = np.arange(n)
        self.cid = np.asarray(self.cover.chain_of, np.int64)
        pos = entry_table(transitive_closure(self.g), self.cover)
        self.ent = np.full((n, max(K, 1)), -1, np.int64)
        for a in range(n):
            for k in range(K):
                if pos[a][k] >= 0:
                    self.ent[a, k] = self.cover.chains[k][pos[a][k]]
        self.refresh()

    def _csr(self):
        gu = self.g.union(self.h)
        indptr = np.zeros(self.g.n + 1, np.int64)
        indices = np.empty(gu.m, np.int64)
        for i, (u, v) in enumerate(gu.edges):
            indptr[u + 1] += 1
            indices[i] = v
        np.cumsum(indptr, out=indptr)
        return indptr, indices

    def refresh(self) -> None:
        self.indptr, self.indices = self._csr()
        self.lab = _all_labels(self.indptr, self.indices, self.cid, self.topo, self.tpos, self.ent)

    def pair_mask(self) -> np.ndarray:
        """mask[a, k]: (a, e(a, C_k)) is an important pair with a off chain k."""
        m = self.ent >= 0
        on = self.cid >= 0
        m[np.nonzero(on)[0], self.cid[on]] = False
        return m

    def pair_values(self) -> np.ndarray:
        vals = np.zeros(self.ent.shape, np.int64)
        m = self.pair_mask()
        a, k = np.nonzero(m)
        vals[a, k] = self.lab[a, self.ent[a, k]]
        return vals

    def phi(self) -> int:
        return int(self.pair_values().sum())

    def max_dist(self) -> int:
        v = self.pair_values()
        return int(v.max()) if v.size else 0

    def gains(self) -> np.ndarray:
        n, K = self.ent.shape
        blocked = np.zeros((n, K), np.bool_)
        present = set(self.g.edges) | set(self.h.edges)
        for a in range(n):
            for k in range(K):
                w = self.ent[a, k]
                if w >= 0 and (a, int(w)) in present:
                    blocked[a, k] = True
        X = self.max_dist()
        return _gains(self.indptr, self.indices, self.cid, self.topo, self.tpos,
                      self.ent, self.lab, blocked, X)

    def best(self):
        d = self.gains()
        top = int(d.max()) if d.size else 0
        if top <= 0:
            return None
        cands = [(int(v), int(self.ent[v, k])) for v, k in np.argwhere(d == top)]
        v, w = min(cands)
        return v, w, top


def normalized_dist(g: DiGraph, cover: ChainCover, u: int, h: ShortcutSet | None = None) -> dict:
    """d'(u, e(u, C).target) for every chain C that u reaches, keyed by chain id."""
    st = NormalizedState(g, cover, h if h is not None else ShortcutSet(g.n))
    out = {}
    for k in range(len(cover.chains)):
        w = int(st.ent[u, k])
        if w < 0:
            continue
        out[k] = 0 if st.cid[u] == k else int(st.lab[u, w])
    return out


def phi_prime(state: NormalizedState) -> int:
    return state.phi()


@dataclass
class ChainGreedyResult:
    h: ShortcutSet
    rounds: int
    phi_trace: list
    final_max: int
    threshold: int
    chains: int


def chain_greedy_dag(g: DiGraph, max_rounds: int | None = None, method: str = "d4") -> ChainGreedyResult:
    n = g.n
    thr = math.ceil(round(n ** (1 / 3), 9))
    if n <= 1:
        return ChainGreedyResult(ShortcutSet(n), 0, [0], 0, thr, 0)
    ell = min(n, math.ceil(2 * n ** (2 / 3)))
    cover = chain_cover(g, ell)
    h = supershortcut(g, cover, method)
    st = NormalizedState(g, cover, h)
    phi = st.phi()
    trace = [phi]
    budget = phi if max_rounds is None else max_rounds
    rounds = 0
    while st.max_dist() > thr:
        if rounds >= budget:
            raise RoundBudgetExceeded(f"round budget {budget} exhausted, max d' = {st.max_dist()}")
        pick = st.best()
        if pick is None:
            raise RuntimeError("no important pair improves the normalized potential")
        v, w, d = pick
        h.add(v, w)
        st.refresh()
        new = st.phi()
        if phi - new != d:
            raise RuntimeError(f"predicted drop {d} but potential fell by {phi - new}")
        phi = new
        trace.append(phi)
        rounds += 1
    return ChainGreedyResult(h, rounds, trace, st.max_dist(), thr, len(cover.chains))


def chain_greedy_shortcut(g: DiGraph, max_rounds: int | None = None, method: str = "d4") -> ShortcutSet:
    """Runs on the condensation and lifts the result back with star edges."""
    cd = condense(g)
    res = chain_greedy_dag(cd.dag, max_rounds, method)
    return cd.lift(res.h)


def chain_greedy_bound(n: int) -> int:
    """Hopbound guaranteed on a DAG with n vertices (chains ≤ 5 vertices each on the valid path)."""
    return 7 * math.ceil(round(n ** (1 / 3), 9))
