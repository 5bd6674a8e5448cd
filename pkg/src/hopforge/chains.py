"""Path covers, vertex-disjoint chain covers and chain entry points."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from .graph import DiGraph, ReachMatrix, ShortcutSet, condense, diameter, transitive_closure
from .supershortcut import supershortcut


@dataclass(frozen=True)
class PathMultiset:
    paths: tuple   # tuple of vertex tuples, possibly empty
    ell: int

    def covered(self) -> set:
        return {v for p in self.paths for v in p}


@dataclass(frozen=True, eq=False)
class ChainCover:
    n: int
    chains: tuple  # tuple of vertex tuples, pairwise disjoint, non-empty
    ell: int

    @cached_property
    def index(self) -> list:
        """vertex -> (chain id, position) or None."""
        idx = [None] * self.n
        for c, ch in enumerate(self.chains):
            for i, v in enumerate(ch):
                idx[v] = (c, i)
        return idx

    @cached_property
    def chain_of(self) -> list:
        return [-1 if x is None else x[0] for x in self.index]

    def covered(self) -> set:
        return {v for ch in self.chains for v in ch}

    def __len__(self):
        return len(self.chains)


def _require_order(g: DiGraph) -> list:
    order = g.topological_order()
    if order is None:
        raise ValueError("graph has a cycle; condense it first")
    return order


def _best_new_path(g: DiGraph, order: list, weight: list) -> tuple:
    """Path maximizing the total vertex weight; lexicographically smallest among optimal ones."""
    best = [0] * g.n
    for v in reversed(order):
        tail = max((best[w] for w in g.out_adj[v]), default=0)
        best[v] = weight[v] + tail
    top = max(best, default=0)
    if top == 0:
        return ()
    cur = min(v for v in range(g.n) if best[v] == top)
    path = [cur]
    while best[cur] > weight[cur]:
        need = best[cur] - weight[cur]
        cur = min(w for w in g.out_adj[cur] if best[w] == need)
        path.append(cur)
    return tuple(path)


def greedy_ell_cover(g: DiGraph, ell: int) -> PathMultiset:
    """ℓ rounds of picking a path that covers the most not-yet-covered vertices."""
    if not 1 <= ell <= max(g.n, 1):
        raise ValueError(f"ell={ell} out of range for n={g.n}")
    order = _require_order(g)
    weight = [1] * g.n
    paths = []
    for _ in range(ell):
        p = _best_new_path(g, order, weight)
        for v in p:
            weight[v] = 0
        paths.append(p)
    return PathMultiset(tuple(paths), ell)


def disjoint_chains(cover: PathMultiset, n: int) -> ChainCover:
    seen = set()
    chains = []
    for p in cover.paths:
        ch = tuple(v for v in p if v not in seen)
        seen.update(ch)
        if ch:
            chains.append(ch)
    return ChainCover(n, tuple(chains), cover.ell)


def split_chains(c: ChainCover, max_len: int) -> ChainCover:
    if max_len < 1:
        raise ValueError("max_len must be positive")
    out = []
    for ch in c.chains:
        for i in range(0, len(ch), max_len):
            out.append(ch[i:i + max_len])
    return ChainCover(c.n, tuple(out), c.ell)


def chain_cover(g: DiGraph, ell: int) -> ChainCover:
    return disjoint_chains(greedy_ell_cover(g, ell), g.n)


def verify_cover(g: DiGraph, c) -> int:
    """Exact max number of uncovered vertices on any path of the DAG g."""
    order = _require_order(g)
    cov = c.covered()
    best = [0] * g.n
    for v in reversed(order):
        tail = max((best[w] for w in g.out_adj[v]), default=0)
        best[v] = (0 if v in cov else 1) + tail
    return max(best, default=0)


def cover_mass(g: DiGraph, pm: PathMultiset) -> dict:
    """Total path length against the two terms of the size bound (reported, not asserted)."""
    total = sum(len(p) for p in pm.paths)
    return {"total": total, "ell_n": pm.ell * g.n, "diam_n": diameter(g) * g.n}


def entry(reach: ReachMatrix, u: int, chain: tuple):
    """(u, v) with v the earliest vertex of ``chain`` reachable from u, or None.

    If u lies on the chain this is (u, u)."""
    row = reach.rows[u]
    for v in chain:
        if (row >> v) & 1:
            return (u, v)
    return None


def entry_table(reach: ReachMatrix, cover: ChainCover) -> list:
    """ent[u][c] = position of e(u, C_c) on chain c, or -1."""
    n = reach.n
    ent = [[-1] * len(cover.chains) for _ in range(n)]
    for c, ch in enumerate(cover.chains):
        # binary search works because reachability to chain positions is upward closed
        for u in range(n):
            row = reach.rows[u]
            if not (row >> ch[-1]) & 1:
                continue
            lo, hi = 0, len(ch) - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if (row >> ch[mid]) & 1:
                    hi = mid
                else:
                    lo = mid + 1
            ent[u][c] = lo
    return ent


def format_cover(c: ChainCover) -> str:
    return "\n".join([str(len(c.chains))] + [" ".join(map(str, ch)) for ch in c.chains]) + "\n"


def parse_cover(text: str, n: int, ell: int | None = None) -> ChainCover:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    k = int(lines[0])
    chains = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1:1 + k])
    if len(chains) != k:
        raise ValueError(f"expected {k} chains, found {len(chains)}")
    seen = set()
    for ch in chains:
        if seen.intersection(ch):
            raise ValueError("chains are not vertex-disjoint")
        seen.update(ch)
    return ChainCover(n, chains, ell if ell is not None else k)


def sqrt_shortcut(g: DiGraph, method: str = "d4") -> ShortcutSet:
    """ℓ = ⌈√n⌉ chain cover of the condensation, every chain supershortcut."""
    cd = condense(g)
    dag = cd.dag
    if dag.n <= 1:
        return cd.lift(ShortcutSet(dag.n))
    cover = chain_cover(dag, math.ceil(math.sqrt(dag.n)))
    return cd.lift(supershortcut(dag, cover, method))


def check_chains(g: DiGraph, c: ChainCover, reach: ReachMatrix | None = None) -> None:
    """Raise if chains overlap or some consecutive pair is not in tc(g)."""
    reach = reach or transitive_closure(g)
    seen = set()
    for ch in c.chains:
        for a, b in zip(ch, ch[1:]):
            if not reach.reach(a, b) or a == b:
                raise ValueError(f"({a},{b}) is not a tc pair")
        if seen.intersection(ch):
            raise ValueError("chains overlap")
        seen.update(ch)
