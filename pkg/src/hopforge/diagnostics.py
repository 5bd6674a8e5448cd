"""Path-cover and stickiness diagnostics over canonical shortest paths.

Canonical path from s to t: the lexicographically smallest vertex sequence among shortest
paths in G ∪ H. Such paths are consistent (sub-paths of canonical paths are canonical).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import INF, DiGraph, ShortcutSet, all_dist


@dataclass
class PathCoverQ:
    beta: int
    paths: list   # vertex tuples
    owned: list   # sets q*, pairwise disjoint


class CanonicalPaths:
    def __init__(self, g: DiGraph, h: ShortcutSet | None = None):
        gu = g.union(h)
        self.D = all_dist(g, h)
        self.adj = [sorted(a) for a in gu.out_adj]
        self.n = g.n

    def path(self, s: int, t: int) -> tuple | None:
        D = self.D
        if D[s, t] >= INF:
            return None
        out = [s]
        cur = s
        while cur != t:
            need = D[cur, t] - 1
            cur = next(w for w in self.adj[cur] if D[w, t] == need)
            out.append(cur)
        return tuple(out)

    def pairs(self):
        n = self.n
        for s in range(n):
            for t in range(n):
                if s != t and self.D[s, t] < INF:
                    yield s, t


def path_cover_q(g: DiGraph, h: ShortcutSet | None, beta: int, cp: CanonicalPaths | None = None) -> PathCoverQ:
    """Greedily collect canonical paths with ≤ β/4 vertices that own ≥ β/8 vertices not owned yet."""
    cp = cp or CanonicalPaths(g, h)
    taken = set()
    paths, owned = [], []
    for s, t in cp.pairs():
        if cp.D[s, t] + 1 > beta / 4:
            continue
        p = cp.path(s, t)
        new = [v for v in p if v not in taken]
        if len(new) >= beta / 8:
            paths.append(p)
            owned.append(set(new))
            taken.update(new)
    return PathCoverQ(beta, paths, owned)


def stickiness(g: DiGraph, h: ShortcutSet | None, beta: int, q: PathCoverQ,
               cp: CanonicalPaths | None = None) -> float:
    """Mean |suffix(π) ∩ q*| over (active π, q) pairs that intersect; suffix = last ⌊|π|/4⌋ vertices."""
    cp = cp or CanonicalPaths(g, h)
    act = [(s, t) for s, t in cp.pairs() if cp.D[s, t] >= beta]
    if not act:
        raise ValueError("no active pairs; stickiness is undefined")
    owner = {}
    for j, o in enumerate(q.owned):
        for v in o:
            owner[v] = j
    num = den = 0
    for s, t in act:
        p = cp.path(s, t)
        k = len(p) // 4
        counts = {}
        for v in p[len(p) - k:] if k else ():
            if v in owner:
                counts[owner[v]] = counts.get(owner[v], 0) + 1
        num += sum(counts.values())
        den += len(counts)
    if den == 0:
        raise ValueError("no active suffix meets an owned set; stickiness is undefined")
    return num / den


def active_pairs(g: DiGraph, h: ShortcutSet | None, beta: int) -> np.ndarray:
    D = all_dist(g, h)
    a = (D >= beta) & (D < INF)
    np.fill_diagonal(a, False)
    return np.argwhere(a)
