"""Randomized reference constructions. Kept apart so the deterministic modules stay RNG-free."""
from __future__ import annotations

import math

import numpy as np

from .chains import ChainCover, chain_cover, entry_table
from .graph import DiGraph, ShortcutSet, condense, hopdist_all, transitive_closure
from .supershortcut import supershortcut


def folklore(g: DiGraph, h_count: int, seed: int, hopset: bool = False) -> ShortcutSet:
    """Sample h_count ordered pairs uniformly; keep those in tc(G)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    reach = transitive_closure(g)
    dist = hopdist_all(g) if hopset else None
    h = ShortcutSet(g.n, [], [] if hopset else None)
    if g.n < 2:
        return h
    us = rng.integers(0, g.n, size=h_count)
    vs = rng.integers(0, g.n, size=h_count)
    for u, v in zip(us.tolist(), vs.tolist()):
        if u != v and reach.reach(u, v) and not g.has_edge(u, v):
            h.add(u, v, dist.distance(u, v) if hopset else None)
    return h


def folklore_beta(n: int) -> int:
    """Hopbound the baseline is checked against when h = n."""
    return math.ceil(4 * math.sqrt(n) * math.log(max(n, 2)))


def kp_randomized(g: DiGraph, D: int, seed: int, c1: float = 2.0, c2: float = 2.0,
                  method: str = "d4") -> ShortcutSet:
    """Chain cover with ℓ = 2n/D, supershortcut, then entry edges from sampled vertices to sampled chains."""
    if D < 1:
        raise ValueError("D must be positive")
    cd = condense(g)
    dag = cd.dag
    n = dag.n
    if n <= 1:
        return cd.lift(ShortcutSet(n))
    rng = np.random.Generator(np.random.PCG64(seed))
    ell = max(1, min(n, math.ceil(2 * n / D)))
    cover = chain_cover(dag, ell)
    h = supershortcut(dag, cover, method)
    k = len(cover.chains)
    ln = math.log(n)
    n_chains = min(k, math.ceil(c1 * n * ln / D ** 2))
    n_nodes = min(n, math.ceil(c2 * n * ln / D))
    picked = sorted(rng.choice(k, size=n_chains, replace=False).tolist()) if k else []
    nodes = sorted(rng.choice(n, size=n_nodes, replace=False).tolist())
    sub = ChainCover(n, tuple(cover.chains[c] for c in picked), cover.ell)
    pos = entry_table(transitive_closure(dag), sub)
    for v in nodes:
        for j, ch in enumerate(sub.chains):
            p = pos[v][j]
            if p >= 0 and ch[p] != v and not dag.has_edge(v, ch[p]):
                h.add(v, ch[p])
    return cd.lift(h)
