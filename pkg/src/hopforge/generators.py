"""Seeded graph families. All randomness goes through numpy's PCG64 generator."""
from __future__ import annotations

import numpy as np

from .graph import DiGraph


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _check(n, p=None):
    if n < 0:
        raise ValueError("n must be non-negative")
    if p is not None and not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")


def path(n: int) -> DiGraph:
    _check(n)
    return DiGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def total_order(n: int) -> DiGraph:
    _check(n)
    return DiGraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def grid(r: int, c: int) -> DiGraph:
    if r < 1 or c < 1:
        raise ValueError("grid dimensions must be positive")
    edges = []
    for i in range(r):
        for j in range(c):
            v = i * c + j
            if j + 1 < c:
                edges.append((v, v + 1))
            if i + 1 < r:
                edges.append((v, v + c))
    return DiGraph.from_edges(r * c, edges)


def layered(n: int, width: int, p: float, seed: int) -> DiGraph:
    """Layers of ``width`` vertices; each vertex gets one random parent in the previous layer
    and every other cross-layer pair is an edge with probability p."""
    _check(n, p)
    if width < 1:
        raise ValueError("width must be positive")
    rng = _rng(seed)
    edges = []
    for start in range(width, n, width):
        prev = range(start - width, start)
        for v in range(start, min(start + width, n)):
            parent = int(rng.integers(start - width, start))
            for u in prev:
                if u == parent or rng.random() < p:
                    edges.append((u, v))
    return DiGraph.from_edges(n, edges)


def random_dag(n: int, p: float, seed: int, span: int | None = None, backbone: bool = False) -> DiGraph:
    """Edges i -> j (i < j) independently with probability p; with ``span`` only j - i <= span.

    ``backbone`` always includes i -> i + 1, so shortest paths stay long when ``span`` is small."""
    _check(n, p)
    rng = _rng(seed)
    mask = rng.random((n, n)) < p
    iu = np.triu(np.ones((n, n), dtype=bool), 1)
    if span is not None:
        if span < 1:
            raise ValueError("span must be positive")
        iu &= ~np.triu(np.ones((n, n), dtype=bool), span + 1)
    mask &= iu
    if backbone and n > 1:
        i = np.arange(n - 1)
        mask[i, i + 1] = True
    u, v = np.nonzero(mask)
    return DiGraph.from_edges(n, list(zip(u.tolist(), v.tolist())))


def random_digraph(n: int, p: float, seed: int) -> DiGraph:
    _check(n, p)
    rng = _rng(seed)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    u, v = np.nonzero(mask)
    return DiGraph.from_edges(n, list(zip(u.tolist(), v.tolist())))


def random_weighted_dag(n: int, p: float, wmax: int, seed: int, span: int | None = None,
                        backbone: bool = False) -> DiGraph:
    _check(n, p)
    if wmax < 1:
        raise ValueError("wmax must be at least 1")
    g = random_dag(n, p, seed, span, backbone)
    rng = _rng(seed + 0x9E3779B9)
    ws = rng.integers(1, wmax + 1, size=g.m)
    return DiGraph.from_edges(n, [(u, v, int(w)) for (u, v), w in zip(g.edges, ws)], weighted=True)


def with_weights(g: DiGraph, wmax: int, seed: int) -> DiGraph:
    rng = _rng(seed + 0x51ED)
    ws = rng.integers(1, wmax + 1, size=g.m)
    return DiGraph.from_edges(g.n, [(u, v, int(w)) for (u, v), w in zip(g.edges, ws)], weighted=True)


KINDS = {
    "path": (path, ["n"]),
    "total_order": (total_order, ["n"]),
    "grid": (grid, ["r", "c"]),
    "layered": (layered, ["n", "width", "p", "seed"]),
    "random_dag": (random_dag, ["n", "p", "seed", "span", "backbone"]),
    "random_digraph": (random_digraph, ["n", "p", "seed"]),
    "random_weighted_dag": (random_weighted_dag, ["n", "p", "wmax", "seed", "span", "backbone"]),
}


def generate(kind: str, **params) -> DiGraph:
    if kind not in KINDS:
        raise ValueError(f"unknown generator {kind!r}; choose from {sorted(KINDS)}")
    fn, names = KINDS[kind]
    unknown = set(params) - set(names)
    if unknown:
        raise ValueError(f"unexpected parameters for {kind}: {sorted(unknown)}")
    return fn(**params)
