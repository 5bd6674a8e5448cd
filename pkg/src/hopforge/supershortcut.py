"""Hopbound-4 shortcuts for paths and chains.

Positions 0..k-1 of a path are split into blocks of size ⌈log2 k⌉. Every position gets an
edge to the right end of its block and an edge from the right end of the previous block;
the right ends themselves get a hopbound-2 structure (divide and conquer around a middle
point), and each block is handled recursively. A route i -> j across blocks is then
i -> end(block i) -> [≤ 2 hops] -> end(block j - 1) -> j. Each recursion level costs O(k)
edges and there are log* k levels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .graph import DiGraph, ShortcutSet

# observed max of |edges| / (k log* k) over k = 2^6 .. 2^16 is below this
PLAN_CONST = 1.0


def log_star(x: float) -> int:
    c = 0
    while x > 1:
        x = math.log2(x)
        c += 1
    return c


@dataclass(frozen=True)
class PathShortcutPlan:
    k: int
    edges: tuple  # (i, j) with i < j - 1


def _hop2(points: list, out: set) -> None:
    # every pair of points joined by ≤ 2 forward hops through a middle point
    stack = [(0, len(points) - 1)]
    while stack:
        lo, hi = stack.pop()
        if hi <= lo:
            continue
        mid = (lo + hi) // 2
        c = points[mid]
        for a in range(lo, mid):
            if points[a] + 1 < c:
                out.add((points[a], c))
        for b in range(mid + 1, hi + 1):
            if c + 1 < points[b]:
                out.add((c, points[b]))
        stack.append((lo, mid - 1))
        stack.append((mid + 1, hi))


def _hop4(lo: int, hi: int, out: set) -> None:
    k = hi - lo + 1
    if k <= 5:
        return
    b = max(2, math.ceil(math.log2(k)))
    ends = []
    prev_end = None
    for start in range(lo, hi + 1, b):
        end = min(start + b - 1, hi)
        for p in range(start, end):
            if p + 1 < end:
                out.add((p, end))
        if prev_end is not None:
            for p in range(start + 1, end + 1):
                out.add((prev_end, p))
        ends.append(end)
        prev_end = end
        _hop4(start, end, out)
    _hop2(ends, out)


@lru_cache(maxsize=256)
def shortcut_path_d4(k: int) -> PathShortcutPlan:
    out = set()
    _hop4(0, k - 1, out)
    return PathShortcutPlan(k, tuple(sorted(out)))


@lru_cache(maxsize=256)
def shortcut_path_binarylift(k: int) -> PathShortcutPlan:
    """Hopbound 2 with O(k log k) edges; used to cross-check consumers."""
    out = set()
    _hop2(list(range(k)), out)
    return PathShortcutPlan(k, tuple(sorted(out)))


def plan_for(k: int, method: str = "d4") -> PathShortcutPlan:
    if method == "d4":
        return shortcut_path_d4(k)
    if method == "binarylift":
        return shortcut_path_binarylift(k)
    raise ValueError(f"unknown plan method {method!r}")


def supershortcut(g: DiGraph, cover, method: str = "d4") -> ShortcutSet:
    """Consecutive chain edges plus a per-chain plan; edges already in g are skipped."""
    h = ShortcutSet(g.n)
    for ch in cover.chains:
        for a, b in zip(ch, ch[1:]):
            if not g.has_edge(a, b):
                h.add(a, b)
        if len(ch) > 5 or method != "d4":
            for i, j in plan_for(len(ch), method).edges:
                if not g.has_edge(ch[i], ch[j]):
                    h.add(ch[i], ch[j])
    return h
