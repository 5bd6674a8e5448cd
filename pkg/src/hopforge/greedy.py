"""Greedy potential reduction for shortcut sets and exact hopsets.

φ(H) sums value(s, t) over tc pairs whose value is at least β, where value is the distance in
G ∪ H (shortcut mode) or the hop distance among shortest paths (hopset mode). Each round adds
the tc edge with the largest drop Δ; ties go to the smallest (u, v). The loop ends at φ = 0,
so every tc pair ends at value ≤ β - 1.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels as K
from .graph import (INF, DiGraph, ShortcutSet, all_dist, hopdist_all, transitive_closure)

SHORTCUT = "shortcut"
HOPSET = "hopset"


@dataclass
class TraceRound:
    u: int
    v: int
    delta: int
    phi_before: int
    phi_after: int
    active_pairs: int


@dataclass
class GreedyTrace:
    beta: int
    mode: str
    phi0: int
    rounds: list = field(default_factory=list)

    def check(self) -> None:
        phi = self.phi0
        for r in self.rounds:
            if r.phi_before != phi or r.phi_after >= r.phi_before or r.delta != r.phi_before - r.phi_after:
                raise AssertionError(f"trace broken at {r}")
            phi = r.phi_after
        if phi != 0:
            raise AssertionError(f"final potential {phi} != 0")
        if len(self.rounds) > self.phi0:
            raise AssertionError("more rounds than the initial potential")

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["round", "u", "v", "delta", "phi_after", "active_pairs"])
        for i, r in enumerate(self.rounds, 1):
            w.writerow([i, r.u, r.v, r.delta, r.phi_after, r.active_pairs])
        if path is not None:
            with open(path, "w") as f:
                f.write(buf.getvalue())
        return buf.getvalue()


class RoundBudgetExceeded(RuntimeError):
    pass


class PotentialState:
    """Current values of all pairs plus the running potential.

    Shortcut mode keeps D (int32 BFS distances, INF if unreachable). Hopset mode keeps W (exact
    distances scaled to integers, fixed) and Hp (hop distances among shortest paths).
    """

    def __init__(self, g: DiGraph, beta: int, mode: str = SHORTCUT, h: ShortcutSet | None = None):
        if beta < 1:
            raise ValueError("beta must be positive")
        if mode not in (SHORTCUT, HOPSET):
            raise ValueError(f"unknown mode {mode!r}")
        self.g, self.beta, self.mode = g, beta, mode
        self.R = transitive_closure(g).matrix.copy()
        np.fill_diagonal(self.R, True)
        if mode == SHORTCUT:
            self.D = all_dist(g, h)
        else:
            if not g.weighted:
                raise ValueError("hopset mode needs a weighted graph")
            base = hopdist_all(g)
            self.scale = base.scale
            n = g.n
            self.W = np.full((n, n), -1, dtype=np.int64)
            for s in range(n):
                for t, x in enumerate(base.dist[s]):
                    if x is not None:
                        self.W[s, t] = x
            if h is not None and len(h):
                self.D = hopdist_all(g, h).hop_matrix()
            else:
                self.D = base.hop_matrix()
        self.active_mask()

    @property
    def values(self) -> np.ndarray:
        return self.D

    def active_mask(self) -> np.ndarray:
        a = self.R & (self.D >= self.beta) & (self.D < INF)
        np.fill_diagonal(a, False)
        self.phi = int(self.D[a].astype(np.int64).sum())
        self.active = int(a.sum())
        return a

    def best(self):
        if self.phi == 0:
            raise ValueError("potential is already 0; no edge to choose")
        if self.mode == SHORTCUT:
            a = self.active_mask()
            L = int(self.D[a].max())
            idx = K.build_index(self.D, self.R, self.beta, L)
            u, v, d = K.shortcut_best(self.D, self.R, self.beta, L, *idx)
        else:
            u, v, d = K.hopset_best(self.W, self.D, self.R, self.beta)
        if u < 0:
            raise RuntimeError("positive potential but no edge reduces it")
        return int(u), int(v), int(d)

    def weight_of(self, u: int, v: int):
        if self.mode == SHORTCUT:
            return None
        return Fraction(int(self.W[u, v]), self.scale)

    def add(self, u: int, v: int) -> None:
        if self.mode == SHORTCUT:
            D = self.D
            np.minimum(D, D[:, u][:, None] + 1 + D[v][None, :], out=D)
        else:
            K.hopset_update(self.W, self.D, self.R, u, v)
        self.active_mask()


def potential(g: DiGraph, h: ShortcutSet | None, beta: int, mode: str = SHORTCUT) -> int:
    """φ recomputed from scratch by all-pairs search."""
    reach = transitive_closure(g).matrix
    if mode == SHORTCUT:
        vals = all_dist(g, h).astype(np.int64)
    else:
        vals = hopdist_all(g, h).hop_matrix()
    a = reach & (vals >= beta) & (vals < INF)
    np.fill_diagonal(a, False)
    return int(vals[a].sum())


def _with_edge(g: DiGraph, h: ShortcutSet | None, e, mode: str) -> ShortcutSet:
    u, v = e
    weighted = mode == HOPSET
    h2 = ShortcutSet(g.n, [], [] if weighted else None)
    if h is not None:
        for a, b, w in h.triples():
            h2.add(a, b, w)
    w = hopdist_all(g).distance(u, v) if weighted else None
    h2.add(u, v, w)
    return h2


def delta(g: DiGraph, h: ShortcutSet | None, beta: int, mode: str, e) -> int:
    u, v = e
    if u == v or not transitive_closure(g).reach(u, v):
        raise ValueError(f"{tuple(e)} is not a tc pair")
    return potential(g, h, beta, mode) - potential(g, _with_edge(g, h, e, mode), beta, mode)


def argmax_edge(g: DiGraph, h: ShortcutSet | None, beta: int, mode: str = SHORTCUT):
    st = PotentialState(g, beta, mode, h)
    u, v, d = st.best()
    return (u, v), d


def _run(g: DiGraph, beta: int, mode: str, max_rounds, check: bool):
    if beta < 2:
        raise ValueError("beta must be at least 2")
    st = PotentialState(g, beta, mode)
    trace = GreedyTrace(beta, mode, st.phi)
    h = ShortcutSet(g.n, [], [] if mode == HOPSET else None)
    budget = st.phi if max_rounds is None else max_rounds
    while st.phi > 0:
        if len(trace.rounds) >= budget:
            raise RoundBudgetExceeded(f"round budget {budget} exhausted with potential {st.phi}")
        before = st.phi
        u, v, d = st.best()
        h.add(u, v, st.weight_of(u, v))
        st.add(u, v)
        if before - st.phi != d:
            raise RuntimeError(f"predicted drop {d} but potential fell by {before - st.phi}")
        if check:
            ref = potential(g, h, beta, mode)
            if ref != st.phi:
                raise RuntimeError(f"incremental potential {st.phi} != recomputed {ref}")
        trace.rounds.append(TraceRound(u, v, d, before, st.phi, st.active))
    return h, trace


def greedy_shortcut(g: DiGraph, beta: int, max_rounds: int | None = None, check: bool = False):
    """Shortcut set with hopbound β - 1 and its round trace."""
    return _run(g, beta, SHORTCUT, max_rounds, check)


def greedy_hopset(g: DiGraph, beta: int, max_rounds: int | None = None, check: bool = False):
    """Exact hopset (edge weights = true distances) with hopbound β - 1."""
    return _run(g, beta, HOPSET, max_rounds, check)
