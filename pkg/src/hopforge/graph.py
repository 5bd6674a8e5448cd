"""Directed graphs, reachability, distances and validators for shortcut sets and hopsets."""
from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

# marker for unreachable pairs in integer distance matrices; large but safe to add a few of
INF = 1 << 28


def _as_weight(w):
    if isinstance(w, (int, Fraction)):
        return w
    if isinstance(w, float):
        return Fraction(w).limit_denominator(10**9)
    return Fraction(str(w))


def _norm(w):
    # keep integers as ints so unweighted-looking data stays cheap
    if isinstance(w, Fraction) and w.denominator == 1:
        return int(w)
    return w


@dataclass(frozen=True, eq=False)
class DiGraph:
    """Immutable directed graph on vertices 0..n-1.

    ``edges`` is a sorted tuple of distinct (u, v) pairs without self-loops.
    ``weights`` is None for unweighted graphs, else a tuple parallel to ``edges``.
    """

    n: int
    edges: tuple
    weights: tuple | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, weighted: bool = False) -> "DiGraph":
        best = {}
        dropped = 0
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            w = _as_weight(e[2]) if weighted and len(e) > 2 else 1
            if weighted and w <= 0:
                raise ValueError(f"edge ({u},{v}) has non-positive weight {w}")
            if u == v:
                dropped += 1
                continue
            if (u, v) in best:
                dropped += 1
                if w < best[(u, v)]:
                    best[(u, v)] = w
                continue
            best[(u, v)] = w
        if dropped:
            warnings.warn(f"dropped {dropped} self-loops/parallel edges", stacklevel=2)
        keys = tuple(sorted(best))
        ws = tuple(_norm(best[k]) for k in keys) if weighted else None
        return cls(n, keys, ws)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @cached_property
    def out_adj(self) -> list:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
        return adj

    @cached_property
    def in_adj(self) -> list:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[v].append(u)
        return adj

    @cached_property
    def weight_map(self) -> dict:
        if self.weights is None:
            return {e: 1 for e in self.edges}
        return dict(zip(self.edges, self.weights))

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set

    def weight(self, u: int, v: int):
        return self.weight_map[(u, v)]

    def arrays(self):
        if not self.edges:
            return np.zeros(0, np.int64), np.zeros(0, np.int64)
        a = np.asarray(self.edges, dtype=np.int64)
        return a[:, 0], a[:, 1]

    def union(self, h: "ShortcutSet | None") -> "DiGraph":
        """G ∪ H. Parallel edges keep the smaller weight."""
        if h is None or len(h) == 0:
            return self
        best = dict(self.weight_map)
        for u, v, w in h.triples():
            w = 1 if w is None else w
            if (u, v) not in best or w < best[(u, v)]:
                best[(u, v)] = w
        keys = tuple(sorted(best))
        ws = tuple(best[k] for k in keys) if self.weighted else None
        return DiGraph(self.n, keys, ws)

    def topological_order(self) -> list | None:
        """Kahn's order with smallest-id-first tie-break, or None if cyclic."""
        indeg = [len(x) for x in self.in_adj]
        heap = [v for v in range(self.n) if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            u = heapq.heappop(heap)
            order.append(u)
            for v in self.out_adj[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    heapq.heappush(heap, v)
        return order if len(order) == self.n else None

    def is_dag(self) -> bool:
        return self.topological_order() is not None


@dataclass
class ShortcutSet:
    """Additional edges; weights are None in shortcut mode and dist_G(u, v) in hopset mode."""

    n: int
    edges: list = field(default_factory=list)
    weights: list | None = None

    def __post_init__(self):
        self._index = {e: i for i, e in enumerate(self.edges)}

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def add(self, u: int, v: int, w=None) -> bool:
        if (u, v) in self._index or u == v:
            return False
        self._index[(u, v)] = len(self.edges)
        self.edges.append((u, v))
        if self.weights is not None:
            self.weights.append(w)
        return True

    def triples(self):
        ws = self.weights if self.weights is not None else [None] * len(self.edges)
        return [(u, v, w) for (u, v), w in zip(self.edges, ws)]

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, e):
        return tuple(e) in self._index

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, weighted: bool = False) -> "ShortcutSet":
        h = cls(n, [], [] if weighted else None)
        for e in edges:
            h.add(int(e[0]), int(e[1]), _as_weight(e[2]) if weighted else None)
        return h


@dataclass(frozen=True, eq=False)
class ReachMatrix:
    """Per-source reachability bitsets; bit v of ``rows[u]`` is set iff u reaches v."""

    n: int
    rows: tuple

    def reach(self, u: int, v: int) -> bool:
        return (self.rows[u] >> v) & 1 == 1

    def descendants(self, u: int) -> list:
        r = self.rows[u]
        return [v for v in range(self.n) if (r >> v) & 1]

    @cached_property
    def matrix(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=bool)
        nbytes = (self.n + 7) // 8
        for u, r in enumerate(self.rows):
            b = np.frombuffer(r.to_bytes(nbytes, "little"), dtype=np.uint8)
            out[u] = np.unpackbits(b, bitorder="little")[: self.n].astype(bool)
        return out

    def pairs(self) -> int:
        """Number of tc pairs (s, t) with s != t."""
        return sum(bin(r).count("1") for r in self.rows) - self.n


@dataclass(frozen=True, eq=False)
class CondensedDag:
    n: int
    comp: tuple          # vertex -> component id
    members: tuple       # component id -> sorted member list
    dag: DiGraph
    stars: ShortcutSet

    @property
    def k(self) -> int:
        return len(self.members)

    def hub(self, c: int) -> int:
        return self.members[c][0]

    def lift(self, h: ShortcutSet) -> ShortcutSet:
        """Map condensed shortcut edges to hub-to-hub edges and add the stars."""
        out = ShortcutSet(self.n)
        for u, v in self.stars:
            out.add(u, v)
        for a, b in h:
            out.add(self.hub(a), self.hub(b))
        return out


def _scc(g: DiGraph) -> list:
    """Iterative Tarjan; returns component index per vertex (arbitrary numbering)."""
    n = g.n
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    comp = [-1] * n
    stack = []
    counter = 0
    ncomp = 0
    adj = g.out_adj
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, 0))
                elif onstack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                p = work[-1][0]
                low[p] = min(low[p], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def condense(g: DiGraph) -> CondensedDag:
    """Contract SCCs. Components are numbered by their lowest vertex id, so a DAG maps to itself."""
    raw = _scc(g)
    groups = {}
    for v in range(g.n):
        groups.setdefault(raw[v], []).append(v)
    members = sorted(groups.values(), key=lambda ms: ms[0])
    comp = [0] * g.n
    for c, ms in enumerate(members):
        for v in ms:
            comp[v] = c
    cedges = {(comp[u], comp[v]) for u, v in g.edges if comp[u] != comp[v]}
    dag = DiGraph.from_edges(len(members), sorted(cedges))
    stars = ShortcutSet(g.n)
    for ms in members:
        hub = ms[0]
        for x in ms[1:]:
            if not g.has_edge(hub, x):
                stars.add(hub, x)
            if not g.has_edge(x, hub):
                stars.add(x, hub)
    return CondensedDag(g.n, tuple(comp), tuple(tuple(m) for m in members), dag, stars)


def transitive_closure(g: DiGraph) -> ReachMatrix:
    cd = condense(g)
    dag = cd.dag
    order = dag.topological_order()
    crow = [0] * dag.n
    for c in reversed(order):
        r = 0
        for v in cd.members[c]:
            r |= 1 << v
        for d in dag.out_adj[c]:
            r |= crow[d]
        crow[c] = r
    return ReachMatrix(g.n, tuple(crow[cd.comp[v]] for v in range(g.n)))


def all_dist(g: DiGraph, h: ShortcutSet | None = None) -> np.ndarray:
    """Unweighted BFS distances in G ∪ H as an int32 matrix; unreachable pairs hold INF."""
    n = g.n
    rows, cols = g.arrays()
    if h is not None and len(h):
        ha = np.asarray(h.edges, dtype=np.int64)
        rows = np.concatenate([rows, ha[:, 0]])
        cols = np.concatenate([cols, ha[:, 1]])
    a = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    d = shortest_path(a, method="D", unweighted=True)
    out = np.full((n, n), INF, dtype=np.int32)
    fin = np.isfinite(d)
    out[fin] = d[fin].astype(np.int32)
    return out


def integer_scale(weights: Iterable) -> int:
    """Smallest q such that q·w is integral for every weight."""
    q = 1
    for w in weights:
        if isinstance(w, Fraction):
            q = math.lcm(q, w.denominator)
    return q


@dataclass
class HopDist:
    """Exact distances (scaled by ``scale`` to integers) and minimum hop counts among shortest paths."""

    dist: list    # dist[s][t] as int (scaled), None if unreachable
    hops: list    # hops[s][t], None if unreachable
    scale: int

    def distance(self, s: int, t: int):
        d = self.dist[s][t]
        return None if d is None else Fraction(d, self.scale)

    def hop_matrix(self) -> np.ndarray:
        n = len(self.hops)
        out = np.full((n, n), INF, dtype=np.int64)
        for s in range(n):
            for t, x in enumerate(self.hops[s]):
                if x is not None:
                    out[s, t] = x
        return out

    def dist_matrix(self) -> np.ndarray:
        n = len(self.dist)
        out = np.full((n, n), -1, dtype=object)
        for s in range(n):
            for t, x in enumerate(self.dist[s]):
                if x is not None:
                    out[s, t] = x
        return out


def hopdist_all(g: DiGraph, h: ShortcutSet | None = None) -> HopDist:
    """Dijkstra over lexicographic keys (distance, hops) from every source in G ∪ H."""
    gu = g.union(h)
    ws = gu.weights if gu.weights is not None else (1,) * gu.m
    q = integer_scale(ws)
    adj = [[] for _ in range(g.n)]
    for (u, v), w in zip(gu.edges, ws):
        adj[u].append((v, int(w * q)))
    dist, hops = [], []
    for s in range(g.n):
        d = [None] * g.n
        hp = [None] * g.n
        done = [False] * g.n
        d[s], hp[s] = 0, 0
        heap = [(0, 0, s)]
        while heap:
            du, hu, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for v, w in adj[u]:
                nd, nh = du + w, hu + 1
                if d[v] is None or (nd, nh) < (d[v], hp[v]):
                    d[v], hp[v] = nd, nh
                    heapq.heappush(heap, (nd, nh, v))
        dist.append(d)
        hops.append(hp)
    return HopDist(dist, hops, q)


@dataclass
class ValidationReport:
    valid: bool
    kind: str                  # "ok", "non-tc-edge", "distance-corrupted", "hopbound"
    worst_pair: tuple | None = None
    worst: int = 0             # max (hop)distance over tc pairs
    bad_edge: tuple | None = None

    def __str__(self):
        s = f"{'VALID' if self.valid else 'INVALID'} kind={self.kind} hopbound={self.worst}"
        if self.worst_pair is not None:
            s += f" worst_pair={self.worst_pair}"
        if self.bad_edge is not None:
            s += f" bad_edge={self.bad_edge}"
        return s


def _worst(mat: np.ndarray, reach: np.ndarray):
    m = np.where(reach, mat, -1).astype(np.int64)
    np.fill_diagonal(m, -1)
    if m.size == 0 or m.max() < 0:
        return None, 0
    w = int(m.max())
    s, t = np.argwhere(m == w)[0]
    return (int(s), int(t)), w


def validate_shortcut_set(g: DiGraph, h: ShortcutSet, beta: int, reach: ReachMatrix | None = None) -> ValidationReport:
    reach = reach or transitive_closure(g)
    for u, v in h:
        if u == v or not reach.reach(u, v):
            return ValidationReport(False, "non-tc-edge", bad_edge=(u, v))
    d = all_dist(g, h)
    pair, w = _worst(d, reach.matrix)
    if w > beta:
        return ValidationReport(False, "hopbound", pair, w)
    return ValidationReport(True, "ok", pair, w)


def validate_hopset(g: DiGraph, h: ShortcutSet, beta: int, reach: ReachMatrix | None = None) -> ValidationReport:
    reach = reach or transitive_closure(g)
    base = hopdist_all(g)
    for u, v, w in h.triples():
        if u == v or not reach.reach(u, v):
            return ValidationReport(False, "non-tc-edge", bad_edge=(u, v))
        if w is None or Fraction(w) != base.distance(u, v):
            return ValidationReport(False, "distance-corrupted", bad_edge=(u, v))
    both = hopdist_all(g, h)
    for s in range(g.n):
        for t in range(g.n):
            if base.distance(s, t) != both.distance(s, t):
                return ValidationReport(False, "distance-corrupted", worst_pair=(s, t))
    pair, w = _worst(both.hop_matrix(), reach.matrix)
    if w > beta:
        return ValidationReport(False, "hopbound", pair, w)
    return ValidationReport(True, "ok", pair, w)


def diameter(g: DiGraph, h: ShortcutSet | None = None) -> int:
    """Largest finite (unweighted) distance between distinct vertices."""
    d = all_dist(g, h)
    np.fill_diagonal(d, -1)
    fin = d[d < INF]
    return int(fin.max()) if fin.size and fin.max() > 0 else 0


def perturb_unique(g: DiGraph, h: ShortcutSet | None = None, rng=None) -> DiGraph:
    """Weights w + ε + δ_e in exact rationals on E ∪ H.

    ε keeps distance order and prefers fewer hops among shortest paths; δ_e breaks the
    remaining ties. With ``rng`` δ_e is uniform random; otherwise δ_e = δ/2^(rank+1) by
    edge rank, so distinct edge sets always get distinct sums and the result is reproducible.
    """
    gu = g.union(h)
    ws = [Fraction(w) for w in (gu.weights if gu.weights is not None else (1,) * gu.m)]
    n = max(g.n, 2)
    q = integer_scale(ws)
    wmax = max(ws) if ws else Fraction(1)
    eps = Fraction(1, q * n * (math.ceil(wmax) * n + 1))
    delta = eps / 2
    out = []
    for i, ((u, v), w) in enumerate(zip(gu.edges, ws)):
        if rng is None:
            d = delta / (1 << (i + 1))
        else:
            d = delta * Fraction(int(rng.integers(1, 1 << 62)), (1 << 62) * (n + 1))
        out.append((u, v, w + eps + d))
    return DiGraph.from_edges(g.n, out, weighted=True)


# ---- text I/O -------------------------------------------------------------

def _fmt_w(w) -> str:
    return str(_norm(Fraction(w)) if not isinstance(w, int) else w)


def format_edges(n: int, triples: list, weighted: bool) -> str:
    lines = [f"{n} {len(triples)}" + (" weighted" if weighted else "")]
    for u, v, w in triples:
        lines.append(f"{u} {v} {_fmt_w(w)}" if weighted else f"{u} {v}")
    return "\n".join(lines) + "\n"


def _parse(text: str):
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or len(lines[0]) < 2:
        raise ValueError("missing header 'n m [weighted]'")
    head = lines[0]
    n, m = int(head[0]), int(head[1])
    weighted = len(head) > 2 and head[2] == "weighted"
    body = lines[1:]
    if len(body) != m:
        raise ValueError(f"header says {m} edges, found {len(body)}")
    edges = []
    for parts in body:
        if weighted:
            if len(parts) < 3:
                raise ValueError(f"weighted edge line needs a weight: {' '.join(parts)}")
            edges.append((int(parts[0]), int(parts[1]), Fraction(parts[2])))
        else:
            edges.append((int(parts[0]), int(parts[1])))
    return n, edges, weighted


def parse_graph(text: str) -> DiGraph:
    n, edges, weighted = _parse(text)
    return DiGraph.from_edges(n, edges, weighted)


def parse_shortcuts(text: str) -> ShortcutSet:
    n, edges, weighted = _parse(text)
    return ShortcutSet.from_edges(n, edges, weighted)


def read_graph(path) -> DiGraph:
    with open(path) as f:
        return parse_graph(f.read())


def write_graph(g: DiGraph, path) -> None:
    ws = g.weights if g.weighted else [None] * g.m
    with open(path, "w") as f:
        f.write(format_edges(g.n, [(u, v, w) for (u, v), w in zip(g.edges, ws)], g.weighted))


def read_shortcuts(path) -> ShortcutSet:
    with open(path) as f:
        return parse_shortcuts(f.read())


def write_shortcuts(h: ShortcutSet, path) -> None:
    with open(path, "w") as f:
        f.write(format_edges(h.n, h.triples(), h.weighted))
