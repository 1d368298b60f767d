"""Independent oracles: Kruskal, Prim and exhaustive search.

These never share logic with the staged engine; they only read graphs
through the graph module, so an engine bug cannot cancel out here.
"""

from __future__ import annotations

import heapq
import itertools

import numpy as np

from .engine import MstResult
from .errors import IdOutOfRange, TooLarge
from .graph import Graph, Weight


class DisjointSet:
    """Union-find with path compression and union by rank."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def kruskal(g: Graph) -> MstResult:
    """Classic ascending-weight greedy; deterministic under ties via
    the (weight, u, v) sort order."""
    src = g.arc_sources()
    keep = src < g.leaves
    u = src[keep]
    v = g.leaves[keep]
    w = g.weights[keep]
    order = np.lexsort((v, u, w))
    ds = DisjointSet(g.n)
    picked: list[tuple[int, int, int]] = []
    total = 0
    scanned = 0
    for i in order.tolist():
        scanned += 1
        a, b, ww = int(u[i]), int(v[i]), int(w[i])
        if ds.union(a, b):
            picked.append((a, b, ww))
            total += ww
            if len(picked) == g.n - 1:
                break
    return MstResult(
        edges=sorted((a, b, g.unscale(ww)) for a, b, ww in picked),
        total=g.unscale(total),
        k_after_node_stage=0,
        rounds=0,
        comparisons=scanned,
        per_round=[],
        node_arc_touches=0,
        mode="kruskal",
    )


def prim(g: Graph, seed: int = 0) -> MstResult:
    """Binary-heap frontier growth from seed; covers seed's component only."""
    g._check_id(seed)
    visited = [False] * g.n
    visited[seed] = True
    indptr = g.indptr
    leaves = g.leaves.tolist()
    weights = g.weights.tolist()
    heap: list[tuple[int, int, int]] = []

    def push_frontier(x: int) -> None:
        for i in range(int(indptr[x]), int(indptr[x + 1])):
            if not visited[leaves[i]]:
                heapq.heappush(heap, (weights[i], x, leaves[i]))

    push_frontier(seed)
    picked: list[tuple[int, int, int]] = []
    total = 0
    scanned = 0
    while heap:
        w, a, b = heapq.heappop(heap)
        scanned += 1
        if visited[b]:
            continue
        visited[b] = True
        picked.append((a, b, w) if a < b else (b, a, w))
        total += w
        push_frontier(b)
    return MstResult(
        edges=sorted((a, b, g.unscale(w)) for a, b, w in picked),
        total=g.unscale(total),
        k_after_node_stage=0,
        rounds=0,
        comparisons=scanned,
        per_round=[],
        node_arc_touches=0,
        mode="prim",
    )


# Cache of acyclic (n - c)-subsets per graph topology, keyed by the node
# count and edge pair tuple.  The enumeration is the oracle; caching only
# avoids redoing it for identical topologies with different weights.
_FOREST_CACHE: dict[tuple, np.ndarray] = {}


def _spanning_subsets(n: int, pairs: tuple[tuple[int, int], ...]) -> np.ndarray:
    key = (n, pairs)
    cached = _FOREST_CACHE.get(key)
    if cached is not None:
        return cached
    ds = DisjointSet(n)
    for a, b in pairs:
        ds.union(a, b)
    components = len({ds.find(v) for v in range(n)})
    size = n - components
    rows = []
    for combo in itertools.combinations(range(len(pairs)), size):
        ds2 = DisjointSet(n)
        if all(ds2.union(*pairs[i]) for i in combo):
            row = np.zeros(len(pairs), dtype=np.int64)
            row[list(combo)] = 1
            rows.append(row)
    matrix = np.array(rows, dtype=np.int64) if rows else np.zeros((1, len(pairs)), np.int64)
    _FOREST_CACHE[key] = matrix
    return matrix


def brute_force(g: Graph) -> Weight:
    """Minimum spanning-forest weight by enumerating all acyclic edge
    subsets of size n - c.  Ground truth for tiny instances only."""
    if g.n > 10:
        raise TooLarge(f"brute force refuses n={g.n} > 10")
    edges = g.edge_list()
    pairs = tuple((u, v) for u, v, _ in edges)
    weights = np.array([w for _, _, w in edges], dtype=np.int64)
    if not pairs:
        return 0
    subsets = _spanning_subsets(g.n, pairs)
    return g.unscale(int((subsets @ weights).min()))


def verify_spanning_forest(
    g: Graph,
    edges: list[tuple[int, int, Weight]],
    expected_total: Weight | None = None,
) -> list[str]:
    """Check a claimed tree/forest against the graph.

    Returns the violated properties in check order: 'unknown edge',
    'cycle', 'not spanning', 'not minimum'.  Empty list means valid."""
    problems: list[str] = []
    total = 0
    ds = DisjointSet(g.n)
    acyclic = True
    for u, v, w in edges:
        gw = g.weight_between(u, v) if 0 <= u < g.n and 0 <= v < g.n else None
        if gw is None or g.unscale(gw) != w:
            problems.append("unknown edge")
            return problems
        total += gw
        if not ds.union(u, v):
            acyclic = False
    if not acyclic:
        problems.append("cycle")
        return problems

    full = DisjointSet(g.n)
    for u, v, _ in g.edge_list():
        full.union(u, v)
    components = len({full.find(v) for v in range(g.n)})
    if len(edges) != g.n - components:
        problems.append("not spanning")
        return problems

    minimum = kruskal(g).total if expected_total is None else expected_total
    if g.unscale(total) != minimum:
        problems.append("not minimum")
    return problems
