"""Staged minimum-spanning-forest engine.

The node stage reaps clusters out of the fleet model (beam-seeded, or
via the inheritance chase, or kernel-seeded).  The cluster stage then
merges clusters Boruvka-style: each round every live cluster nominates
its minimum outgoing bridge, bridges are applied under a cycle guard,
and membership tables are rebuilt with fresh ids.  The snip melioration
only shrinks the scan set of later rounds; it never changes choices.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    AlreadyClaimed,
    InconsistentModel,
    IsolatedNode,
    NoProgress,
)
from .fleet import FleetModel, build_fleet
from .graph import Graph, Weight

MODES = ("oag_then_merge", "ooag", "koag_seeded")


@dataclass
class RoundStats:
    clusters_before: int
    clusters_after: int
    arcs_scanned: int
    elapsed: float


@dataclass
class MstResult:
    edges: list[tuple[int, int, Weight]]
    total: Weight
    k_after_node_stage: int
    rounds: int
    comparisons: int
    per_round: list[RoundStats]
    node_arc_touches: int
    mode: str
    phase_seconds: dict[str, float] = field(default_factory=dict)


class Forest:
    """Mutable cluster bookkeeping during one engine execution.

    Confined to a single execution context; not thread safe.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        n = graph.n
        self.cluster_list: list[int] = [-1] * n  # fast path during node stage
        self._cluster_np: Optional[np.ndarray] = None
        self.counter = 0
        self.rounds = 0
        self.picked: list[tuple[int, int, int]] = []  # (u, v, scaled w), u < v
        self.done: set[int] = set()
        self.peripheral = np.ones(n, dtype=bool)
        self.melioration = True
        self.comparisons = 0
        self.node_arc_touches = 0
        self.delta_history: list[int] = []
        self.per_round: list[RoundStats] = []

    # -- cluster ids -----------------------------------------------------

    def new_cluster(self) -> int:
        cid = self.counter
        self.counter += 1
        return cid

    @property
    def cluster_of(self) -> np.ndarray:
        if self._cluster_np is None:
            self._cluster_np = np.array(self.cluster_list, dtype=np.int64)
        return self._cluster_np

    def _set_cluster_of(self, arr: np.ndarray) -> None:
        self._cluster_np = arr
        self.cluster_list = arr.tolist()

    def cluster_ids(self) -> np.ndarray:
        return np.unique(self.cluster_of)

    @property
    def cluster_count(self) -> int:
        return int(self.cluster_ids().size)

    def membership(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(ids, node array C, offsets C*): nodes grouped by cluster id."""
        cl = self.cluster_of
        order = np.argsort(cl, kind="stable")
        ids, counts = np.unique(cl, return_counts=True)
        offsets = np.zeros(ids.size + 1, dtype=np.int64)
        np.cumsum(counts, out=offsets[1:])
        return ids, order, offsets

    def members_of(self, cid: int) -> list[int]:
        return np.nonzero(self.cluster_of == cid)[0].tolist()

    def picked_adjacency(self) -> dict[int, list[tuple[int, int]]]:
        adj: dict[int, list[tuple[int, int]]] = {}
        for u, v, w in self.picked:
            adj.setdefault(u, []).append((v, w))
            adj.setdefault(v, []).append((u, w))
        return adj

    def picked_edges(self) -> list[tuple[int, int, Weight]]:
        g = self.graph
        return sorted((u, v, g.unscale(w)) for u, v, w in self.picked)

    def invalidate(self) -> None:
        self._cluster_np = None


# ---------------------------------------------------------------------------
# node stage
# ---------------------------------------------------------------------------


def _check_model(g: Graph, f: FleetModel) -> None:
    if f.graph is not g and f.graph != g:
        raise InconsistentModel("fleet model was not built from this graph")


def _reap(forest: Forest, tables: dict, queue: deque, cid: int, cross_beams: bool) -> None:
    """Claim everything reachable from the queue by reverse-subjection
    arcs (cluster absorbs whoever subjects to it) and, optionally,
    peer-to-peer beam crossings.  Already-claimed nodes are skipped,
    which is the cycle guard."""
    cl = forest.cluster_list
    rev_ptr = tables["rev_ptr"]
    rev_flat = tables["rev_flat"]
    beam_ptr = tables["beam_ptr"]
    beam_flat = tables["beam_flat"]
    mvc = tables["mvc"]
    picked = forest.picked
    touches = 0
    while queue:
        y = queue.popleft()
        for i in range(rev_ptr[y], rev_ptr[y + 1]):
            touches += 1
            r = rev_flat[i]
            if cl[r] < 0:
                cl[r] = cid
                picked.append((r, y, mvc[r]) if r < y else (y, r, mvc[r]))
                queue.append(r)
        if cross_beams:
            for i in range(beam_ptr[y], beam_ptr[y + 1]):
                touches += 1
                b = beam_flat[i]
                if cl[b] < 0:
                    cl[b] = cid
                    picked.append((y, b, mvc[b]) if y < b else (b, y, mvc[b]))
                    queue.append(b)
    forest.node_arc_touches += touches


def _claim_isolated(forest: Forest, tables: dict) -> None:
    cl = forest.cluster_list
    for v, iso in enumerate(tables["isolated"]):
        if iso and cl[v] < 0:
            cl[v] = forest.new_cluster()


def node_stage(g: Graph, f: FleetModel, forest: Optional[Forest] = None) -> Forest:
    """Beam-seeded reaping: every still-unclaimed beam pair founds a
    cluster, which then absorbs its subjection chains and crosses beams
    peer-to-peer.  Isolated nodes end up as singleton clusters."""
    _check_model(g, f)
    if forest is None:
        forest = Forest(g)
    tables = f.chase_tables()
    cl = forest.cluster_list
    beam_ptr = tables["beam_ptr"]
    beam_flat = tables["beam_flat"]
    mvc = tables["mvc"]
    for a in range(g.n):
        for i in range(beam_ptr[a], beam_ptr[a + 1]):
            b = beam_flat[i]
            if b < a:
                continue
            if cl[a] < 0 and cl[b] < 0:
                cid = forest.new_cluster()
                cl[a] = cid
                cl[b] = cid
                forest.picked.append((a, b, mvc[a]))
                _reap(forest, tables, deque((a, b)), cid, cross_beams=True)
    _claim_isolated(forest, tables)
    forest.invalidate()
    return forest


def inheritance_chase(g: Graph, f: FleetModel, start: int, forest: Forest) -> int:
    """Climb from start along towboat/beam links to a flotilla top, then
    reap downward and peer-to-peer exactly as the node stage does.

    The upward moves never pick edges; they only relocate the inheritor,
    so the invert pitfall cannot occur.  Returns the cluster id that
    ends up owning start."""
    _check_model(g, f)
    g._check_id(start)
    if forest.cluster_list[start] >= 0:
        raise AlreadyClaimed(f"node {start} already belongs to a cluster")
    tables = f.chase_tables()
    cl = forest.cluster_list
    if tables["isolated"][start]:
        cid = forest.new_cluster()
        cl[start] = cid
        return cid
    target = tables["target"]
    mvc = tables["mvc"]

    x = start
    while True:
        t = target[x]
        forest.node_arc_touches += 1
        if cl[t] >= 0:
            # Climb hits claimed territory: that cluster absorbs x.
            cid = cl[t]
            cl[x] = cid
            forest.picked.append((x, t, mvc[x]) if x < t else (t, x, mvc[x]))
            _reap(forest, tables, deque((x,)), cid, cross_beams=True)
            return cl[start]
        if mvc[t] == mvc[x]:
            # The edge to the target is a beam: we are at a top.
            cid = forest.new_cluster()
            cl[x] = cid
            cl[t] = cid
            forest.picked.append((x, t, mvc[x]) if x < t else (t, x, mvc[x]))
            _reap(forest, tables, deque((x, t)), cid, cross_beams=True)
            return cl[start]
        x = t


def inheritance_stage(g: Graph, f: FleetModel, forest: Optional[Forest] = None) -> Forest:
    """Node stage driven by the inheritance chase from every unclaimed node."""
    _check_model(g, f)
    if forest is None:
        forest = Forest(g)
    tables = f.chase_tables()
    cl = forest.cluster_list
    iso = tables["isolated"]
    for v in range(g.n):
        if cl[v] < 0 and not iso[v]:
            inheritance_chase(g, f, v, forest)
    _claim_isolated(forest, tables)
    forest.invalidate()
    return forest


# ---------------------------------------------------------------------------
# cluster stage
# ---------------------------------------------------------------------------


def cluster_mvc(
    g: Graph, forest: Forest
) -> dict[int, tuple[int, int, int]]:
    """Minimum outgoing bridge per cluster, as cid -> (scaled w, a, b)
    with (a, b) the bridge endpoints, a < b.  Ties break on
    (weight, smaller endpoint, larger endpoint).  Clusters without any
    outgoing bridge are marked Done.  Increments the comparison counter
    by the number of arcs scanned and, when melioration is on, shrinks
    the peripheral scan set."""
    cl = forest.cluster_of
    src = g.arc_sources()
    leaves = g.leaves
    weights = g.weights

    if forest.melioration:
        mask = forest.peripheral[src]
    else:
        mask = np.ones(src.size, dtype=bool)
    scanned = int(mask.sum())
    forest.comparisons += scanned
    forest.delta_history.append(scanned)

    cross = mask & (cl[src] != cl[leaves])
    if forest.melioration:
        # A scanned node stays peripheral only while it still has an
        # arc leaving its cluster; interior nodes never come back.
        forest.peripheral = np.bincount(src[cross], minlength=g.n) > 0

    idx = np.nonzero(cross)[0]
    live = forest.cluster_ids()
    if idx.size == 0:
        forest.done.update(int(c) for c in live)
        return {}
    u = src[idx]
    v = leaves[idx]
    w = weights[idx]
    a = np.minimum(u, v)
    b = np.maximum(u, v)
    c = cl[u]
    order = np.lexsort((b, a, w, c))
    c_sorted = c[order]
    firsts = np.unique(c_sorted, return_index=True)[1]
    bridges = {
        int(c_sorted[i]): (
            int(w[order[i]]),
            int(a[order[i]]),
            int(b[order[i]]),
        )
        for i in firsts
    }
    forest.done.update(int(cid) for cid in live if int(cid) not in bridges)
    return bridges


def merge_round(g: Graph, forest: Forest) -> Forest:
    """One Boruvka-style round: apply every cluster's minimum bridge
    under the id cycle guard, then rebuild memberships with fresh ids."""
    t0 = time.perf_counter()
    before = forest.cluster_count
    scanned_before = forest.comparisons
    bridges = cluster_mvc(g, forest)
    if not bridges:
        return forest

    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cl = forest.cluster_list
    merged = 0
    for cid, (w, a, b) in sorted(bridges.items(), key=lambda kv: kv[1]):
        ra = find(cl[a])
        rb = find(cl[b])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            forest.picked.append((a, b, w))
            merged += 1
    if merged == 0:  # pragma: no cover - Theorem 1 guarantees progress
        raise NoProgress("no cluster merged despite available bridges")

    # Rebuild membership into fresh ids from the counter (never reused).
    cl_np = forest.cluster_of
    uniq, inv = np.unique(cl_np, return_inverse=True)
    roots = [find(int(c)) for c in uniq]
    new_of_root: dict[int, int] = {}
    for r in sorted(set(roots)):
        new_of_root[r] = forest.new_cluster()
    mapping = np.array([new_of_root[r] for r in roots], dtype=np.int64)
    forest._set_cluster_of(mapping[inv])
    forest.done = {new_of_root[find(c)] for c in forest.done}

    forest.rounds += 1
    forest.per_round.append(
        RoundStats(
            clusters_before=before,
            clusters_after=forest.cluster_count,
            arcs_scanned=forest.comparisons - scanned_before,
            elapsed=time.perf_counter() - t0,
        )
    )
    return forest


def snip(g: Graph, forest: Forest) -> np.ndarray:
    """Recompute the reduced scan set: ids of peripheral nodes (nodes
    with at least one arc leaving their cluster).  Marks everything
    else interior.  Never changes any algorithmic choice."""
    cl = forest.cluster_of
    src = g.arc_sources()
    cross = cl[src] != cl[g.leaves]
    forest.peripheral = np.bincount(src[cross], minlength=g.n) > 0
    return np.nonzero(forest.peripheral)[0]


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def run(g: Graph, mode: str = "ooag", melioration: bool = True) -> MstResult:
    """Full execution: fleet build, node stage per mode, merge rounds."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    phases: dict[str, float] = {}

    t0 = time.perf_counter()
    f = build_fleet(g)
    phases["fleet_build"] = time.perf_counter() - t0

    t1 = time.perf_counter()
    if mode == "oag_then_merge":
        forest = node_stage(g, f)
    elif mode == "ooag":
        forest = inheritance_stage(g, f)
    else:
        from .kernels import detect_kernels, koag_seed

        forest = koag_seed(g, f, detect_kernels(f))
    forest.melioration = melioration
    phases["node_stage"] = time.perf_counter() - t1
    k_after = forest.cluster_count

    t2 = time.perf_counter()
    while forest.cluster_count - len(forest.done) >= 2:
        prev_done = len(forest.done)
        prev_count = forest.cluster_count
        merge_round(g, forest)
        if forest.cluster_count == prev_count and len(forest.done) == prev_done:
            raise NoProgress("merge loop stalled")  # pragma: no cover
    phases["merge_rounds"] = time.perf_counter() - t2

    total_scaled = sum(w for _, _, w in forest.picked)
    return MstResult(
        edges=forest.picked_edges(),
        total=g.unscale(total_scaled),
        k_after_node_stage=k_after,
        rounds=forest.rounds,
        comparisons=forest.comparisons,
        per_round=forest.per_round,
        node_arc_touches=forest.node_arc_touches + f.arc_touches,
        mode=mode,
        phase_seconds=phases,
    )


def _fmt(w: Weight) -> str:
    """Render an exact weight as a decimal string."""
    if isinstance(w, int):
        return str(w)
    from .graph import format_weight

    from fractions import Fraction

    f = Fraction(w)
    scale = 1
    while (f * scale).denominator != 1:
        scale *= 10
    return format_weight(int(f * scale), scale)


def write_tree(result: MstResult, n: int, path) -> None:
    """Tree output format: 'n k total rounds' then one sorted edge per line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            f"{n} {result.k_after_node_stage} {_fmt(result.total)} {result.rounds}\n"
        )
        for u, v, w in result.edges:
            fh.write(f"{u} {v} {_fmt(w)}\n")
