"""Cutting-graph model: per-node MVC, subjection arcs, beams, flotillas.

For every non-isolated node we record the minimum weight in its star
subgraph (its MVC) and a single subjection target: the smallest-id leaf
achieving that minimum.  Beams are detected by weight equality on the
shared edge (the edge weight equals both endpoints' MVCs), independent
of which target each endpoint happened to choose, so beams stay
well-defined under duplicate weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import IdOutOfRange, IsolatedNode
from .graph import Graph, Weight

_NO_NODE = -1


@dataclass(frozen=True)
class MvcEntry:
    node: int
    mvc: Optional[Weight]
    target: Optional[int]
    is_isolated: bool


class Classification(NamedTuple):
    """A node's subjection-relevant leaves: boats, beam partners, towboats."""

    J: tuple[int, ...]
    P: tuple[int, ...]
    S: tuple[int, ...]


@dataclass(frozen=True)
class Flotilla:
    members: tuple[int, ...]
    beam_pairs: tuple[tuple[int, int], ...]


class FleetModel:
    """Immutable view of all subjection/beam relations of one graph."""

    def __init__(self, graph: Graph):
        self.graph = graph
        g = graph
        n = g.n
        w = g.weights
        leaves = g.leaves
        indptr = g.indptr
        src = g.arc_sources()

        sentinel = np.iinfo(np.int64).max
        deg = np.diff(indptr)
        isolated = deg == 0
        rows = np.nonzero(deg > 0)[0]
        mvc = np.full(n, sentinel, dtype=np.int64)
        target = np.full(n, _NO_NODE, dtype=np.int64)
        if rows.size:
            # reduceat over nonempty rows only: consecutive nonempty row
            # starts delimit exactly one row each.
            starts = indptr[rows]
            mvc[rows] = np.minimum.reduceat(w, starts)
            at_min = w == mvc[src]
            cand = np.where(at_min, leaves, n)
            target[rows] = np.minimum.reduceat(cand, starts)
        else:
            at_min = np.zeros(0, dtype=bool)

        beam_arc = at_min & (w == mvc[leaves]) if w.size else at_min
        b_src = src[beam_arc]
        b_leaf = leaves[beam_arc]
        b_counts = np.bincount(b_src, minlength=n).astype(np.int64)
        self.beam_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(b_counts, out=self.beam_indptr[1:])
        self.beam_leaves = b_leaf  # already sorted by (src, leaf)

        # Reverse index of strict subjection: rev_children under leaf l
        # lists every root r with an arc (r, l) of weight mvc(r) and
        # mvc(l) < mvc(r).  Subjection is existential (any minimum-weight
        # arc qualifies), so one node can appear under several leaves;
        # beams are kept in their own index below.
        strict = at_min & (mvc[leaves] < mvc[src]) if w.size else at_min
        sr = src[strict]
        sl = leaves[strict]
        order = np.lexsort((sr, sl))
        rc = sr[order]
        rt = sl[order]
        r_counts = np.bincount(rt, minlength=n).astype(np.int64)
        self.rev_indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(r_counts, out=self.rev_indptr[1:])
        self.rev_children = rc

        if w.size:
            j_arc = (w == mvc[leaves]) & (mvc[leaves] > mvc[src])
            self.has_towboat = np.bincount(src[strict], minlength=n) > 0
            self.has_boat = np.bincount(src[j_arc], minlength=n) > 0
        else:
            self.has_towboat = np.zeros(n, dtype=bool)
            self.has_boat = np.zeros(n, dtype=bool)

        self.mvc_scaled = mvc
        self.target = target
        self.isolated = isolated
        # Arc-touch audit: one pass for MVCs, one for beams/classification.
        self.arc_touches = 2 * g.arc_count
        self._beams = None
        self._tables = None

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self.graph.n

    def is_isolated(self, r: int) -> bool:
        self.graph._check_id(r)
        return bool(self.isolated[r])

    def mvc_of(self, r: int) -> Optional[Weight]:
        self.graph._check_id(r)
        if self.isolated[r]:
            return None
        return self.graph.unscale(int(self.mvc_scaled[r]))

    def target_of(self, r: int) -> Optional[int]:
        self.graph._check_id(r)
        t = int(self.target[r])
        return None if t == _NO_NODE else t

    def entry(self, r: int) -> MvcEntry:
        iso = self.is_isolated(r)
        return MvcEntry(r, self.mvc_of(r), self.target_of(r), iso)

    def beam_neighbors(self, r: int) -> list[int]:
        self.graph._check_id(r)
        lo, hi = int(self.beam_indptr[r]), int(self.beam_indptr[r + 1])
        return self.beam_leaves[lo:hi].tolist()

    def in_beam(self, r: int) -> bool:
        self.graph._check_id(r)
        return self.beam_indptr[r + 1] > self.beam_indptr[r]

    def is_beam(self, u: int, v: int) -> bool:
        w = self.graph.weight_between(u, v)
        if w is None or self.isolated[u] or self.isolated[v]:
            return False
        return w == self.mvc_scaled[u] == self.mvc_scaled[v]

    def subjection_sources(self, l: int) -> list[int]:
        """Roots r with r subjecting to l (the incoming xi arcs).

        Includes beam partners: a beam is mutual subjection."""
        self.graph._check_id(l)
        lo, hi = int(self.rev_indptr[l]), int(self.rev_indptr[l + 1])
        return sorted(self.rev_children[lo:hi].tolist() + self.beam_neighbors(l))

    @property
    def beams(self) -> frozenset[tuple[int, int]]:
        """All beam pairs {r, l} as (min, max) tuples."""
        if self._beams is None:
            src = np.repeat(
                np.arange(self.n, dtype=np.int64), np.diff(self.beam_indptr)
            )
            keep = src < self.beam_leaves
            self._beams = frozenset(
                zip(src[keep].tolist(), self.beam_leaves[keep].tolist())
            )
        return self._beams

    # -- classification and charge ---------------------------------------

    def classify(self, r: int) -> Classification:
        """J/P/S components of r's leaf set; trivial leaves are omitted."""
        self.graph._check_id(r)
        g = self.graph
        lo, hi = int(g.indptr[r]), int(g.indptr[r + 1])
        mvc_r = self.mvc_scaled[r]
        j: list[int] = []
        p: list[int] = []
        s: list[int] = []
        for leaf, w in zip(g.leaves[lo:hi].tolist(), g.weights[lo:hi].tolist()):
            mvc_l = self.mvc_scaled[leaf]
            if w == mvc_r and w == mvc_l:
                p.append(leaf)
            elif w == mvc_r and mvc_l < mvc_r:
                s.append(leaf)
            elif w == mvc_l and mvc_l > mvc_r:
                j.append(leaf)
        return Classification(tuple(j), tuple(p), tuple(s))

    def charge(self, r: int, l: int) -> Optional[int]:
        """Score the (r, l) relation: 1 boat, 2 towboat, 3 beam, None trivial."""
        self.graph._check_id(r)
        self.graph._check_id(l)
        w = self.graph.weight_between(r, l)
        if w is None:
            return None
        mvc_r = self.mvc_scaled[r]
        mvc_l = self.mvc_scaled[l]
        if w == mvc_r and w == mvc_l:
            return 3
        if w == mvc_r and mvc_r > mvc_l:
            return 1
        if w == mvc_l and mvc_l > mvc_r:
            return 2
        return None

    def dump(self, stream) -> None:
        """Debug dump: one line per node 'id mvc target J/P/S counts'."""
        for r in range(self.n):
            if self.isolated[r]:
                stream.write(f"{r} - - 0/0/0\n")
                continue
            j, p, s = self.classify(r)
            stream.write(
                f"{r} {self.mvc_of(r)} {self.target_of(r)} "
                f"{len(j)}/{len(p)}/{len(s)}\n"
            )

    # -- chase tables for the engine ---------------------------------------

    def chase_tables(self) -> dict:
        """Plain-list adjacency tables used by the reaping loops (cached)."""
        if self._tables is None:
            self._tables = {
                "target": self.target.tolist(),
                "mvc": self.mvc_scaled.tolist(),
                "rev_ptr": self.rev_indptr.tolist(),
                "rev_flat": self.rev_children.tolist(),
                "beam_ptr": self.beam_indptr.tolist(),
                "beam_flat": self.beam_leaves.tolist(),
                "isolated": self.isolated.tolist(),
            }
        return self._tables


def build_fleet(g: Graph) -> FleetModel:
    """Compute MVCs, subjection arcs, beams and classifications for g."""
    return FleetModel(g)


def compute_mvc(g: Graph) -> list[MvcEntry]:
    f = build_fleet(g)
    return [f.entry(r) for r in range(g.n)]


def trace_chain(f: FleetModel, start: int) -> list[int]:
    """Follow subjection targets from start until a beam member is hit.

    The MVC sequence along the returned path is non-increasing and the
    path has at most n nodes.
    """
    f.graph._check_id(start)
    if f.isolated[start]:
        raise IsolatedNode(f"node {start} has no neighbors")
    path = [start]
    cur = start
    while not f.in_beam(cur):
        cur = int(f.target[cur])
        path.append(cur)
        if len(path) > f.n:  # pragma: no cover - Theorem 1 forbids this
            raise RuntimeError("subjection chain did not converge")
    return path


def flotillas(f: FleetModel) -> list[Flotilla]:
    """Weakly connected components of the cutting graph (subjection + beams)."""
    n = f.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    rev_src = np.repeat(np.arange(n, dtype=np.int64), np.diff(f.rev_indptr))
    for l, r in zip(rev_src.tolist(), f.rev_children.tolist()):
        union(l, r)
    beam_src = np.repeat(np.arange(n, dtype=np.int64), np.diff(f.beam_indptr))
    for a, b in zip(beam_src.tolist(), f.beam_leaves.tolist()):
        if a < b:
            union(a, b)

    groups: dict[int, list[int]] = {}
    for v in range(n):
        if f.isolated[v]:
            continue
        groups.setdefault(find(v), []).append(v)

    out = []
    for root in sorted(groups):
        members = tuple(groups[root])
        mset = set(members)
        pairs = tuple(
            sorted(p for p in f.beams if p[0] in mset)
        )
        out.append(Flotilla(members, pairs))
    return out
