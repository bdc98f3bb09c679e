"""Girth of segment intersection graphs by separator recursion.

At each node the planarized graph H is separated with weight 1 on left
endpoints.  Segments entirely on one side are red or blue, segments
touching the path part P of the separator are white, and segments touching
only the light part Q are handled by BFS.  Shortest cycles that use both
colours are found as shortest legal alternating closed walks: red and blue
stretches between white segments whose length differs from the white-only
distance, glued by white stretches.  The walk lengths come from min-plus
products of distance matrices indexed by the white segments.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .arrangement import ArrangementBuilder, PlanarArrangement
from .distkit import arrangement_distances
from .geom import IntersectionEvent, Segment, enumerate_intersections
from .minplus import INF, BdCertificate, DistMatrix, DimensionMismatch, minplus_bd, minplus_naive
from .params import Params
from .separator import SepInput, WeightCapError, separate
from .trace import Trace


class PromiseViolated(AssertionError):
    pass


@dataclass
class GirthResult:
    girth: float  # int, or math.inf for a forest
    branch: str
    trace: Trace = field(default_factory=Trace, repr=False)

    @property
    def finite(self) -> bool:
        return self.girth != math.inf


def _as_value(v) -> float:
    return math.inf if v >= INF else int(v)


# ---------------------------------------------------------------- plain graphs


def intersection_edges(arr_or_events) -> list[tuple[int, int]]:
    """One edge per crossing pair, sorted."""
    if isinstance(arr_or_events, PlanarArrangement):
        pairs = {v.owners for v in arr_or_events.vertices if v.kind == "crossing"}
    else:
        pairs = {(e.seg_i, e.seg_j) for e in arr_or_events}
    return sorted(tuple(sorted(p)) for p in pairs)


def adjacency_from_edges(vertices: Sequence[int], edges) -> dict[int, list[int]]:
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        if u in adj and v in adj:
            adj[u].add(v)
            adj[v].add(u)
    return {v: sorted(s) for v, s in adj.items()}


def small_girth_check(edges) -> int | None:
    """3 if the graph has a triangle, else 4 if it has a 4-cycle, else None."""
    nbr: dict[int, set[int]] = {}
    for u, v in edges:
        if u == v:
            continue
        nbr.setdefault(u, set()).add(v)
        nbr.setdefault(v, set()).add(u)
    for u, v in edges:
        a, b = nbr[u], nbr[v]
        if len(a) > len(b):
            a, b = b, a
        if any(w in b for w in a):
            return 3
    seen: set[tuple[int, int]] = set()
    for w in sorted(nbr):
        ns = sorted(nbr[w])
        for i in range(len(ns)):
            for j in range(i + 1, len(ns)):
                key = (ns[i], ns[j])
                if key in seen:
                    return 4
                seen.add(key)
    return None


def shortest_cycle_through(adj, v) -> float:
    """l(v) = min over non-tree edges xy of a BFS from v of d(x) + d(y) + 1.

    Always at least the girth, and at most |C| for any shortest cycle C
    through v.  ``adj`` maps vertex -> neighbours (list or dict).
    """
    dist = {v: 0}
    par = {v: None}
    q = deque([v])
    best = math.inf
    while q:
        u = q.popleft()
        du = dist[u]
        if 2 * du + 1 >= best:
            break
        for w in adj[u]:
            if w not in dist:
                dist[w] = du + 1
                par[w] = u
                q.append(w)
            elif par[u] != w:
                best = min(best, du + dist[w] + 1)
    return best


def hop_distances(adj, sources, targets) -> np.ndarray:
    """BFS hop distances (INF when unreachable) from each source to each target."""
    out = np.full((len(sources), len(targets)), INF, dtype=np.int64)
    for i, s in enumerate(sources):
        dist = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
        for j, t in enumerate(targets):
            if t in dist:
                out[i, j] = dist[t]
    return out


# ---------------------------------------------------------------- legal walks


def legal_filter(d_sub: DistMatrix, d_white: DistMatrix) -> DistMatrix:
    """Keep entries whose distance differs from the white-only distance, else INF."""
    if d_sub.rows != d_white.rows or d_sub.cols != d_white.cols:
        raise DimensionMismatch("legal_filter needs identical labels")
    keep = d_sub.data != d_white.data
    return DistMatrix(np.where(keep, d_sub.data, INF), list(d_sub.rows), list(d_sub.cols))


def legal_girth(
    dd1: DistMatrix, dd2: DistMatrix, k: int | None = None, cert: BdCertificate | None = None, block=None, stats=None
) -> float:
    """Smallest diagonal entry of Z_k = Y or Y^2 or ... or Y^k, Y = dd1 * dd2.

    Z is evaluated as Z_k = (Z_floor(k/2) * Z_ceil(k/2)) or Y, which needs
    O(log k) products.  ``cert`` (rows of the right factor, which carries over
    to Y and every Z) enables the bounded-difference engine.
    """
    if dd1.shape[0] == 0:
        return math.inf
    k = dd1.shape[0] if k is None else k

    def mul(a, b):
        if cert is None:
            return minplus_naive(a, b, stats)
        return minplus_bd(a, b, cert, block=block, stats=stats)

    Y = mul(dd1, dd2)
    memo = {1: Y}

    def Z(j):
        if j not in memo:
            prod = mul(Z(j // 2), Z(j - j // 2))
            memo[j] = DistMatrix(np.minimum(prod.data, Y.data), prod.rows, prod.cols)
        return memo[j]

    return _as_value(int(np.diagonal(Z(max(1, k)).data).min()))


def legal_walk_girth(adj, colors, engine: str = "naive") -> float:
    """Shortest legal alternating closed walk of a coloured graph.

    ``adj`` maps vertex -> neighbours; ``colors[v]`` in {'R', 'B', 'W'}.
    """
    verts = sorted(adj)
    white = [v for v in verts if colors[v] == "W"]
    if not white:
        return math.inf

    def restrict(keep):
        ks = set(keep)
        return {v: [w for w in adj[v] if w in ks] for v in ks}

    red_side = restrict(v for v in verts if colors[v] in "RW")
    blue_side = restrict(v for v in verts if colors[v] in "BW")
    wonly = restrict(white)
    dW = DistMatrix(hop_distances(wonly, white, white), white, white)
    d1 = legal_filter(DistMatrix(hop_distances(red_side, white, white), white, white), dW)
    d2 = legal_filter(DistMatrix(hop_distances(blue_side, white, white), white, white), dW)
    dd1 = minplus_naive(d1, dW)
    dd2 = minplus_naive(d2, dW)
    return legal_girth(dd1, dd2, len(white))


# ---------------------------------------------------------------- recursion


def walk_order(arr: PlanarArrangement, path: Sequence[int]) -> list[int]:
    """Segments met along an H-path, in order, so that neighbours always intersect.

    Consecutive entries pass through a common vertex of the path (or repeat).
    """
    out: list[int] = []
    m = len(path)
    for t, x in enumerate(path):
        owners = list(arr.vertices[x].owners)
        first = arr.edge_owner(path[t - 1], x) if t > 0 else None
        last = arr.edge_owner(x, path[t + 1]) if t + 1 < m else None
        seq = []
        if first is not None:
            seq.append(first)
        seq += [s for s in owners if s not in (first, last)]
        if last is not None and (not seq or seq[-1] != last):
            seq.append(last)
        elif last is not None and first == last and len(owners) > 1:
            seq.append(last)
        for s in seq:
            if not out or out[-1] != s:
                out.append(s)
    return out


class GirthSolver:
    def __init__(self, segments: Sequence[Segment], params: Params | None = None, trace: Trace | None = None,
                 events: Sequence[IntersectionEvent] | None = None):
        self.params = params or Params()
        self.trace = trace if trace is not None else Trace()
        with self.trace.stage("planarize"):
            self.events = list(events) if events is not None else enumerate_intersections(segments)
            self.builder = ArrangementBuilder(segments, self.events)
        self.edges = intersection_edges(self.events)
        self.adj = adjacency_from_edges([s.id for s in segments], self.edges)
        self.ids = sorted(s.id for s in segments)

    def _local_adj(self, ids) -> dict[int, list[int]]:
        keep = set(ids)
        return {s: [t for t in self.adj[s] if t in keep] for s in ids}

    def _base(self, ids):
        adj = self._local_adj(ids)
        return min((shortest_cycle_through(adj, s) for s in ids), default=math.inf)

    def run(self) -> GirthResult:
        g, branch = self._rec(self.ids, 0)
        return GirthResult(g, branch, self.trace)

    def _rec(self, ids: list[int], depth: int):
        prm = self.params
        n = len(ids)
        info = self.trace.add(kind="girth", depth=depth, n=n, internal=False, bd=0)
        if n <= prm.n0:
            info["case"] = "base"
            return self._base(ids), "base"
        with self.trace.stage("planarize"):
            arr = self.builder.build(ids)
        weight = [0] * arr.n
        for s in ids:
            weight[arr.left_vertex[s]] = 1
        p = prm.p_girth(n)
        try:
            with self.trace.stage("separate"):
                sep = separate(SepInput(arr.graph(), weight, [1] * arr.n, p, prm.eps))
        except WeightCapError:
            info["case"] = "weight-cap"
            return self._base(ids), "base"
        side = [0] * arr.n
        for v in sep.V1:
            side[v] = 1
        for v in sep.V2:
            side[v] = 2
        for pth in sep.P:
            for v in pth:
                side[v] = 3
        for v in sep.Q:
            side[v] = 4
        A = {1: [], 2: []}
        P, Q = [], []
        for s in ids:
            kinds = {side[v] for v in arr.segment_path[s]}
            if 3 in kinds:
                P.append(s)
            elif 4 in kinds:
                Q.append(s)
            elif kinds == {1} or kinds == {2}:
                A[kinds.pop()].append(s)
            else:
                raise AssertionError(f"segment {s} meets both sides but not the separator")
        sub = [sorted(A[1] + P), sorted(A[2] + P)]
        if max(len(x) for x in sub) >= n:
            info["case"] = "no-progress"
            return self._base(ids), "base"
        assert all(4 * len(x) <= 3 * n + 4 * len(P) for x in sub), "side too large"
        assert len(sub[0]) + len(sub[1]) <= n + 2 * len(P)
        info.update(internal=True, case=sep.case, p=p, P=len(P), Q=len(Q), A1=len(A[1]), A2=len(A[2]))

        g1, b1 = self._rec(sub[0], depth + 1)
        g2, b2 = self._rec(sub[1], depth + 1)
        bd0 = self.trace.stats.bd

        with self.trace.stage("combine"):
            adj = self._local_adj(ids)
            gq = min((shortest_cycle_through(adj, s) for s in Q), default=math.inf)
        g_legal = self._legal(arr, sep.P, P, sub) if P else math.inf
        info["bd"] = self.trace.stats.bd - bd0
        cands = [(g_legal, "legal"), (g1, b1), (g2, b2), (gq, "q-bfs")]
        best = min(cands, key=lambda t: t[0])
        info.update(g_legal=str(g_legal), g_q=str(gq), g=str(best[0]))
        return best

    def _legal(self, arr, hpaths, P, sub) -> float:
        prm = self.params
        parts = [walk_order(arr, pth) for pth in hpaths]
        seq = [s for part in parts for s in part]
        split = len(parts[0]) if len(parts) == 2 else None
        labels = list(enumerate(seq))
        pos = {s: k for k, s in enumerate(sorted(P))}
        idx = np.array([pos[s] for s in seq], dtype=np.intp)
        Ps = sorted(P)
        with self.trace.stage("distances"):
            d_sub = []
            for side_ids in sub:
                with self.trace.stage("planarize"):
                    sa = self.builder.build(side_ids)
                d = arrangement_distances(sa, Ps, prm, self.trace)
                d_sub.append(DistMatrix(d.data[np.ix_(idx, idx)], labels, labels))
            wadj = self._local_adj(Ps)
            dw = hop_distances(wadj, Ps, Ps)
            dW = DistMatrix(dw[np.ix_(idx, idx)], labels, labels)
        cert = BdCertificate("rows", 1, split, "B")
        with self.trace.stage("minplus"):
            dd = []
            for d in d_sub:
                dd.append(minplus_bd(legal_filter(d, dW), dW, cert, block=prm.block, stats=self.trace.stats))
            return legal_girth(dd[0], dd[1], len(Ps), cert, block=prm.block, stats=self.trace.stats)


def girth_high(segments: Sequence[Segment], params: Params | None = None, trace: Trace | None = None,
               events=None) -> GirthResult:
    """Exact girth via the separator recursion (intended for girth > 4 inputs)."""
    solver = GirthSolver(segments, params, trace, events)
    prm = solver.params
    if prm.debug and small_girth_check(solver.edges) is not None:
        raise PromiseViolated("input has a cycle of length at most 4")
    return solver.run()


def girth(segments: Sequence[Segment], params: Params | None = None, trace: Trace | None = None) -> GirthResult:
    """Exact girth of the intersection graph (math.inf for a forest)."""
    trace = trace if trace is not None else Trace()
    segments = list(segments)
    with trace.stage("planarize"):
        events = enumerate_intersections(segments)
    with trace.stage("combine"):
        small = small_girth_check(intersection_edges(events))
    if small is not None:
        return GirthResult(small, "small-girth", trace)
    return girth_high(segments, params, trace, events)
