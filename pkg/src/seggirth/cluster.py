"""Clustered planar graphs G x K_c and the turn-cost graph of an arrangement.

Node (v, j) with slot j in 1..c is stored at index ``v * c + (j - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.csgraph import dijkstra

from .arrangement import MalformedArrangement, PlanarArrangement, segment_endpoint_vertex
from .minplus import INF


@dataclass(frozen=True)
class CNode:
    v: int
    j: int  # 1-based slot

    def index(self, c: int) -> int:
        if not 1 <= self.j <= c:
            raise ValueError(f"slot {self.j} outside 1..{c}")
        return self.v * c + self.j - 1


@dataclass
class ClusteredGraph:
    """Undirected product graph with small nonnegative integer edge weights.

    Each undirected edge is stored once in (src, dst, weight).
    """

    n: int
    c: int
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray
    w_max: int
    _csr: csr_matrix | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.n * self.c

    def node(self, v: int, j: int) -> int:
        return CNode(v, j).index(self.c)

    def csr(self) -> csr_matrix:
        """Symmetric CSR adjacency; explicit zeros are kept as weight-0 edges."""
        if self._csr is None:
            r = np.concatenate([self.src, self.dst])
            q = np.concatenate([self.dst, self.src])
            w = np.concatenate([self.weight, self.weight]).astype(np.float64)
            m = coo_matrix((w, (r, q)), shape=(self.size, self.size)).tocsr()
            m.sort_indices()
            self._csr = m
        return self._csr

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.size)]
        for a, b, w in zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist()):
            adj[a].append((b, w))
            adj[b].append((a, w))
        return adj

    def edge_count(self) -> int:
        return int(self.src.size)


def _intra_pairs(c: int):
    return [(i, j) for i in range(c) for j in range(i + 1, c)]


def make_product(adj: Sequence[Sequence[int]], c: int, inter: int = 1, intra: int = 0) -> ClusteredGraph:
    """G x K_c with uniform inter-cluster and intra-cluster weights."""
    if c < 1:
        raise ValueError("c must be >= 1")
    n = len(adj)
    eu = np.array([u for u in range(n) for v in adj[u] if u < v], dtype=np.int64)
    ev = np.array([v for u in range(n) for v in adj[u] if u < v], dtype=np.int64)
    ii, jj = np.meshgrid(np.arange(c), np.arange(c), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    src = [(eu[:, None] * c + ii[None, :]).ravel()]
    dst = [(ev[:, None] * c + jj[None, :]).ravel()]
    wts = [np.full(eu.size * c * c, inter, dtype=np.int64)]
    pairs = _intra_pairs(c)
    if pairs:
        pi = np.array([p[0] for p in pairs])
        pj = np.array([p[1] for p in pairs])
        base = np.arange(n, dtype=np.int64)[:, None] * c
        src.append((base + pi[None, :]).ravel())
        dst.append((base + pj[None, :]).ravel())
        wts.append(np.full(n * len(pairs), intra, dtype=np.int64))
    return ClusteredGraph(
        n, c, np.concatenate(src), np.concatenate(dst), np.concatenate(wts), max(inter, intra, 0)
    )


@dataclass
class TurnCostGraph:
    hat: ClusteredGraph
    entry: dict[int, int]  # segment id -> node index of (u(s), 1)


def build_turncost(arr: PlanarArrangement) -> TurnCostGraph:
    """The c = 4 turn-cost graph whose entry-node distances are intersection-graph hops."""
    c = 4
    n = arr.n
    adj = arr.adjacency
    for v in arr.vertices:
        d = len(adj[v.id])
        if (v.kind == "crossing" and d != 4) or d > 4:
            raise MalformedArrangement(f"vertex {v.id} ({v.kind}) has degree {d}")
    slot = {}
    for u in range(n):
        for k, w in enumerate(adj[u]):
            slot[(u, w)] = k
    eu, ev, ei, ej = [], [], [], []
    for u in range(n):
        for w in adj[u]:
            if u < w:
                eu.append(u)
                ev.append(w)
                ei.append(slot[(u, w)])
                ej.append(slot[(w, u)])
    eu, ev, ei, ej = (np.array(x, dtype=np.int64) for x in (eu, ev, ei, ej))
    ii, jj = np.meshgrid(np.arange(c), np.arange(c), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    src = [(eu[:, None] * c + ii[None, :]).ravel()]
    dst = [(ev[:, None] * c + jj[None, :]).ravel()]
    same = (ii[None, :] == ei[:, None]) & (jj[None, :] == ej[:, None])
    wts = [np.where(same, 0, 2).ravel()]

    pairs = _intra_pairs(c)
    pi = np.array([p[0] for p in pairs])
    pj = np.array([p[1] for p in pairs])
    # ring (consecutive slots) 1, diagonals 0, at degree-4 vertices only
    ring = np.array([1 if (b - a) % 4 in (1, 3) else 0 for a, b in pairs])
    deg4 = np.array([len(adj[u]) == 4 for u in range(n)], dtype=bool)
    base = np.arange(n, dtype=np.int64)[:, None] * c
    src.append((base + pi[None, :]).ravel())
    dst.append((base + pj[None, :]).ravel())
    wts.append(np.where(deg4[:, None], ring[None, :], 2).ravel())

    hat = ClusteredGraph(n, c, np.concatenate(src), np.concatenate(dst), np.concatenate(wts).astype(np.int64), 2)
    entry = {}
    for s, path in arr.segment_path.items():
        u = segment_endpoint_vertex(arr, s)
        # slot 1 at an endpoint is its only edge, which lies on s
        entry[s] = u * c
    return TurnCostGraph(hat, entry)


def bfs_small_weights(g: ClusteredGraph, source: int, adj=None) -> list[int]:
    """Bucket-queue shortest paths for integer weights in 0..w_max.

    Returns one distance per node, INF when unreachable.
    """
    adj = adj if adj is not None else g.adjacency()
    size = g.size
    dist = [INF] * size
    dist[source] = 0
    nb = g.w_max + 1
    buckets: list[list[int]] = [[] for _ in range(nb)]
    buckets[0].append(source)
    d = 0
    pending = 1
    while pending:
        bucket = buckets[d % nb]
        while bucket:
            u = bucket.pop()
            pending -= 1
            if dist[u] != d:
                continue
            for w, wt in adj[u]:
                nd = d + wt
                if nd < dist[w]:
                    dist[w] = nd
                    buckets[nd % nb].append(w)
                    pending += 1
        d += 1
    return dist


def to_int_distances(d: np.ndarray) -> np.ndarray:
    out = np.full(d.shape, INF, dtype=np.int64)
    fin = np.isfinite(d)
    out[fin] = np.rint(d[fin]).astype(np.int64)
    return out


def multi_source(m: csr_matrix, sources: Sequence[int]) -> np.ndarray:
    """Distance rows from each source over all nodes of the CSR graph (int64, INF)."""
    src = np.asarray(sources, dtype=np.int64)
    if src.size == 0:
        return np.zeros((0, m.shape[0]), dtype=np.int64)
    d = dijkstra(m, directed=False, indices=src)
    return to_int_distances(np.atleast_2d(d))
