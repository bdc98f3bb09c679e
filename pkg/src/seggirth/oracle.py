"""Brute-force references for differential testing.

Everything here is written from first principles with plain loops and does
not import the production traversal or product code.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

INF = math.inf


@dataclass
class SimpleGraph:
    n: int
    adj: list[list[int]]

    @classmethod
    def from_edges(cls, n: int, edges) -> "SimpleGraph":
        nb = [set() for _ in range(n)]
        for u, v in edges:
            if u != v:
                nb[u].add(v)
                nb[v].add(u)
        return cls(n, [sorted(s) for s in nb])

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def induced(self, keep) -> "SimpleGraph":
        keep = sorted(keep)
        pos = {v: i for i, v in enumerate(keep)}
        return SimpleGraph(len(keep), [[pos[w] for w in self.adj[v] if w in pos] for v in keep])


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on(p, q, r):
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segments_touch(s, t) -> bool:
    """Closed segments share at least one point."""
    p1, p2 = (Fraction(s.a.x), Fraction(s.a.y)), (Fraction(s.b.x), Fraction(s.b.y))
    p3, p4 = (Fraction(t.a.x), Fraction(t.a.y)), (Fraction(t.b.x), Fraction(t.b.y))
    d1, d2 = _cross(p3, p4, p1), _cross(p3, p4, p2)
    d3, d4 = _cross(p1, p2, p3), _cross(p1, p2, p4)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return (
        (d1 == 0 and _on(p3, p4, p1))
        or (d2 == 0 and _on(p3, p4, p2))
        or (d3 == 0 and _on(p1, p2, p3))
        or (d4 == 0 and _on(p1, p2, p4))
    )


def naive_intersection_graph(segments) -> SimpleGraph:
    segs = list(segments)
    edges = [(i, j) for i, j in combinations(range(len(segs)), 2) if segments_touch(segs[i], segs[j])]
    return SimpleGraph.from_edges(len(segs), edges)


def bfs_dist(g: SimpleGraph, s: int) -> list:
    d = [INF] * g.n
    d[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for w in g.adj[u]:
            if d[w] == INF:
                d[w] = d[u] + 1
                q.append(w)
    return d


def bfs_girth(g: SimpleGraph):
    """Minimum over start vertices of the shortest closed walk found by BFS."""
    best = INF
    for r in range(g.n):
        d = [INF] * g.n
        par = [-1] * g.n
        d[r] = 0
        q = deque([r])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if d[w] == INF:
                    d[w] = d[u] + 1
                    par[w] = u
                    q.append(w)
                elif par[u] != w:
                    best = min(best, d[u] + d[w] + 1)
    return best


def exhaustive_girth(g: SimpleGraph):
    """Shortest simple cycle by depth-first enumeration (small graphs only)."""
    best = INF

    def dfs(start, u, depth, seen):
        nonlocal best
        if depth + 1 >= best:
            return
        for w in g.adj[u]:
            if w == start and depth >= 2:
                best = min(best, depth + 1)
            elif w > start and w not in seen:
                seen.add(w)
                dfs(start, w, depth + 1, seen)
                seen.discard(w)

    for s in range(g.n):
        dfs(s, s, 0, {s})
    return best


def shortest_cycle_witness(g: SimpleGraph) -> list[int] | None:
    """Vertices of one shortest cycle, or None for a forest."""
    best = None
    for r in range(g.n):
        d = [INF] * g.n
        par = [-1] * g.n
        d[r] = 0
        q = deque([r])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if d[w] == INF:
                    d[w] = d[u] + 1
                    par[w] = u
                    q.append(w)
                elif par[u] != w and (best is None or d[u] + d[w] + 1 < best[0]):
                    best = (d[u] + d[w] + 1, r, u, w, list(par))
    if best is None:
        return None
    _, r, u, w, par = best
    left, right = [u], [w]
    while left[-1] != r:
        left.append(par[left[-1]])
    while right[-1] != r:
        right.append(par[right[-1]])
    cyc = left[::-1] + right[:-1]
    if len(set(cyc)) != len(cyc):
        raise AssertionError("witness is not simple")
    return cyc


def apsp_bfs(g: SimpleGraph, sources) -> list[list]:
    return [bfs_dist(g, s) for s in sources]


def dijkstra(adj_w, source) -> list:
    """adj_w[u] = list of (v, weight)."""
    d = [INF] * len(adj_w)
    d[source] = 0
    heap = [(0, source)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > d[u]:
            continue
        for v, w in adj_w[u]:
            if du + w < d[v]:
                d[v] = du + w
                heapq.heappush(heap, (d[v], v))
    return d


def _mp(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[min((A[i][t] + B[t][j] for t in range(k)), default=INF) for j in range(m)] for i in range(n)]


def oracle_legal_girth(g: SimpleGraph, colors) -> float:
    """Shortest legal alternating closed walk, by direct fixed-point evaluation.

    ``colors[v]`` is 'R', 'B' or 'W'.
    """
    white = [v for v in range(g.n) if colors[v] == "W"]
    if not white:
        return INF

    def dist_in(keep):
        sub_idx = sorted(keep)
        pos = {v: i for i, v in enumerate(sub_idx)}
        sub = SimpleGraph(len(sub_idx), [[pos[w] for w in g.adj[v] if w in pos] for v in sub_idx])
        return [[bfs_dist(sub, pos[u])[pos[v]] for v in white] for u in white]

    dw = dist_in(white)
    dr = dist_in([v for v in range(g.n) if colors[v] in "RW"])
    db = dist_in([v for v in range(g.n) if colors[v] in "BW"])
    k = len(white)
    pr = [[dr[i][j] if dr[i][j] != dw[i][j] else INF for j in range(k)] for i in range(k)]
    pb = [[db[i][j] if db[i][j] != dw[i][j] else INF for j in range(k)] for i in range(k)]
    y = _mp(_mp(pr, dw), _mp(pb, dw))
    acc = [row[:] for row in y]
    cur = y
    for _ in range(k - 1):
        cur = _mp(cur, y)
        acc = [[min(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(acc, cur)]
    return min(acc[i][i] for i in range(k))


def segment_girth(segments):
    return bfs_girth(naive_intersection_graph(segments))
