"""Shared instance builders for the test suite."""

from __future__ import annotations

import math
import random

import numpy as np
from scipy.spatial import Delaunay

from seggirth.arrangement import PlanarGraph, rotation_from_coords
from seggirth.geom import Segment, point, validate_general_position
from seggirth.oracle import SimpleGraph


def random_segments(rng: random.Random, n: int, length: int = 200, box: int = 1000) -> list[Segment]:
    """n random segments in general position (rejection sampling)."""
    segs: list[Segment] = []
    while len(segs) < n:
        x, y = rng.randint(0, box), rng.randint(0, box)
        dx, dy = rng.randint(-length, length), rng.randint(-length, length)
        if dx == 0 and dy == 0:
            continue
        s = Segment.from_coords(len(segs), x, y, x + dx, y + dy)
        if validate_general_position(segs + [s]).ok:
            segs.append(s)
    return segs


def delaunay_graph(rng: random.Random, n: int, keep: float = 1.0, tree: bool = False):
    """Planar graph on random points: Delaunay edges, optionally thinned or a spanning tree."""
    pts = np.array([[rng.randint(0, 10**6), rng.randint(0, 10**6)] for _ in range(n)])
    nb = [set() for _ in range(n)]
    edges = set()
    if n >= 3:
        for s in Delaunay(pts).simplices:
            for a in range(3):
                u, v = sorted((int(s[a]), int(s[(a + 1) % 3])))
                edges.add((u, v))
    elif n == 2:
        edges.add((0, 1))
    el = sorted(edges)
    if tree:
        root = list(range(n))

        def find(x):
            while root[x] != x:
                root[x] = root[root[x]]
                x = root[x]
            return x

        rng.shuffle(el)
        picked = []
        for u, v in el:
            ru, rv = find(u), find(v)
            if ru != rv:
                root[ru] = rv
                picked.append((u, v))
        el = picked
    else:
        el = [e for e in el if rng.random() < keep]
    for u, v in el:
        nb[u].add(v)
        nb[v].add(u)
    return rotation_from_coords([point(int(x), int(y)) for x, y in pts], nb)


def grid_graph(w: int, h: int):
    pts = [point(x, y) for y in range(h) for x in range(w)]
    nb = [set() for _ in pts]
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                nb[v].add(v + 1)
                nb[v + 1].add(v)
            if y + 1 < h:
                nb[v].add(v + w)
                nb[v + w].add(v)
    return rotation_from_coords(pts, nb)


def disjoint_union(graphs):
    """Concatenate embedded graphs; each keeps its own rotation system."""
    adj, base = [], 0
    for g in graphs:
        adj += [[base + w for w in g.adj[v]] for v in range(g.n)]
        base += g.n
    return PlanarGraph(adj)


def random_colored_graph(rng: random.Random, max_n: int = 14):
    """Tri-coloured graph with no red-blue edge; half the time a planted alternating cycle."""
    n = rng.randint(3, max_n)
    colors = [rng.choice("RBW") for _ in range(n)]
    edges = set()
    if rng.random() < 0.5 and n >= 6:
        k = rng.randint(6, n)
        cyc = rng.sample(range(n), k)
        # R ... W ... B ... W around the cycle
        q = k // 4
        for i, v in enumerate(cyc):
            colors[v] = "R" if i < q else "W" if i < 2 * q else "B" if i < 3 * q else "W"
        colors[cyc[0]] = "R"
        for i in range(k):
            a, b = cyc[i], cyc[(i + 1) % k]
            if {colors[a], colors[b]} == {"R", "B"}:
                colors[b] = "W"
        for i in range(k):
            a, b = cyc[i], cyc[(i + 1) % k]
            if {colors[a], colors[b]} != {"R", "B"}:
                edges.add((min(a, b), max(a, b)))
    p = rng.uniform(0.05, 0.4)
    for i in range(n):
        for j in range(i + 1, n):
            if {colors[i], colors[j]} != {"R", "B"} and rng.random() < p:
                edges.add((i, j))
    return SimpleGraph.from_edges(n, sorted(edges)), colors


def bd_matrix(rng: np.random.Generator, rows: int, cols: int, delta: int, axis: str, inf_frac: float = 0.1):
    """Random non-negative matrix whose columns (axis='cols') or rows are BD; some lines all-INF."""
    from seggirth.minplus import INF

    along, across = (rows, cols) if axis == "cols" else (cols, rows)
    start = rng.integers(0, 50, size=across)
    steps = rng.integers(-delta, delta + 1, size=(max(0, along - 1), across)) if delta else np.zeros((max(0, along - 1), across), dtype=np.int64)
    m = np.vstack([start[None, :], start[None, :] + np.cumsum(steps, axis=0)]) if along else np.zeros((0, across))
    m = m - np.minimum(0, m.min(axis=0, initial=0))
    m = m.astype(np.int64)
    dead = rng.random(across) < inf_frac
    m[:, dead] = INF
    return m if axis == "cols" else m.T


def bfs_hops(adj, s):
    dist = {s: 0}
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


