"""Seeded instance generators with integer coordinates.

Every generator is a pure function of its arguments; the same seed always
gives the same segment list.  Ring and planted instances are checked against
the brute-force oracle before they are returned.
"""

from __future__ import annotations

import math
import random
from typing import Callable

from .geom import GeometryError, Segment, seg_intersect, validate_general_position
from .oracle import SimpleGraph, bfs_dist, bfs_girth, naive_intersection_graph

MODELS = ("uniform-random", "sparse-chain", "ring", "grid-crossing", "girth-k-planted")
COORD_BITS = 32


class GenerationError(RuntimeError):
    pass


def _seg(i, x1, y1, x2, y2) -> Segment:
    return Segment.from_coords(i, int(x1), int(y1), int(x2), int(y2))


def _renumber(segs) -> list[Segment]:
    return [Segment(i, s.a, s.b) for i, s in enumerate(segs)]


def _repair(segs: list[Segment], make: Callable[[int], Segment], rounds: int = 200) -> list[Segment]:
    """Resample segments involved in general-position violations until none remain."""
    segs = list(segs)
    for _ in range(rounds):
        rep = validate_general_position(segs)
        if rep.ok:
            return segs
        for v in rep.violations:
            i = max(v.segments)
            segs[i] = make(i)
    raise GenerationError("could not reach general position")


def uniform_random(n: int, seed: int, box: int = 10_000, length: float | None = None) -> list[Segment]:
    rng = random.Random(seed)
    L = length if length is not None else box * rng.uniform(0.02, 0.3)

    def make(i):
        while True:
            x, y = rng.randint(0, box), rng.randint(0, box)
            ang = rng.uniform(0, 2 * math.pi)
            r = rng.uniform(0.2, 1.0) * L
            x2, y2 = round(x + r * math.cos(ang)), round(y + r * math.sin(ang))
            if (x2, y2) != (x, y):
                return _seg(i, x, y, x2, y2)

    return _repair([make(i) for i in range(n)], make)


def sparse_chain(n: int, seed: int = 0) -> list[Segment]:
    """Zig-zag path: segment i crosses exactly i-1 and i+1."""
    out = []
    for i in range(n):
        x = 10 * i
        if i % 2 == 0:
            out.append(_seg(i, x, 0, x + 15, 15))
        else:
            out.append(_seg(i, x, 15, x + 15, 0))
    return out


def grid_crossing(n: int, seed: int, box: int = 1000) -> list[Segment]:
    """Horizontal and vertical segments with random extents.

    Lines sit on even coordinates and endpoints on odd ones, so no endpoint
    ever lies on another segment and crossings are pairwise distinct.
    """
    rng = random.Random(seed)
    h = n // 2
    v = n - h
    half = box // 2
    ys = rng.sample(range(half), h)
    xs = rng.sample(range(half), v)

    def extent():
        a, b = sorted(rng.sample(range(half), 2))
        return 2 * a + 1, 2 * b + 1

    segs = []
    for y in ys:
        a, b = extent()
        segs.append(_seg(len(segs), a, 2 * y, b, 2 * y))
    for x in xs:
        a, b = extent()
        segs.append(_seg(len(segs), 2 * x, a, 2 * x, b))
    rng.shuffle(segs)
    return _renumber(segs)


def _polygon_sides(k: int, rng: random.Random, jitter: float, R: int = 1_000_000, ext: float = 0.1):
    phase = rng.uniform(0, 2 * math.pi)
    pts = []
    for i in range(k):
        a = phase + 2 * math.pi * i / k + rng.uniform(-jitter, jitter) * math.pi / k
        r = R * (1 + rng.uniform(-jitter, jitter) * 0.1)
        pts.append((r * math.cos(a), r * math.sin(a)))
    sides = []
    for i in range(k):
        (x1, y1), (x2, y2) = pts[i], pts[(i + 1) % k]
        dx, dy = x2 - x1, y2 - y1
        sides.append(_seg(i, round(x1 - ext * dx), round(y1 - ext * dy), round(x2 + ext * dx), round(y2 + ext * dy)))
    return sides


def _is_cycle(segs) -> bool:
    g = naive_intersection_graph(segs)
    k = len(segs)
    return all(set(g.adj[i]) == {(i - 1) % k, (i + 1) % k} for i in range(k)) and bfs_girth(g) == k


def _closed_chain(k: int, rng: random.Random, jitter: float) -> list[Segment]:
    for _ in range(100):
        sides = _polygon_sides(k, rng, jitter)
        if validate_general_position(sides).ok and _is_cycle(sides):
            return sides
    raise GenerationError(f"no closed chain of {k} segments")


def _crossed(segs, cand) -> list[int]:
    return [s.id for s in segs if seg_intersect(s, cand) is not None]


def _add_distractors(segs, count, rng, girth_floor, spread, local) -> list[Segment]:
    """Add segments that cannot close a cycle shorter than ``girth_floor``.

    A new segment whose neighbours are pairwise at distance >= girth_floor - 2
    only creates cycles of length >= girth_floor.
    """
    segs = list(segs)
    xs = [c for s in segs for c in (s.a.x, s.b.x)]
    ys = [c for s in segs for c in (s.a.y, s.b.y)]
    cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
    size = float(max(max(xs) - min(xs), max(ys) - min(ys)))
    adj = naive_intersection_graph(segs).adj
    tries = 0
    while count > 0:
        tries += 1
        if tries > 200 * (count + 10):
            raise GenerationError("distractor placement failed")
        if local and rng.random() < 0.6:
            base = rng.choice(segs)
            u = rng.uniform(0.1, 0.9)
            x = float(base.a.x + u * (base.b.x - base.a.x))
            y = float(base.a.y + u * (base.b.y - base.a.y))
            r = size * rng.uniform(0.01, 0.08)
        else:
            x = cx + rng.uniform(-spread, spread) * size
            y = cy + rng.uniform(-spread, spread) * size
            r = size * rng.uniform(0.02, 0.3)
        ang = rng.uniform(0, math.pi)
        dx, dy = r * math.cos(ang), r * math.sin(ang)
        x1, y1, x2, y2 = round(x - dx), round(y - dy), round(x + dx), round(y + dy)
        if (x1, y1) == (x2, y2):
            continue
        cand = _seg(len(segs), x1, y1, x2, y2)
        try:
            nb = _crossed(segs, cand)
        except GeometryError:
            continue
        if len(nb) >= 2:
            g = SimpleGraph(len(segs), adj)
            ok = all(bfs_dist(g, a)[b] >= girth_floor - 2 for i, a in enumerate(nb) for b in nb[i + 1:])
            if not ok:
                continue
        if not validate_general_position(segs + [cand]).ok:
            continue
        adj = [list(a) for a in adj] + [sorted(nb)]
        for a in nb:
            adj[a] = sorted(adj[a] + [cand.id])
        segs.append(cand)
        count -= 1
    return segs


def ring(k: int, n: int | None = None, seed: int = 0) -> list[Segment]:
    """Extended sides of a regular k-gon plus pendant and stray segments; girth k."""
    rng = random.Random(seed)
    sides = _closed_chain(k, rng, 0.0)
    extra = max(0, (n or k) - k)
    segs = _add_distractors(sides, extra, rng, girth_floor=10**9, spread=1.5, local=True)
    return _verified(segs, k)


def girth_k_planted(k: int, n: int | None = None, seed: int = 0) -> list[Segment]:
    """A jittered closed chain of k segments plus distractors that keep the girth at k."""
    rng = random.Random(seed)
    sides = _closed_chain(k, rng, 0.3)
    extra = max(0, (n or k) - k)
    segs = _add_distractors(sides, extra, rng, girth_floor=k, spread=1.0, local=True)
    order = list(range(len(segs)))
    rng.shuffle(order)
    return _verified(_renumber([segs[i] for i in order]), k)


def _verified(segs, k) -> list[Segment]:
    got = bfs_girth(naive_intersection_graph(segs))
    if got != k:
        raise GenerationError(f"generated girth {got}, wanted {k}")
    return segs


def generate(model: str, n: int, seed: int = 0, k: int | None = None) -> list[Segment]:
    if n < 1:
        raise ValueError("n must be at least 1")
    if model == "uniform-random":
        return uniform_random(n, seed)
    if model == "sparse-chain":
        return sparse_chain(n, seed)
    if model == "grid-crossing":
        return grid_crossing(n, seed)
    if model == "ring":
        k = k or 6
        return ring(k, max(n, k), seed)
    if model == "girth-k-planted":
        k = k or 5
        return girth_k_planted(k, max(n, k), seed)
    raise ValueError(f"unknown model {model!r}; choose from {', '.join(MODELS)}")
