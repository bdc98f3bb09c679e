"""Planarized intersection graphs of segment sets.

The arrangement graph has one vertex per segment endpoint and per crossing,
and one edge between consecutive points along each segment.  Neighbour
lists are kept in clockwise order, which gives the rotation system the
separator needs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

from .geom import (
    GeometryError,
    IntersectionEvent,
    Point,
    Segment,
    enumerate_intersections,
    format_coord,
    param_along,
)


class MalformedArrangement(GeometryError):
    pass


@dataclass
class PlanarGraph:
    """Simple undirected graph whose neighbour lists are clockwise rotations."""

    adj: list[list[int]]

    @property
    def n(self) -> int:
        return len(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adj) for v in nbrs if u < v]

    def induced(self, vertices: Sequence[int]) -> tuple["PlanarGraph", dict[int, int]]:
        """Subgraph on ``vertices`` (kept in the given order) plus old->new ids."""
        local = {v: i for i, v in enumerate(vertices)}
        adj = [[local[w] for w in self.adj[v] if w in local] for v in vertices]
        return PlanarGraph(adj), local


def _half(dx, dy) -> int:
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def _angle_cmp(d1, d2) -> int:
    h1, h2 = _half(*d1), _half(*d2)
    if h1 != h2:
        return h1 - h2
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def clockwise(directions: Sequence[tuple]) -> list[int]:
    """Indices of ``directions`` in clockwise order, starting at the smallest angle.

    Angles are measured counter-clockwise from the positive x axis and compared
    exactly (half-plane test plus cross product).
    """
    asc = sorted(range(len(directions)), key=cmp_to_key(lambda i, j: _angle_cmp(directions[i], directions[j])))
    return asc[:1] + asc[:0:-1]


def rotation_from_coords(points: Sequence[Point], adjacency: Sequence[Iterable[int]]) -> PlanarGraph:
    """Clockwise rotation system of a straight-line drawing."""
    adj = []
    for v, nbrs in enumerate(adjacency):
        nbrs = sorted(set(nbrs))
        p = points[v]
        dirs = [(points[w][0] - p[0], points[w][1] - p[1]) for w in nbrs]
        adj.append([nbrs[i] for i in clockwise(dirs)])
    return PlanarGraph(adj)


def connected_components(adj: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Component count and a per-vertex component label (labels in discovery order)."""
    n = len(adj)
    label = [-1] * n
    count = 0
    for s in range(n):
        if label[s] != -1:
            continue
        label[s] = count
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if label[w] == -1:
                    label[w] = count
                    queue.append(w)
        count += 1
    return count, label


@dataclass(frozen=True)
class ArrVertex:
    id: int
    point: Point
    kind: str  # "endpoint" | "crossing"
    owners: tuple[int, ...]


@dataclass
class PlanarArrangement:
    vertices: list[ArrVertex]
    adjacency: list[list[int]]
    edge_segment: dict[tuple[int, int], int]
    segment_path: dict[int, list[int]]
    left_vertex: dict[int, int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def graph(self) -> PlanarGraph:
        return PlanarGraph(self.adjacency)

    def edge_owner(self, u: int, v: int) -> int:
        return self.edge_segment[(u, v) if u < v else (v, u)]

    def edges(self) -> list[tuple[int, int, int]]:
        out = []
        for s, path in self.segment_path.items():
            out.extend((u, v, s) for u, v in zip(path, path[1:]))
        return out

    def dump(self) -> str:
        lines = []
        for v in self.vertices:
            owners = " ".join(map(str, v.owners))
            lines.append(f"vertex {v.id} {format_coord(v.point.x)} {format_coord(v.point.y)} {v.kind} {owners}")
        for u, v, s in self.edges():
            lines.append(f"edge {u} {v} {s}")
        return "\n".join(lines) + "\n"


class ArrangementBuilder:
    """Planarizes any subset of a segment set whose crossings are already known.

    Crossings and their clockwise slot order are computed once; planarizing a
    subset then needs no further geometry, which keeps repeated sub-arrangement
    construction cheap.
    """

    def __init__(self, segments: Sequence[Segment], events: Sequence[IntersectionEvent]):
        self.segments = {s.id: s for s in segments}
        self.events = list(events)
        along: dict[int, list[tuple[Fraction, int]]] = {s: [] for s in self.segments}
        self.slots: list[list[tuple[int, int]]] = []
        for k, e in enumerate(self.events):
            s, t = self.segments[e.seg_i], self.segments[e.seg_j]
            along[s.id].append((param_along(s, e.p), k))
            along[t.id].append((param_along(t, e.p), k))
            ds = (s.b.x - s.a.x, s.b.y - s.a.y)
            dt = (t.b.x - t.a.x, t.b.y - t.a.y)
            cand = [(s.id, +1), (s.id, -1), (t.id, +1), (t.id, -1)]
            dirs = [ds, (-ds[0], -ds[1]), dt, (-dt[0], -dt[1])]
            self.slots.append([cand[i] for i in clockwise(dirs)])
        self.order = {s: [k for _, k in sorted(lst)] for s, lst in along.items()}

    def build(self, subset: Iterable[int] | None = None) -> PlanarArrangement:
        ids = sorted(self.segments) if subset is None else sorted(set(subset))
        keep = set(ids)
        vertices: list[ArrVertex] = []
        ends: dict[int, tuple[int, int]] = {}
        for s in ids:
            seg = self.segments[s]
            va = len(vertices)
            vertices.append(ArrVertex(va, seg.a, "endpoint", (s,)))
            vertices.append(ArrVertex(va + 1, seg.b, "endpoint", (s,)))
            ends[s] = (va, va + 1)
        cross_vertex: dict[int, int] = {}
        for s in ids:
            for k in self.order[s]:
                e = self.events[k]
                if k in cross_vertex or e.seg_i not in keep or e.seg_j not in keep:
                    continue
                cross_vertex[k] = len(vertices)
                vertices.append(ArrVertex(len(vertices), e.p, "crossing", (e.seg_i, e.seg_j)))
        # Restore global event order for crossing ids so output is canonical.
        if cross_vertex:
            base = 2 * len(ids)
            ordered = sorted(cross_vertex)
            remap = {cross_vertex[k]: base + i for i, k in enumerate(ordered)}
            cross_vertex = {k: base + i for i, k in enumerate(ordered)}
            crossing_vs = [None] * len(ordered)
            for v in vertices[base:]:
                crossing_vs[remap[v.id] - base] = ArrVertex(remap[v.id], v.point, v.kind, v.owners)
            vertices = vertices[:base] + crossing_vs

        paths: dict[int, list[int]] = {}
        step: dict[tuple[int, int, int], int] = {}
        edge_segment: dict[tuple[int, int], int] = {}
        for s in ids:
            va, vb = ends[s]
            path = [va] + [cross_vertex[k] for k in self.order[s] if k in cross_vertex] + [vb]
            paths[s] = path
            for u, v in zip(path, path[1:]):
                step[(u, s, +1)] = v
                step[(v, s, -1)] = u
                edge_segment[(u, v) if u < v else (v, u)] = s
        event_of = {v: k for k, v in cross_vertex.items()}
        adjacency: list[list[int]] = []
        for v in vertices:
            if v.kind == "endpoint":
                (s,) = v.owners
                va, vb = ends[s]
                adjacency.append([step[(v.id, s, +1)]] if v.id == va else [step[(v.id, s, -1)]])
            else:
                k = event_of[v.id]
                adjacency.append([step[(v.id, s, sign)] for s, sign in self.slots[k]])
        left = {}
        for s in ids:
            seg = self.segments[s]
            va, vb = ends[s]
            left[s] = va if seg.a == seg.left else vb
        return PlanarArrangement(vertices, adjacency, edge_segment, paths, left)


def build_planarization(
    segments: Sequence[Segment], events: Sequence[IntersectionEvent] | None = None
) -> PlanarArrangement:
    """Planarized intersection graph of ``segments``.

    ``events`` defaults to :func:`enumerate_intersections` (which raises on
    degenerate input).
    """
    if events is None:
        events = enumerate_intersections(segments)
    return ArrangementBuilder(segments, events).build()


def segment_endpoint_vertex(arr: PlanarArrangement, s: int) -> int:
    """Vertex of the lexicographically smaller endpoint of segment ``s``."""
    return arr.left_vertex[s]


def check_rotation(arr: PlanarArrangement) -> bool:
    """True if every rotation list is clockwise by exact angle comparison."""
    for v in arr.vertices:
        nbrs = arr.adjacency[v.id]
        if len(nbrs) < 2:
            continue
        p = v.point
        dirs = [(arr.vertices[w].point.x - p.x, arr.vertices[w].point.y - p.y) for w in nbrs]
        if [nbrs[i] for i in clockwise(dirs)] != nbrs:
            return False
    return True


def read_graph_dump(text: str) -> tuple[PlanarGraph, list[Point], dict[int, Fraction], dict[int, Fraction]]:
    """Parse ``vertex``/``edge`` (and optional ``weight``/``load``) lines.

    Returns the graph with a rotation system derived from the coordinates,
    the points, and any explicit weights and loads.
    """
    pts: dict[int, Point] = {}
    edges: list[tuple[int, int]] = []
    weights: dict[int, Fraction] = {}
    loads: dict[int, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        tag = parts[0]
        try:
            if tag == "vertex":
                pts[int(parts[1])] = Point(Fraction(parts[2]), Fraction(parts[3]))
            elif tag == "edge":
                edges.append((int(parts[1]), int(parts[2])))
            elif tag == "weight":
                weights[int(parts[1])] = Fraction(parts[2])
            elif tag == "load":
                loads[int(parts[1])] = Fraction(parts[2])
            else:
                raise GeometryError(f"line {lineno}: unknown record {tag!r}")
        except (IndexError, ValueError) as exc:
            raise GeometryError(f"line {lineno}: {exc}") from None
    n = len(pts)
    if sorted(pts) != list(range(n)):
        raise GeometryError("vertex ids must be 0..n-1")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if u == v:
            raise GeometryError(f"self-loop at {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    points = [pts[i] for i in range(n)]
    return rotation_from_coords(points, nbrs), points, weights, loads
