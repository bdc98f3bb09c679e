import random

import pytest

from seggirth.arrangement import (
    ArrangementBuilder,
    MalformedArrangement,
    PlanarGraph,
    build_planarization,
    check_rotation,
    clockwise,
    connected_components,
    read_graph_dump,
)
from seggirth.geom import Segment, enumerate_intersections, point
from helpers import random_segments


def test_two_crossing_segments():
    arr = build_planarization([Segment.from_coords(0, 0, 0, 2, 2), Segment.from_coords(1, 0, 2, 2, 0)])
    assert arr.n == 5
    kinds = sorted(v.kind for v in arr.vertices)
    assert kinds == ["crossing"] + ["endpoint"] * 4
    x = next(v.id for v in arr.vertices if v.kind == "crossing")
    assert len(arr.adjacency[x]) == 4
    assert check_rotation(arr)


def test_clockwise_order():
    dirs = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    # east, then clockwise: south, west, north
    assert clockwise(dirs) == [0, 3, 2, 1]


@pytest.mark.parametrize("seed", range(10))
def test_arrangement_invariants(seed):
    rng = random.Random(seed)
    segs = random_segments(rng, rng.randint(1, 60), length=300)
    ev = enumerate_intersections(segs)
    arr = build_planarization(segs, ev)
    assert arr.n == 2 * len(segs) + len(ev)
    assert check_rotation(arr)
    assert len(arr.graph().edges()) == len(segs) + 2 * len(ev)
    for v in arr.vertices:
        d = len(arr.adjacency[v.id])
        assert d == (4 if v.kind == "crossing" else 1)
    for s in segs:
        path = arr.segment_path[s.id]
        assert arr.vertices[path[0]].point in (s.a, s.b)
        assert all(s.id in arr.vertices[v].owners for v in path)
        assert arr.vertices[arr.left_vertex[s.id]].point == s.left


def test_subset_build_matches_fresh_build():
    rng = random.Random(4)
    segs = random_segments(rng, 40, length=300)
    builder = ArrangementBuilder(segs, enumerate_intersections(segs))
    keep = sorted(rng.sample(range(40), 25))
    sub = builder.build(keep)
    fresh = build_planarization([segs[i] for i in keep])
    assert sub.n == fresh.n
    assert sorted(len(a) for a in sub.adjacency) == sorted(len(a) for a in fresh.adjacency)
    assert set(sub.segment_path) == set(keep)


def test_dump_roundtrip():
    rng = random.Random(1)
    arr = build_planarization(random_segments(rng, 15, length=400))
    g, pts, w, l = read_graph_dump(arr.dump() + "weight 0 3/2\n")
    assert g.adj == arr.adjacency
    assert pts == [v.point for v in arr.vertices]
    assert w == {0: 3 / 2}


def test_dump_errors():
    with pytest.raises(MalformedArrangement.__mro__[1]):
        read_graph_dump("vertex 0 0 0 endpoint 0\nvertex 2 1 1 endpoint 0\n")


def test_components_and_induced():
    g = PlanarGraph([[1], [0], [3], [2], []])
    count, label = connected_components(g.adj)
    assert count == 3 and label == [0, 0, 1, 1, 2]
    sub, local = g.induced([2, 3])
    assert sub.adj == [[1], [0]] and local == {2: 0, 3: 1}
