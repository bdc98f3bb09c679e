import itertools
import math
import random

import pytest

from seggirth.geom import Segment, enumerate_intersections
from seggirth.oracle import (
    SimpleGraph,
    apsp_bfs,
    bfs_girth,
    dijkstra,
    exhaustive_girth,
    naive_intersection_graph,
    oracle_legal_girth,
    segments_touch,
    shortest_cycle_witness,
)
from helpers import random_segments


def S(i, *c):
    return Segment.from_coords(i, *c)


def test_touching():
    assert segments_touch(S(0, 0, 0, 2, 2), S(1, 0, 2, 2, 0))
    assert not segments_touch(S(0, 0, 0, 1, 0), S(1, 0, 1, 1, 1))
    assert segments_touch(S(0, 0, 0, 4, 0), S(1, 2, 0, 2, 3))  # T-junction
    assert segments_touch(S(0, 0, 0, 2, 0), S(1, 1, 0, 3, 0))  # overlap


def test_small_graphs():
    c5 = SimpleGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert bfs_girth(c5) == exhaustive_girth(c5) == 5
    tree = SimpleGraph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    assert bfs_girth(tree) == math.inf
    assert shortest_cycle_witness(tree) is None
    assert sorted(shortest_cycle_witness(c5)) == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("seed", range(60))
def test_bfs_girth_equals_exhaustive(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 12)
    p = rng.uniform(0.1, 0.6)
    g = SimpleGraph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])
    assert bfs_girth(g) == exhaustive_girth(g)
    w = shortest_cycle_witness(g)
    if w is not None:
        assert len(w) == bfs_girth(g)
        assert all(w[(i + 1) % len(w)] in g.adj[w[i]] for i in range(len(w)))


@pytest.mark.parametrize("seed", range(5))
def test_naive_graph_matches_enumeration(seed):
    rng = random.Random(seed)
    segs = random_segments(rng, 50, length=250)
    assert naive_intersection_graph(segs).edges() == sorted((e.seg_i, e.seg_j) for e in enumerate_intersections(segs))


def test_apsp_and_dijkstra():
    g = SimpleGraph.from_edges(4, [(0, 1), (1, 2)])
    assert apsp_bfs(g, [0]) == [[0, 1, 2, math.inf]]
    adj = [[(v, 1) for v in g.adj[u]] for u in range(4)]
    assert dijkstra(adj, 0) == [0, 1, 2, math.inf]


def test_alternating_six_cycle():
    # R - W - B - B - W - R around a hexagon
    colors = ["R", "W", "B", "B", "W", "R"]
    g = SimpleGraph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    assert oracle_legal_girth(g, colors) == 6
    assert oracle_legal_girth(g, ["R"] * 6) == math.inf
