import random

import numpy as np
import pytest

from seggirth.arrangement import MalformedArrangement, PlanarArrangement, build_planarization
from seggirth.cluster import CNode, bfs_small_weights, build_turncost, make_product, multi_source
from seggirth.geom import Segment
from seggirth.minplus import INF
from seggirth.oracle import dijkstra
from helpers import bfs_hops, delaunay_graph, random_segments


def test_node_indexing():
    assert CNode(3, 1).index(4) == 12
    assert CNode(3, 4).index(4) == 15
    with pytest.raises(ValueError):
        CNode(0, 5).index(4)


def test_product_sizes():
    g = make_product([[1], [0, 2], [1]], 3)
    assert g.size == 9
    # two G edges times 9 slot pairs, plus 3 intra pairs per vertex
    assert g.edge_count() == 2 * 9 + 3 * 3


def test_product_distance_is_hop_distance():
    adj = [[1], [0, 2], [1, 3], [2], []]
    g = make_product(adj, 2, inter=1, intra=0)
    d = bfs_small_weights(g, g.node(0, 2))
    assert d[g.node(3, 1)] == 3
    assert d[g.node(4, 1)] == INF


@pytest.mark.parametrize("seed", range(8))
def test_bucket_bfs_matches_dijkstra(seed):
    rng = random.Random(seed)
    pg = delaunay_graph(rng, rng.randint(2, 40), keep=0.6)
    g = make_product(pg.adj, rng.randint(1, 4), inter=rng.randint(0, 2), intra=rng.randint(0, 2))
    adj = g.adjacency()
    src = rng.randrange(g.size)
    fast = bfs_small_weights(g, src, adj)
    ref = dijkstra(adj, src)
    assert [INF if x == float("inf") else x for x in ref] == fast
    assert multi_source(g.csr(), [src])[0].tolist() == fast


def test_turncost_rejects_bad_degree():
    arr = build_planarization([Segment.from_coords(0, 0, 0, 2, 2), Segment.from_coords(1, 0, 2, 2, 0)])
    bad = PlanarArrangement(arr.vertices, [a + [a[0]] if len(a) == 4 else a for a in arr.adjacency],
                            arr.edge_segment, arr.segment_path, arr.left_vertex)
    with pytest.raises(MalformedArrangement):
        build_turncost(bad)


@pytest.mark.parametrize("seed", range(6))
def test_entry_distances_are_hops(seed):
    rng = random.Random(100 + seed)
    segs = random_segments(rng, rng.randint(2, 40), length=300)
    arr = build_planarization(segs)
    tc = build_turncost(arr)
    ids = sorted(tc.entry)
    D = multi_source(tc.hat.csr(), [tc.entry[s] for s in ids])
    adj = {s.id: set() for s in segs}
    for v in arr.vertices:
        if v.kind == "crossing":
            a, b = v.owners
            adj[a].add(b)
            adj[b].add(a)
    for i, s in enumerate(ids):
        hops = bfs_hops(adj, s)
        for t in ids:
            assert D[i, tc.entry[t]] == hops.get(t, INF)
    assert np.all(D >= 0)
