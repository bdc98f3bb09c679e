import random
from fractions import Fraction

import numpy as np
import pytest

from seggirth.cluster import make_product
from seggirth.distkit import (
    CoverageGap,
    assemble_submatrix,
    base_case_all_bfs,
    extended_distance,
    multi_distance,
    segment_distances,
)
from seggirth.geom import Segment
from seggirth.minplus import INF, DistMatrix
from seggirth.oracle import segments_touch
from seggirth.params import Params
from seggirth.trace import Trace
from helpers import bfs_hops, delaunay_graph, random_segments

DEEP = Params(dist_n0=8, eps=Fraction(1, 24), debug=True)


def hop_oracle(segs, X):
    adj = {s.id: set() for s in segs}
    for i, s in enumerate(segs):
        for t in segs[i + 1:]:
            if segments_touch(s, t):
                adj[s.id].add(t.id)
                adj[t.id].add(s.id)
    out = []
    for s in X:
        d = bfs_hops(adj, s)
        out.append([d.get(t, INF) for t in X])
    return np.array(out, dtype=np.int64)


def test_assemble_submatrix():
    a = DistMatrix(np.array([[0, 1], [1, 0]]), ["x", "y"], ["x", "y"])
    b = DistMatrix(np.array([[0, 4], [4, 0]]), ["y", "z"], ["y", "z"])
    m = assemble_submatrix(["x", "z"], ["y", "z"], [a, b], default=INF)
    assert m.data.tolist() == [[1, INF], [4, 0]]
    with pytest.raises(CoverageGap):
        assemble_submatrix(["x"], ["z"], [a, b])


def test_chain_distances():
    segs = [Segment.from_coords(i, 10 * i, 0 if i % 2 == 0 else 15, 10 * i + 15, 15 if i % 2 == 0 else 0) for i in range(6)]
    D = segment_distances(segs, [0, 2, 5])
    assert D.data.tolist() == [[0, 2, 5], [2, 0, 3], [5, 3, 0]]


def test_disconnected_gives_inf():
    segs = [Segment.from_coords(0, 0, 0, 1, 0), Segment.from_coords(1, 5, 5, 6, 5)]
    assert segment_distances(segs, [0, 1]).data[0, 1] == INF


@pytest.mark.parametrize("seed", range(12))
def test_recursive_distances_match_bfs(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 90)
    segs = random_segments(rng, n, length=rng.choice([100, 250, 400]))
    X = rng.sample(range(n), rng.randint(2, min(12, n)))
    tr = Trace()
    D = segment_distances(segs, X, DEEP, tr)
    assert np.array_equal(D.data, hop_oracle(segs, X))
    assert D.rows == X


def test_recursion_is_exercised():
    rng = random.Random(77)
    segs = random_segments(rng, 150, length=150)
    tr = Trace()
    X = list(range(0, 150, 11))
    D = segment_distances(segs, X, DEEP, tr)
    assert np.array_equal(D.data, hop_oracle(segs, X))
    s = tr.summary("dist")
    assert s["internal"] >= 1 and s["max_depth"] >= 1


@pytest.mark.parametrize("seed", range(6))
def test_product_graph_distances(seed):
    rng = random.Random(seed)
    g = delaunay_graph(rng, rng.randint(10, 70), keep=0.8)
    hat = make_product(g.adj, 2, inter=rng.randint(0, 2), intra=rng.randint(1, 2))
    X = rng.sample(range(g.n), rng.randint(1, 6))
    B = rng.sample(range(g.n), rng.randint(0, 5))
    prm = Params(dist_n0=6, eps=Fraction(1, 10), debug=True)
    D = multi_distance(hat, g, X, prm)
    labs = [v * 2 + j for v in sorted(X) for j in range(2)]
    assert np.array_equal(D.sub(labs, labs).data, base_case_all_bfs(hat, labs).data)
    E = extended_distance(hat, g, B, X, prm)
    T = sorted(set(B) | set(X))
    labs = [v * 2 + j for v in T for j in range(2)]
    assert np.array_equal(E.sub(labs, labs).data, base_case_all_bfs(hat, labs).data)
