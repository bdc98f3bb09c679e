"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

import io
import json
import math
import random
import re
import time
from contextlib import redirect_stdout
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from seggirth.arrangement import build_planarization
from seggirth.cli import main
from seggirth.cluster import build_turncost, multi_source
from seggirth.distkit import segment_distances
from seggirth.gen import MODELS, generate
from seggirth.geom import format_segments
from seggirth.girthcore import girth, legal_walk_girth
from seggirth.minplus import INF, BdCertificate, DistMatrix, minplus_bd, minplus_naive
from seggirth.oracle import bfs_dist, bfs_girth, naive_intersection_graph
from seggirth.params import Params
from seggirth.separator import SepInput, WeightCapError, separate, verify_separation
from seggirth.trace import STAGES, Trace
from helpers import bd_matrix, delaunay_graph, disjoint_union, grid_graph, random_colored_graph, random_segments


def report(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def oracle_matrix(segs, X):
    g = naive_intersection_graph(segs)
    rows = [bfs_dist(g, s) for s in X]
    return np.array([[INF if r[t] == math.inf else r[t] for t in X] for r in rows], dtype=np.int64)


def test_c1_girth_exactness():
    prm = Params(n0=6, dist_n0=8, eps=Fraction(1, 8))
    rng = random.Random(2024)
    t0 = time.perf_counter()
    mismatches, girths, count = [], set(), 0
    for i in range(1000):
        model = MODELS[i % len(MODELS)]
        k = 3 + (i // len(MODELS)) % 10
        n = rng.randint(max(3, k), 60)
        seed = rng.getrandbits(32)
        segs = generate(model, n, seed, k=k)
        want = bfs_girth(naive_intersection_graph(segs))
        got = girth(segs, prm).girth
        girths.add(want)
        count += 1
        if got != want:
            mismatches.append((model, seed, n, got, want))
    elapsed = time.perf_counter() - t0
    needed = {math.inf, *range(3, 13)}
    ok = not mismatches and needed <= girths and elapsed < 300
    report(1, ok, f"{count} instances, {len(mismatches)} mismatches, girths covered "
                  f"{sorted(needed & girths, key=str)} missing {sorted(needed - girths, key=str)}, {elapsed:.0f}s")
    assert not mismatches, mismatches[:5]
    assert needed <= girths
    assert elapsed < 300


def test_c2_distance_exactness():
    prm = Params(dist_n0=8, eps=Fraction(1, 24))
    rng = random.Random(7)
    t0 = time.perf_counter()
    bad, internal = 0, 0
    for _ in range(300):
        n = rng.randint(5, 200)
        segs = random_segments(rng, n, length=rng.choice([60, 120, 250]), box=1000 + 10 * n)
        X = rng.sample(range(n), rng.randint(2, min(15, n)))
        tr = Trace()
        D = segment_distances(segs, X, prm, tr)
        internal += tr.summary("dist")["internal"]
        if not np.array_equal(D.data, oracle_matrix(segs, X)):
            bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 300
    report(2, ok, f"300 instances, {bad} mismatching matrices, {internal} internal recursion nodes, {elapsed:.0f}s")
    assert bad == 0
    assert elapsed < 300


def test_c3_separator_guarantees():
    rng = random.Random(11)
    done = fails = skipped = 0
    kinds = ("triangulation", "grid", "tree", "union")
    while done < 500:
        kind = kinds[(done + skipped) % 4]
        if kind == "triangulation":
            g = delaunay_graph(rng, rng.randint(20, 200))
        elif kind == "grid":
            g = grid_graph(rng.randint(4, 14), rng.randint(4, 14))
        elif kind == "tree":
            g = delaunay_graph(rng, rng.randint(20, 200), tree=True)
        else:
            g = disjoint_union([delaunay_graph(rng, rng.randint(3, 60), keep=rng.uniform(0.4, 1.0))
                                for _ in range(rng.randint(2, 5))])
        n = g.n
        if rng.random() < 0.5:
            w, ld = [1] * n, [1] * n
        else:
            w = [rng.choice([1, 1, 1, 2, 4]) for _ in range(n)]
            ld = [rng.choice([0, 0, 1, 3, 10]) for _ in range(n)]
        p = rng.choice([2, math.ceil(n ** 0.5), n])
        inp = SepInput(g, w, ld, p, Fraction(1, 6))
        try:
            sep = separate(inp)
        except WeightCapError:
            skipped += 1
            continue
        done += 1
        if not verify_separation(inp, sep).ok:
            fails += 1
    report(3, fails == 0, f"{done} separations verified, {fails} failures, {skipped} weight-cap rejections")
    assert fails == 0


def test_c4_minplus_equivalence():
    rng = np.random.default_rng(4)
    variants = [("A", "cols"), ("A", "rows"), ("B", "rows"), ("B", "cols")]
    bad = 0
    for t in range(200):
        delta = (0, 1, 2, 4)[t % 4]
        on, axis = variants[(t // 4) % 4]
        n, k, m = (int(x) for x in rng.integers(1, 257, 3))
        inf_frac = float(rng.choice([0.0, 0.05, 0.3]))
        if on == "A":
            a = bd_matrix(rng, n, k, delta, axis, inf_frac)
            b = rng.integers(0, 200, (k, m))
            b[rng.random((k, m)) < inf_frac] = INF
        else:
            a = rng.integers(0, 200, (n, k))
            a[rng.random((n, k)) < inf_frac] = INF
            b = bd_matrix(rng, k, m, delta, axis, inf_frac)
        A = DistMatrix(a, list(range(n)), list(range(k)))
        B = DistMatrix(b, list(range(k)), list(range(m)))
        got = minplus_bd(A, B, BdCertificate(axis, delta, None, on), check_closure=False)
        if not np.array_equal(got.data, minplus_naive(A, B).data):
            bad += 1
    # pipeline products assert BD closure on their outputs internally
    prm = Params(n0=6, dist_n0=8, eps=Fraction(1, 8))
    tr = Trace()
    closure_error = None
    try:
        for seed in range(40):
            segs = generate(("uniform-random", "girth-k-planted")[seed % 2], 60, seed, k=5 + seed % 6)
            girth(segs, prm, tr)
    except AssertionError as exc:
        closure_error = str(exc)
    ok = bad == 0 and closure_error is None and tr.stats.bd > 0
    report(4, ok, f"200 random pairs, {bad} differences; {tr.stats.bd} pipeline BD products with closure "
                  f"{'violated: ' + closure_error if closure_error else 'held'}")
    assert bad == 0 and closure_error is None and tr.stats.bd > 0


def test_c5_legal_walks():
    rng = random.Random(5)
    v1 = v2 = conditional = 0
    for _ in range(300):
        g, colors = random_colored_graph(rng)
        adj = {v: g.adj[v] for v in range(g.n)}
        gl = legal_walk_girth(adj, colors)
        gg = bfs_girth(g)
        gr = bfs_girth(g.induced([v for v in range(g.n) if colors[v] in "RW"]))
        gb = bfs_girth(g.induced([v for v in range(g.n) if colors[v] in "BW"]))
        if gl < gg:
            v1 += 1
        if gg != gr and gg != gb:
            conditional += 1
            if min(gl, gr, gb) != gg:
                v2 += 1
    ok = v1 == 0 and v2 == 0
    report(5, ok, f"300 graphs, (i) {v1} violations, (ii) {v2} violations over {conditional} qualifying graphs")
    assert ok


def test_c6_turncost_identity():
    rng = random.Random(6)
    bad = 0
    for _ in range(300):
        n = rng.randint(2, 50)
        segs = random_segments(rng, n, length=rng.choice([100, 250, 400]))
        arr = build_planarization(segs)
        tc = build_turncost(arr)
        D = multi_source(tc.hat.csr(), [tc.entry[s] for s in range(n)])
        got = D[:, [tc.entry[s] for s in range(n)]]
        if not np.array_equal(got, oracle_matrix(segs, list(range(n)))):
            bad += 1
    report(6, bad == 0, f"300 instances, {bad} with a differing pair")
    assert bad == 0


def test_c7_ring_six(tmp_path):
    segs = generate("ring", 12, 0, k=6)
    path = tmp_path / "ring6.txt"
    path.write_text(format_segments(segs))
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["compute", str(path), "--engine", "both"])
    lines = buf.getvalue().splitlines()
    svg = tmp_path / "ring6.svg"
    with redirect_stdout(io.StringIO()):
        main(["render", str(path), "-o", str(svg)])
    text = svg.read_text()
    solid = {int(m) for m in re.findall(r'class="cycle" data-seg="(\d+)"', text)}
    ok = code == 0 and lines[:2] == ["girth=6", "MATCH"] and solid == set(range(6))
    report(7, ok, f"compute says {lines[:2]}, solid segments {sorted(solid)}")
    assert ok


@pytest.mark.slow
def test_c8_sparse_chain_smoke(tmp_path):
    path = tmp_path / "chain.txt"
    path.write_text(format_segments(generate("sparse-chain", 20000, 0)))
    buf = io.StringIO()
    t0 = time.perf_counter()
    with redirect_stdout(buf):
        code = main(["--json", "compute", str(path), "--engine", "fast"])
    elapsed = time.perf_counter() - t0
    doc = json.loads(buf.getvalue())
    tr = doc["trace"]
    g = tr["girth"]
    ok = (
        code == 0
        and elapsed < 600
        and tr["stages_executed"] == list(STAGES)
        and g["max_depth"] >= 2
        and g["internal"] >= 1
        and g["min_bd_per_internal"] >= 1
    )
    report(8, ok, f"n=20000 in {elapsed:.0f}s, girth={doc['girth']}, stages {tr['stages_executed']}, "
                  f"depth {g['max_depth']}, {g['internal']} internal nodes, min BD products per internal node "
                  f"{g['min_bd_per_internal']}")
    assert ok
