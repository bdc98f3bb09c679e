"""Exact multi-source distances in clustered planar graphs by separator recursion.

The recursive problem: for a planar graph G with a clustered graph over it,
a boundary set B and a query set X, compute all distances between the
cluster nodes of B and X.  Each internal node

1. separates G with boundary vertices made heavier (weight 1 + w) and
   loaded (n / |B|), so the separator balances boundary size too;
2. recurses on G[V_i + S] with the separator paths added to the boundary;
3. combines: paths inside one side, paths through the light set Q (via
   Dijkstra from every Q node), and paths that cross the two separator
   paths any number of times (via a min-plus closure on the path nodes).

Node labels are global: slot j of base vertex v is ``v * c + j``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arrangement import PlanarArrangement, PlanarGraph, build_planarization, connected_components
from .cluster import ClusteredGraph, build_turncost, multi_source
from .geom import Segment
from .minplus import (
    INF,
    BdCertificate,
    DistMatrix,
    euler_reorder,
    minplus_bd,
    minplus_closure,
    minplus_naive,
)
from .params import Params
from .separator import SepInput, WeightCapError, separate
from .trace import Trace

RecursionParams = Params


class CoverageGap(KeyError):
    pass


def assemble_submatrix(rows, cols, sources: Sequence[DistMatrix], default=None, debug: bool = False) -> DistMatrix:
    """Pick entries for the requested labels out of several distance matrices.

    Every entry is the minimum over the sources that contain it.  Uncovered
    entries raise :class:`CoverageGap` unless ``default`` is given.  In debug
    mode, overlapping sources must agree exactly.
    """
    rows, cols = list(rows), list(cols)
    out = np.full((len(rows), len(cols)), INF, dtype=np.int64)
    covered = np.zeros(out.shape, dtype=bool)
    for src in sources:
        ri, ci = src.row_index(), src.col_index()
        rsel = [(k, ri[x]) for k, x in enumerate(rows) if x in ri]
        csel = [(k, ci[x]) for k, x in enumerate(cols) if x in ci]
        if not rsel or not csel:
            continue
        rk, rs = (np.array(t, dtype=np.intp) for t in zip(*rsel))
        ck, cs = (np.array(t, dtype=np.intp) for t in zip(*csel))
        vals = src.data[np.ix_(rs, cs)]
        block = np.ix_(rk, ck)
        if debug:
            prev = out[block]
            both = covered[block]
            if np.any(prev[both] != vals[both]):
                raise AssertionError("inconsistent overlapping sources")
        out[block] = np.minimum(out[block], vals)
        covered[block] = True
    if not covered.all():
        if default is None:
            k = np.argwhere(~covered)[0]
            raise CoverageGap(f"no source covers ({rows[k[0]]}, {cols[k[1]]})")
        out[~covered] = default
    return DistMatrix(out, rows, cols)


def base_case_all_bfs(hat: ClusteredGraph, labels: Sequence[int]) -> DistMatrix:
    """Dijkstra rows from every requested node, restricted to the same labels."""
    labels = list(labels)
    if not labels:
        return DistMatrix(np.zeros((0, 0), dtype=np.int64), [], [])
    d = multi_source(hat.csr(), labels)
    return DistMatrix(d[:, np.array(labels, dtype=np.intp)], labels, labels)


class DistanceEngine:
    """Runs the recursion over one clustered graph."""

    def __init__(self, graph: PlanarGraph, hat: ClusteredGraph, params: Params | None = None, trace: Trace | None = None):
        if hat.n != graph.n:
            raise ValueError("clustered graph does not match the base graph")
        self.g = graph
        self.hat = hat
        self.c = hat.c
        self.params = params or Params()
        self.trace = trace if trace is not None else Trace()
        self.csr = hat.csr()

    # labels ------------------------------------------------------------
    def labels(self, verts: Iterable[int]) -> list[int]:
        c = self.c
        return [v * c + j for v in verts for j in range(c)]

    def _sub(self, verts: Sequence[int]):
        idx = np.array(self.labels(verts), dtype=np.intp)
        return self.csr[idx][:, idx], idx

    def _bfs(self, verts, sources: Sequence[int], targets: Sequence[int]) -> DistMatrix:
        """Rows for ``sources`` over ``targets`` (global labels) inside G[verts] x K_c."""
        m, idx = self._sub(verts)
        pos = {int(x): k for k, x in enumerate(idx)}
        d = multi_source(m, [pos[s] for s in sources])
        cols = np.array([pos[t] for t in targets], dtype=np.intp)
        return DistMatrix(d[:, cols] if len(sources) else np.zeros((0, len(targets)), np.int64), list(sources), list(targets))

    def _base(self, verts, T) -> DistMatrix:
        labs = self.labels(T)
        return self._bfs(verts, labs, labs)

    def _product(self, A, B, cert):
        with self.trace.stage("minplus"):
            return minplus_bd(A, B, cert, block=self.params.block, stats=self.trace.stats)

    # public ------------------------------------------------------------
    def multi_distance(self, X: Iterable[int]) -> DistMatrix:
        with self.trace.stage("distances"):
            return self.extended(list(range(self.g.n)), set(), set(X))

    def extended(self, verts: Sequence[int], B: set[int], X: set[int], depth: int = 0) -> DistMatrix:
        verts = sorted(verts)
        T = sorted(B | X)
        n = len(verts)
        prm = self.params
        info = self.trace.add(kind="dist", depth=depth, n=n, beta=len(B), x=len(X), internal=False, bd=0)
        if n <= prm.dist_n0 or 2 * len(T) >= n:
            info["case"] = "base"
            return self._base(verts, T)
        sub, local = self.g.induced(verts)
        w = prm.w_dist(n)
        beta = len(B)
        weight = [1 + w if v in B else 1 for v in verts]
        load = [Fraction(n, beta) if v in B else 1 for v in verts]
        p = prm.p_dist(n)
        try:
            with self.trace.stage("separate"):
                sep = separate(SepInput(sub, weight, load, p, prm.eps))
        except WeightCapError:
            info["case"] = "weight-cap"
            return self._base(verts, T)
        V = [{verts[v] for v in sep.V1}, {verts[v] for v in sep.V2}]
        paths = [[verts[v] for v in pth] for pth in sep.P]
        Pset = {v for pth in paths for v in pth}
        Q = {verts[v] for v in sep.Q}
        S = Pset | Q
        sides = [sorted(Vi | S) for Vi in V]
        if max(len(s) for s in sides) >= n:
            info["case"] = "no-progress"
            return self._base(verts, T)
        info.update(internal=True, case=sep.case, p=p, P=len(Pset), Q=len(Q))

        Bs = [(Vi & B) | Pset | (Q & B) for Vi in V]
        Xs = [Vi & X for Vi in V]
        gamma = self._components(B)
        gam = [self._components(Bi) for Bi in Bs]
        info["gamma"] = (gamma, gam[0], gam[1])
        assert gam[0] + gam[1] <= gamma + 4 + 2 * len(Q & B), "boundary component bound violated"
        assert len(sides[0]) + len(sides[1]) <= n + 4 * p + 4 + len(Q)
        assert len(Xs[0]) + len(Xs[1]) <= len(X)

        D = [self.extended(sides[i], Bs[i], Xs[i], depth + 1) for i in range(2)]
        bd_before = self.trace.stats.bd
        result = self._combine(verts, T, B, X, V, sides, paths, Q, D)
        info["bd"] = self.trace.stats.bd - bd_before
        if prm.debug:
            ref = self._base(verts, T)
            if not np.array_equal(ref.data, result.data):
                raise AssertionError(f"recursive distances disagree with BFS at depth {depth}")
        return result

    def _components(self, Bset: set[int]) -> int:
        if not Bset:
            return 0
        verts = sorted(Bset)
        sub, _ = self.g.induced(verts)
        return connected_components(sub.adj)[0]

    # step 3 ------------------------------------------------------------
    def _combine(self, verts, T, B, X, V, sides, paths, Q, D) -> DistMatrix:
        c = self.c
        prm = self.params
        TL = self.labels(T)
        QL = self.labels(sorted(Q))
        PL = self.labels([v for pth in paths for v in pth])
        split = c * len(paths[0]) if len(paths) == 2 else None
        dbg = prm.debug
        side_sets = [set(s) for s in sides]

        with self.trace.stage("distances"):
            dQ = self._bfs(verts, QL, TL) if QL else None
            dQi = []
            TLi = []
            for i in range(2):
                ti = [v * c + j for v in T if v in side_sets[i] for j in range(c)]
                TLi.append(ti)
                targets = list(dict.fromkeys(ti + PL))
                dQi.append(self._bfs(sides[i], QL, targets) if QL else None)

        with self.trace.stage("combine"):
            # (0) shortest paths that stay on one side
            out = np.full((len(TL), len(TL)), INF, dtype=np.int64)
            tpos = {x: k for k, x in enumerate(TL)}
            for i in range(2):
                srcs = [D[i]] + ([dQi[i], dQi[i].T()] if QL else [])
                e0 = assemble_submatrix(TLi[i], TLi[i], srcs, debug=dbg)
                k = np.array([tpos[x] for x in TLi[i]], dtype=np.intp)
                blk = np.ix_(k, k)
                out[blk] = np.minimum(out[blk], e0.data)

        # (1) paths through Q
        if QL:
            e1 = self._through_q(T, B, X, dQ, QL, TL)
            np.minimum(out, e1, out=out)

        # (2) paths that only meet the separator on P
        if PL:
            Lm = None
            for i in range(2):
                srcs = [D[i]] + ([dQi[i]] if QL else [])
                part = assemble_submatrix(TLi[i], PL, srcs, debug=dbg)
                full = np.full((len(TL), len(PL)), INF, dtype=np.int64)
                full[np.array([tpos[x] for x in TLi[i]], dtype=np.intp)] = part.data
                Lm = full if Lm is None else np.minimum(Lm, full)
            Lmat = DistMatrix(Lm, TL, PL)
            d1 = D[0].sub(PL, PL)
            d2 = D[1].sub(PL, PL)
            cols = BdCertificate("cols", prm.delta_max, split, "A")
            M = self._product(d1, d2, cols)
            with self.trace.stage("minplus"):
                Mk = minplus_closure(M, len(PL), cols, block=prm.block, stats=self.trace.stats)
            Y = self._product(Mk, Lmat.T(), cols)
            E2 = self._product(Lmat, Y, BdCertificate("rows", prm.delta_max, split, "A"))
            np.minimum(out, E2.data, out=out)
        return DistMatrix(out, TL, TL)

    def _through_q(self, T, B, X, dQ: DistMatrix, QL, TL) -> np.ndarray:
        c = self.c
        prm = self.params
        tq = dQ.T()  # T x Q
        out = np.full((len(TL), len(TL)), INF, dtype=np.int64)
        tpos = {x: k for k, x in enumerate(TL)}
        Bsorted = sorted(B)
        if Bsorted:
            sub, _ = self.g.induced(Bsorted)
            ncomp, lab = connected_components(sub.adj)
            comps: list[list[int]] = [[] for _ in range(ncomp)]
            for k, v in enumerate(Bsorted):
                comps[lab[k]].append(v)
            cert = BdCertificate("cols", prm.delta_max, None, "A")
            for comp in comps:
                rows = self.labels(comp)
                Mc = tq.sub(rows, QL)
                R, order = euler_reorder(Mc, comp, self.g.adj, c)
                prod = self._product(R, dQ, cert)
                first = {}
                for k, lab_ in enumerate(order.sequence):
                    first.setdefault(lab_, k)
                ridx = np.array([tpos[x] for x in rows], dtype=np.intp)
                out[ridx] = prod.data[np.array([first[x] for x in rows], dtype=np.intp)]
        xonly = [v for v in sorted(X) if v not in B]
        if xonly:
            XL = self.labels(xonly)
            xi = np.array([tpos[x] for x in XL], dtype=np.intp)
            with self.trace.stage("minplus"):
                xx = minplus_naive(tq.sub(XL, QL), dQ.sub(QL, XL), self.trace.stats)
            out[np.ix_(xi, xi)] = xx.data
            if Bsorted:
                BL = self.labels(Bsorted)
                bi = np.array([tpos[x] for x in BL], dtype=np.intp)
                out[np.ix_(xi, bi)] = out[np.ix_(bi, xi)].T
        if prm.debug:
            ref = minplus_naive(tq, dQ)
            if not np.array_equal(ref.data, out):
                raise AssertionError("Q-product assembly disagrees with the naive product")
        return out


def multi_distance(hat: ClusteredGraph, graph: PlanarGraph, X: Iterable[int], params: Params | None = None, trace=None) -> DistMatrix:
    """All distances between the cluster nodes of X in ``hat``."""
    return DistanceEngine(graph, hat, params, trace).multi_distance(X)


def extended_distance(
    hat: ClusteredGraph, graph: PlanarGraph, B: Iterable[int], X: Iterable[int], params: Params | None = None, trace=None
) -> DistMatrix:
    eng = DistanceEngine(graph, hat, params, trace)
    return eng.extended(list(range(graph.n)), set(B), set(X))


def arrangement_distances(
    arr: PlanarArrangement, X: Sequence[int], params: Params | None = None, trace: Trace | None = None
) -> DistMatrix:
    """Hop distances between the segments X of an arrangement (labels = segment ids)."""
    X = list(X)
    trace = trace if trace is not None else Trace()
    tc = build_turncost(arr)
    eng = DistanceEngine(arr.graph(), tc.hat, params, trace)
    us = [arr.left_vertex[s] for s in X]
    full = eng.multi_distance(us)
    ent = [tc.entry[s] for s in X]
    return DistMatrix(full.sub(ent, ent).data, X, X)


def segment_distances(
    segments: Sequence[Segment], X: Sequence[int], params: Params | None = None, trace: Trace | None = None
) -> DistMatrix:
    """delta_G[X, X] for the intersection graph G of ``segments``."""
    trace = trace if trace is not None else Trace()
    with trace.stage("planarize"):
        arr = build_planarization(segments)
    return arrangement_distances(arr, X, params, trace)
