"""Balanced separators for planar graphs: two short paths plus a light level set.

Given vertex weights, vertex loads and a parameter p, :func:`separate` splits
the vertices into V1, V2 and a separator made of at most two tree paths P and
a set Q built from one or two BFS levels.  The construction:

1. BFS tree T from the smallest vertex (root on level 1).
2. Triangulate the embedding combinatorially (chords may be parallel edges).
3. Charge each vertex weight to one incident triangle, then cut the dual
   spanning tree (non-tree edges only) at its most balanced edge uv.
4. C is the fundamental cycle of uv.  If C is short it is the separator;
   otherwise pick light levels below and above the median level and either
   cut at one level or keep the window between them and split it by C.

:func:`verify_separation` re-checks every guarantee from scratch.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arrangement import PlanarGraph, connected_components


class WeightCapError(ValueError):
    pass


@dataclass
class SepInput:
    graph: PlanarGraph
    weight: Sequence
    load: Sequence
    p: int
    eps: Fraction = Fraction(1, 100)


@dataclass
class Separation:
    V1: list[int]
    V2: list[int]
    P: list[list[int]]
    Q: list[int]
    case: str = ""

    def s_vertices(self) -> set[int]:
        return {v for path in self.P for v in path} | set(self.Q)


@dataclass
class VerifyReport:
    failures: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def clauses(self) -> set[str]:
        return {c for c, _ in self.failures}

    def fail(self, clause: str, msg: str):
        self.failures.append((clause, msg))


# ---------------------------------------------------------------- triangulation


@dataclass
class Triangulation:
    """Darts come in pairs: dart d and d ^ 1 are the two sides of one edge."""

    tail: list[int]
    head: list[int]
    n_graph_edges: int  # edges 0..n_graph_edges-1 belong to G, the rest are chords
    face_of: list[int]
    faces: list[tuple[int, int, int]]
    dart_of: dict[tuple[int, int], int]

    def chords(self) -> list[tuple[int, int]]:
        return [(self.tail[2 * e], self.head[2 * e]) for e in range(self.n_graph_edges, len(self.tail) // 2)]


def _darts(adj):
    tail, head = [], []
    dart_of = {}
    for u, nbrs in enumerate(adj):
        for v in nbrs:
            if u < v:
                d = len(tail)
                tail += [u, v]
                head += [v, u]
                dart_of[(u, v)] = d
                dart_of[(v, u)] = d + 1
    rot_next = [0] * len(tail)
    for u, nbrs in enumerate(adj):
        ds = [dart_of[(u, v)] for v in nbrs]
        for k, d in enumerate(ds):
            rot_next[d] = ds[(k + 1) % len(ds)]
    return tail, head, dart_of, rot_next


def _face_walks(tail, rot_next):
    seen = [False] * len(tail)
    walks = []
    for d0 in range(len(tail)):
        if seen[d0]:
            continue
        walk = []
        d = d0
        while not seen[d]:
            seen[d] = True
            walk.append(d)
            d = rot_next[d ^ 1]
        walks.append(walk)
    return walks


def _triangulate_walk(walk, tail, head, faces, face_of):
    k = len(walk)
    if k < 3:
        return
    if k == 3:
        fid = len(faces)
        faces.append(tuple(walk))
        for d in walk:
            face_of[d] = fid
        return
    dart = list(walk)
    nxt = [(i + 1) % k for i in range(k)]
    prv = [(i - 1) % k for i in range(k)]
    alive = [True] * k
    cnt: dict[int, int] = {}
    for d in walk:
        cnt[tail[d]] = cnt.get(tail[d], 0) + 1
    length = k
    preferred = [i for i in range(k) if cnt[tail[dart[i]]] > 1]
    general = list(range(k))
    preferred.reverse()
    general.reverse()

    def valid(i):
        return alive[i] and tail[dart[prv[i]]] != head[dart[i]]

    def pick():
        while preferred:
            i = preferred.pop()
            if valid(i) and cnt[tail[dart[i]]] > 1:
                return i
        while general:
            i = general.pop()
            if valid(i):
                return i
        for i in range(len(dart)):
            if valid(i):
                return i
        raise RuntimeError("face walk cannot be triangulated")

    # zig-zag strip from the start of the walk; ear picking only when stuck
    seam = 0
    flip = False
    while length > 3:
        if seam is not None and valid(seam):
            i = seam
        else:
            i = pick()
        a, b = dart[prv[i]], dart[i]
        x, y, z = tail[a], tail[b], head[b]
        c = len(tail)
        tail += [x, z]
        head += [z, x]
        face_of += [-1, -1]
        fid = len(faces)
        faces.append((a, b, c + 1))
        face_of[a] = face_of[b] = face_of[c + 1] = fid
        node = len(dart)
        dart.append(c)
        alive.append(True)
        pa = prv[i]
        before, after = prv[pa], nxt[i]
        alive[pa] = alive[i] = False
        prv.append(before)
        nxt.append(after)
        nxt[before] = node
        prv[after] = node
        cnt[y] -= 1
        length -= 1
        for cand in (node, after):
            (preferred if cnt[tail[dart[cand]]] > 1 else general).append(cand)
        seam = node if not flip else after
        flip = not flip
    rest = []
    i = next(j for j in range(len(dart)) if alive[j])
    for _ in range(3):
        rest.append(dart[i])
        i = nxt[i]
    fid = len(faces)
    faces.append(tuple(rest))
    for d in rest:
        face_of[d] = fid


def triangulate(graph: PlanarGraph) -> Triangulation:
    """Combinatorial triangulation of a connected embedded graph by ear cutting.

    Every face walk is cut into triangles; chords join the two neighbours of
    the ear vertex and may duplicate existing edges.  No vertices are added.
    """
    tail, head, dart_of, rot_next = _darts(graph.adj)
    n_edges = len(tail) // 2
    face_of = [-1] * len(tail)
    faces: list[tuple[int, int, int]] = []
    for walk in _face_walks(tail, rot_next):
        _triangulate_walk(walk, tail, head, faces, face_of)
    return Triangulation(tail, head, n_edges, face_of, faces, dart_of)


def triangulate_combinatorially(graph: PlanarGraph) -> list[tuple[int, int]]:
    """Chords (non-G edges) that turn every face into a triangle."""
    return triangulate(graph).chords()


# ---------------------------------------------------------------- BFS tree


def bfs_tree(adj, root: int):
    """Parent and level arrays (root on level 1, unreachable vertices on level 0)."""
    n = len(adj)
    parent = [-1] * n
    level = [0] * n
    level[root] = 1
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if level[w] == 0:
                level[w] = level[u] + 1
                parent[w] = u
                queue.append(w)
    return parent, level


def tree_path(parent, level, u: int, v: int) -> tuple[list[int], list[int], int]:
    """Vertices from u up to the LCA x, from v up to (excluding) x, and x itself."""
    up_u, up_v = [u], [v]
    a, b = u, v
    while level[a] > level[b]:
        a = parent[a]
        up_u.append(a)
    while level[b] > level[a]:
        b = parent[b]
        up_v.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        up_u.append(a)
        up_v.append(b)
    up_v.pop()
    return up_u, up_v, a


# ---------------------------------------------------------------- cycle split


def _depths(parent) -> list[int]:
    n = len(parent)
    depth = [-1] * n
    for v in range(n):
        chain = []
        u = v
        while u != -1 and depth[u] < 0:
            chain.append(u)
            u = parent[u]
        d = 0 if u == -1 else depth[u] + 1
        for w in reversed(chain):
            depth[w] = d
            d += 1
    return depth


class _Lca:
    """Binary-lifting lowest common ancestor on a parent array."""

    def __init__(self, parent, depth):
        n = len(parent)
        self.depth = depth
        up = [p if p >= 0 else v for v, p in enumerate(parent)]
        self.up = [up]
        for _ in range(max(1, max(depth, default=0)).bit_length()):
            prev = self.up[-1]
            self.up.append([prev[prev[v]] for v in range(n)])

    def __call__(self, a, b):
        depth, up = self.depth, self.up
        if depth[a] < depth[b]:
            a, b = b, a
        diff = depth[a] - depth[b]
        k = 0
        while diff:
            if diff & 1:
                a = up[k][a]
            diff >>= 1
            k += 1
        if a == b:
            return a
        for k in range(len(up) - 1, -1, -1):
            if up[k][a] != up[k][b]:
                a, b = up[k][a], up[k][b]
        return up[0][a]


@dataclass
class CycleSplit:
    u: int
    v: int
    inside_faces: set[int]
    side: list[bool]  # per vertex: True if its charged face is inside
    inside_weight: object
    outside_weight: object


def fundamental_cycle_split(graph: PlanarGraph, tri: Triangulation, parent, weight) -> CycleSplit:
    """Non-tree edge whose fundamental cycle splits face weight most evenly."""
    adj = graph.adj
    n = len(adj)
    nf = len(tri.faces)
    fw = [0] * nf
    for v in range(n):
        fw[tri.face_of[tri.dart_of[(v, adj[v][0])]]] += weight[v]
    total = sum(fw)
    dual: list[list[tuple[int, int]]] = [[] for _ in range(nf)]
    for e in range(len(tri.tail) // 2):
        a, b = tri.tail[2 * e], tri.head[2 * e]
        if e < tri.n_graph_edges and (parent[a] == b or parent[b] == a):
            continue
        f, g = tri.face_of[2 * e], tri.face_of[2 * e + 1]
        dual[f].append((g, e))
        dual[g].append((f, e))
    root = next((f for f in range(nf) if len(dual[f]) == 1), 0)
    order = [root]
    fparent = [-1] * nf
    pedge = [-1] * nf
    seen = [False] * nf
    seen[root] = True
    for f in order:
        for g, e in dual[f]:
            if not seen[g]:
                seen[g] = True
                fparent[g] = f
                pedge[g] = e
                order.append(g)
    if len(order) != nf:
        raise RuntimeError("dual of the co-tree is not a spanning tree")
    sub = list(fw)
    for f in reversed(order[1:]):
        sub[fparent[f]] += sub[f]
    if len(order) < 2:
        raise RuntimeError("no non-tree edge to split on")
    # any edge with both sides <= 3W/4 is valid; prefer the shortest cycle
    depth = _depths(parent)
    lca = _Lca(parent, depth)

    def cyc_len(f):
        e = pedge[f]
        a, b = tri.tail[2 * e], tri.head[2 * e]
        return depth[a] + depth[b] - 2 * depth[lca(a, b)] + 1

    keys = {f: max(sub[f], total - sub[f]) for f in order[1:]}
    ok = [f for f in order[1:] if 4 * keys[f] <= 3 * total]
    if ok:
        f0 = min(ok, key=lambda f: (cyc_len(f), keys[f], f))
    else:
        f0 = min(order[1:], key=lambda f: (keys[f], f))
    inside = {f0}
    stack = [f0]
    while stack:
        f = stack.pop()
        for g, _ in dual[f]:
            if g != fparent[f] and g not in inside:
                inside.add(g)
                stack.append(g)
    e = pedge[f0]
    u, v = tri.tail[2 * e], tri.head[2 * e]
    side = [tri.face_of[tri.dart_of[(x, adj[x][0])]] in inside for x in range(n)]
    return CycleSplit(u, v, inside, side, sub[f0], total - sub[f0])


# ---------------------------------------------------------------- separator


def _separate_connected(graph: PlanarGraph, weight, load, p: int) -> Separation:
    adj = graph.adj
    n = len(adj)
    if n <= 2:
        path = [0] if n == 1 else [0, 1]
        return Separation([], [], [path], [], "tiny")
    W = sum(weight)
    parent, level = bfs_tree(adj, 0)
    for a in range(n):
        for b in adj[a]:
            assert abs(level[a] - level[b]) <= 1, "BFS levels differ by more than one across an edge"
    tri = triangulate(graph)
    split = fundamental_cycle_split(graph, tri, parent, weight)
    up_u, up_v, x = tree_path(parent, level, split.u, split.v)
    cycle = up_u + up_v[::-1]
    on_c = set(cycle)
    if len(cycle) <= p:
        V1 = [v for v in range(n) if v not in on_c and split.side[v]]
        V2 = [v for v in range(n) if v not in on_c and not split.side[v]]
        return Separation(V1, V2, [cycle], [], "short-cycle")

    top = max(level)
    lw = [0] * (top + 2)
    ll = [0] * (top + 2)
    members: list[list[int]] = [[] for _ in range(top + 2)]
    for v in range(n):
        lw[level[v]] += weight[v]
        ll[level[v]] += load[v]
        members[level[v]].append(v)
    acc = 0
    m = top
    for i in range(1, top + 1):
        acc += lw[i]
        if 2 * acc >= W:
            m = i
            break

    def lload(i):
        return ll[i] if 0 <= i <= top else 0

    lo_range = range(max(0, m - p), m)
    ell = min(lo_range, key=lambda i: (lload(i), i))
    hi_range = range(m + 1, m + p + 1)
    h = min(hi_range, key=lambda i: (lload(i), -i))
    w_le = sum(lw[1:ell + 1])
    w_ge = sum(lw[h:top + 1]) if h <= top else 0

    def at(i):
        return members[i] if 1 <= i <= top else []

    if 4 * w_le >= W:
        V1 = [v for v in range(n) if level[v] < ell]
        V2 = [v for v in range(n) if level[v] > ell]
        return Separation(V1, V2, [], sorted(at(ell)), "level-below")
    if 4 * w_ge >= W:
        V1 = [v for v in range(n) if level[v] > h]
        V2 = [v for v in range(n) if level[v] < h]
        return Separation(V1, V2, [], sorted(at(h)), "level-above")

    def window(path):
        return [v for v in path if ell < level[v] < h]

    paths = [pth for pth in (window(up_u[::-1]), window(up_v[::-1])) if pth]
    in_p = {v for pth in paths for v in pth}
    Q = sorted(at(ell) + at(h))
    inside = [v for v in range(n) if ell < level[v] < h and v not in in_p and split.side[v]]
    outside = [v for v in range(n) if ell < level[v] < h and v not in in_p and not split.side[v]]
    heavy = inside if sum(weight[v] for v in inside) >= sum(weight[v] for v in outside) else outside
    hs = set(heavy) | in_p | set(Q)
    V1 = sorted(heavy)
    V2 = [v for v in range(n) if v not in hs]
    return Separation(V1, V2, paths, Q, "window")


def separate(inp: SepInput) -> Separation:
    """Partition into V1, V2, P (<= 2 paths) and Q; see the module docstring.

    Raises :class:`WeightCapError` if a single vertex is heavier than eps * W
    (or all weights are zero).
    """
    adj = inp.graph.adj
    n = len(adj)
    if inp.p < 1:
        raise ValueError("p must be positive")
    W = sum(inp.weight)
    if n == 0 or W <= 0:
        raise WeightCapError("total weight must be positive")
    wmax = max(inp.weight)
    if wmax > inp.eps * W:
        raise WeightCapError(f"vertex weight {wmax} exceeds {inp.eps} of total {W}")
    count, label = connected_components(adj)
    if count == 1:
        return _separate_connected(inp.graph, inp.weight, inp.load, inp.p)
    comps: list[list[int]] = [[] for _ in range(count)]
    for v in range(n):
        comps[label[v]].append(v)
    cw = [sum(inp.weight[v] for v in comp) for comp in comps]
    if all(2 * w <= W for w in cw):
        bins: list[list[int]] = [[], []]
        bw = [0, 0]
        for ci in sorted(range(count), key=lambda i: (-cw[i], comps[i][0])):
            t = 0 if bw[0] <= bw[1] else 1
            bins[t].extend(comps[ci])
            bw[t] += cw[ci]
        return Separation(sorted(bins[0]), sorted(bins[1]), [], [], "components")
    big = max(range(count), key=lambda i: (cw[i], -i))
    verts = comps[big]
    sub, _ = inp.graph.induced(verts)
    sep = _separate_connected(sub, [inp.weight[v] for v in verts], [inp.load[v] for v in verts], inp.p)
    V1 = [verts[v] for v in sep.V1]
    V2 = [verts[v] for v in sep.V2]
    rest = [v for v in range(n) if label[v] != big]
    if sum(inp.weight[v] for v in V1) <= sum(inp.weight[v] for v in V2):
        V1 += rest
    else:
        V2 += rest
    return Separation(
        sorted(V1), sorted(V2), [[verts[v] for v in pth] for pth in sep.P], sorted(verts[v] for v in sep.Q), sep.case
    )


def verify_separation(inp: SepInput, sep: Separation, path_cap: int | None = None, load_cap=None) -> VerifyReport:
    """Independent check of the separator guarantees.

    Clauses: 'partition', '(a)' balance, '(b)' no V1-V2 edge, '(c)' paths,
    '(d)' load of Q.
    """
    rep = VerifyReport()
    adj = inp.graph.adj
    n = len(adj)
    weight = [Fraction(w) for w in inp.weight]
    load = [Fraction(x) for x in inp.load]
    W = sum(weight)
    Lam = sum(load)
    pv = [v for path in sep.P for v in path]
    parts = [("V1", sep.V1), ("V2", sep.V2), ("P", pv), ("Q", sep.Q)]
    owner: dict[int, str] = {}
    for name, vs in parts:
        for v in vs:
            if not 0 <= v < n:
                rep.fail("partition", f"{name} has unknown vertex {v}")
            elif v in owner:
                rep.fail("partition", f"vertex {v} in both {owner[v]} and {name}")
            else:
                owner[v] = name
    if len(owner) != n and all(0 <= v < n for _, vs in parts for v in vs):
        missing = sorted(set(range(n)) - set(owner))
        rep.fail("partition", f"{len(missing)} vertices unassigned, e.g. {missing[:5]}")
    for name, vs in parts[:2]:
        w = sum(weight[v] for v in vs if 0 <= v < n)
        if 4 * w > 3 * W:
            rep.fail("(a)", f"{name} weight {w} exceeds 3/4 of {W}")
    in1 = set(sep.V1)
    in2 = set(sep.V2)
    for u in in1:
        if 0 <= u < n:
            for w in adj[u]:
                if w in in2:
                    rep.fail("(b)", f"edge {u}-{w} joins V1 and V2")
                    break
    cap = 2 * inp.p + 2 if path_cap is None else path_cap
    if len(sep.P) > 2:
        rep.fail("(c)", f"{len(sep.P)} paths (at most 2 allowed)")
    for k, path in enumerate(sep.P):
        if len(path) > cap:
            rep.fail("(c)", f"path {k} has {len(path)} vertices (cap {cap})")
        if len(set(path)) != len(path):
            rep.fail("(c)", f"path {k} repeats a vertex")
        for a, b in zip(path, path[1:]):
            if not (0 <= a < n) or b not in adj[a]:
                rep.fail("(c)", f"path {k} step {a}-{b} is not an edge")
                break
    ql = sum(load[v] for v in sep.Q if 0 <= v < n)
    qcap = Fraction(2) * Lam / inp.p if load_cap is None else Fraction(load_cap)
    if ql > qcap:
        rep.fail("(d)", f"load(Q) = {ql} exceeds {qcap}")
    return rep
