"""Min-plus matrix algebra over nonnegative integers with an infinity sentinel.

Matrices carry their row and column labels so that submatrices can be
picked out by label rather than by position.

The bounded-difference engine is exact.  It never returns an approximation;
it only skips candidate indices that provably cannot be optimal.  Two pruning
schemes are used, depending on where the bounded-difference property holds:

* BD along the outer axis (columns of A are BD, i.e. consecutive rows of A
  differ by at most D entrywise).  Rows are grouped into blocks of s.  For the
  block representative i0 we compute the full row C0 = C[i0, :].  For any row i
  in the block and any optimal k for (i, j):

      A(i0,k) + B(k,j) <= A(i,k) + D(s-1) + B(k,j) = C(i,j) + D(s-1)
                       <= A(i,k*) + B(k*,j) + D(s-1)
                       <= A(i0,k*) + B(k*,j) + 2D(s-1) = C0(j) + 2D(s-1)

  where k* is the representative's optimum.  So only k with
  A(i0,k) + B(k,j) <= C0(j) + 2D(s-1) need to be scanned.

* BD along the inner axis (rows of A are BD along k).  Inner indices are
  grouped into blocks of width s.  Within a block starting at k0,
  A(i,k) >= A(i,k0) - D(s-1), which gives a lower bound per (i, block, j);
  blocks whose bound exceeds the representative upper bound are skipped.

Certificates on B are handled by transposing the product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

INF = 1 << 60

_CHUNK = 1 << 22  # max elements in a broadcast temporary


class DimensionMismatch(ValueError):
    pass


class BdViolation(ValueError):
    pass


@dataclass
class DistMatrix:
    data: np.ndarray
    rows: list
    cols: list

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.int64)
        if self.data.ndim != 2 or self.data.shape != (len(self.rows), len(self.cols)):
            raise DimensionMismatch(f"data shape {self.data.shape} vs labels {len(self.rows)}x{len(self.cols)}")

    @classmethod
    def full(cls, rows, cols, value=INF) -> "DistMatrix":
        return cls(np.full((len(rows), len(cols)), value, dtype=np.int64), list(rows), list(cols))

    @classmethod
    def from_lists(cls, values, rows=None, cols=None) -> "DistMatrix":
        """Build from nested lists; ``None`` or ``math.inf`` entries become INF."""
        vals = [[INF if (v is None or v == math.inf) else int(v) for v in row] for row in values]
        nr = len(vals)
        nc = len(vals[0]) if vals else 0
        arr = np.array(vals, dtype=np.int64).reshape(nr, nc)
        return cls(arr, list(range(nr)) if rows is None else list(rows), list(range(nc)) if cols is None else list(cols))

    @property
    def shape(self):
        return self.data.shape

    def T(self) -> "DistMatrix":
        return DistMatrix(self.data.T.copy(), list(self.cols), list(self.rows))

    def sub(self, rows: Sequence[Hashable], cols: Sequence[Hashable]) -> "DistMatrix":
        ri = self.row_index()
        ci = self.col_index()
        r = np.array([ri[x] for x in rows], dtype=np.intp)
        c = np.array([ci[x] for x in cols], dtype=np.intp)
        return DistMatrix(self.data[np.ix_(r, c)], list(rows), list(cols))

    def row_index(self) -> dict:
        return {x: i for i, x in enumerate(self.rows)}

    def col_index(self) -> dict:
        return {x: i for i, x in enumerate(self.cols)}

    def get(self, r, c):
        v = int(self.data[self.rows.index(r), self.cols.index(c)])
        return math.inf if v >= INF else v

    def to_lists(self):
        return [[math.inf if v >= INF else int(v) for v in row] for row in self.data]

    def __eq__(self, other):
        if not isinstance(other, DistMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and np.array_equal(self.data, other.data)


@dataclass(frozen=True)
class BdCertificate:
    """Claims that matrix ``on`` ('A' or 'B') is bounded-difference along ``axis``.

    ``axis='cols'`` means each column is BD: M[i,j] and M[i+1,j] differ by at most
    ``delta``.  ``axis='rows'`` means each row is BD: M[i,j] and M[i,j+1].
    ``split`` optionally names the first index of a second part; the property is
    not required across that boundary.
    """

    axis: str
    delta: int
    split: int | None = None
    on: str = "A"

    def __post_init__(self):
        if self.axis not in ("rows", "cols") or self.on not in ("A", "B"):
            raise ValueError(f"bad certificate {self}")


@dataclass
class BdCheck:
    ok: bool
    pair: tuple | None = None  # (first index pair along the axis, position across)

    def __bool__(self):
        return self.ok


@dataclass
class EulerOrdering:
    sequence: list  # row labels, duplicates allowed
    back: list[int]  # position -> original row index


@dataclass
class ProductStats:
    """Counters filled in by the engines (optional)."""

    naive: int = 0
    bd: int = 0
    scanned: int = 0
    full: int = 0
    log: list = field(default_factory=list)


def _sat(x: np.ndarray) -> np.ndarray:
    return np.minimum(x, INF, out=x)


def check_bd(M, axis: str, delta: int, split: int | None = None) -> BdCheck:
    """Exact scan for the bounded-difference property.

    (INF, INF) neighbours count as difference 0; (finite, INF) is a violation.
    """
    data = M.data if isinstance(M, DistMatrix) else np.asarray(M, dtype=np.int64)
    if axis == "rows":
        data = data.T
    elif axis != "cols":
        raise ValueError(axis)
    if data.shape[0] < 2:
        return BdCheck(True)
    a, b = data[:-1], data[1:]
    ainf, binf = a >= INF, b >= INF
    bad = (ainf != binf) | (~ainf & ~binf & (np.abs(a - b) > delta))
    if split is not None and 0 < split < data.shape[0]:
        bad[split - 1, :] = False
    if not bad.any():
        return BdCheck(True)
    i, j = np.argwhere(bad)[0]
    return BdCheck(False, ((int(i), int(i) + 1), int(j)))


def _check_conformable(A: DistMatrix, B: DistMatrix):
    if A.cols != B.rows:
        raise DimensionMismatch(f"inner labels differ ({len(A.cols)} vs {len(B.rows)})")


def _naive(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, k = a.shape
    m = b.shape[1]
    out = np.full((n, m), INF, dtype=np.int64)
    if n == 0 or m == 0 or k == 0:
        return out
    step = max(1, _CHUNK // max(1, n * m))
    for k0 in range(0, k, step):
        k1 = min(k, k0 + step)
        t = a[:, k0:k1, None] + b[None, k0:k1, :]
        np.minimum(out, t.min(axis=1), out=out)
    return _sat(out)


def minplus_naive(A: DistMatrix, B: DistMatrix, stats: ProductStats | None = None) -> DistMatrix:
    """(A * B)(i,j) = min_k A(i,k) + B(k,j), with INF absorbing."""
    _check_conformable(A, B)
    if stats is not None:
        stats.naive += 1
    return DistMatrix(_naive(A.data, B.data), list(A.rows), list(B.cols))


def _blocks(length: int, s: int, split: int | None):
    cuts = [0, length]
    if split is not None and 0 < split < length:
        cuts = [0, split, length]
    for lo, hi in zip(cuts, cuts[1:]):
        for b0 in range(lo, hi, s):
            yield b0, min(hi, b0 + s)


def _outer(a: np.ndarray, b: np.ndarray, delta: int, split, s: int, stats) -> np.ndarray:
    # columns of a are BD: block rows, prune inner candidates by the representative
    n = a.shape[0]
    m = b.shape[1]
    out = np.full((n, m), INF, dtype=np.int64)
    for r0, r1 in _blocks(n, s, split):
        rep = a[r0]
        t0 = _sat(rep[:, None] + b)
        c0 = t0.min(axis=0)
        out[r0] = c0
        if r1 - r0 == 1:
            continue
        slack = 2 * delta * (r1 - r0 - 1)
        finite = c0 < INF
        mask = (t0 <= (c0 + slack)[None, :]) & finite[None, :]
        jj, kk = np.nonzero(mask.T)
        if stats is not None:
            stats.scanned += int(jj.size) * (r1 - r0 - 1)
            stats.full += int(b.shape[0]) * m * (r1 - r0 - 1)
        if jj.size == 0:
            continue
        starts = np.flatnonzero(np.r_[True, jj[1:] != jj[:-1]])
        cols = jj[starts]
        bvals = b[kk, jj]
        rest = a[r0 + 1:r1]
        step = max(1, _CHUNK // max(1, jj.size))
        for q0 in range(0, rest.shape[0], step):
            blk = rest[q0:q0 + step]
            vals = blk[:, kk] + bvals[None, :]
            red = np.minimum.reduceat(vals, starts, axis=1)
            out[r0 + 1 + q0:r0 + 1 + q0 + blk.shape[0], cols] = red
    return _sat(out)


def _inner(a: np.ndarray, b: np.ndarray, delta: int, split, s: int, stats) -> np.ndarray:
    # rows of a are BD along k: branch and bound over k-blocks
    n, k = a.shape
    m = b.shape[1]
    if n == 0 or m == 0 or k == 0:
        return np.full((n, m), INF, dtype=np.int64)
    blocks = list(_blocks(k, s, split))
    reps = np.array([lo for lo, _ in blocks], dtype=np.intp)
    widths = np.array([hi - lo for lo, hi in blocks], dtype=np.int64)
    bmin = np.stack([b[lo:hi].min(axis=0) for lo, hi in blocks])  # nb x m
    arep = a[:, reps]  # n x nb
    upper = _naive(arep, b[reps])  # n x m
    out = upper.copy()
    big = INF + 1
    nb = len(blocks)
    step = max(1, _CHUNK // max(1, nb * m))
    for r0 in range(0, n, step):
        r1 = min(n, r0 + step)
        ar = arep[r0:r1, :, None]
        lb = ar - (delta * (widths - 1))[None, :, None] + bmin[None, :, :]
        dead = (ar >= INF) | (bmin[None, :, :] >= INF)
        lb = np.where(dead, big, lb)
        alive = lb <= upper[r0:r1, None, :]
        for bi, (lo, hi) in enumerate(blocks):
            if hi - lo == 1:
                continue  # the representative already covers it
            ii, jj = np.nonzero(alive[:, bi, :])
            if ii.size == 0:
                continue
            if stats is not None:
                stats.scanned += int(ii.size) * (hi - lo)
            ii = ii + r0
            vals = (a[ii, lo:hi] + b[lo:hi, jj].T).min(axis=1)
            np.minimum.at(out, (ii, jj), vals)
        if stats is not None:
            stats.full += (r1 - r0) * k * m
    return _sat(out)


def default_block(length: int) -> int:
    return max(1, math.isqrt(max(0, length - 1)) + 1)


def minplus_bd(
    A: DistMatrix,
    B: DistMatrix,
    cert: BdCertificate,
    block: int | None = None,
    stats: ProductStats | None = None,
    check_closure: bool = True,
) -> DistMatrix:
    """Exact min-plus product that exploits a verified BD certificate.

    Output is bit-identical to :func:`minplus_naive`.  Raises :class:`BdViolation`
    when the certificate does not hold.
    """
    _check_conformable(A, B)
    target = A if cert.on == "A" else B
    res = check_bd(target, cert.axis, cert.delta, cert.split)
    if not res.ok:
        raise BdViolation(f"certificate on {cert.on} ({cert.axis}, delta={cert.delta}) fails at {res.pair}")
    a, b = A.data, B.data
    if cert.on == "A" and cert.axis == "cols":
        s = block or default_block(a.shape[0])
        out = _outer(a, b, cert.delta, cert.split, s, stats)
    elif cert.on == "B" and cert.axis == "rows":
        s = block or default_block(b.shape[1])
        out = _outer(b.T, a.T, cert.delta, cert.split, s, stats).T
    elif cert.on == "A" and cert.axis == "rows":
        s = block or default_block(a.shape[1])
        out = _inner(a, b, cert.delta, cert.split, s, stats)
    else:
        s = block or default_block(b.shape[0])
        out = _inner(b.T, a.T, cert.delta, cert.split, s, stats).T
    out = np.ascontiguousarray(out)
    if stats is not None:
        stats.bd += 1
    C = DistMatrix(out, list(A.rows), list(B.cols))
    if check_closure and (cert.on, cert.axis) in (("A", "cols"), ("B", "rows")):
        closed = check_bd(C, cert.axis, cert.delta, cert.split)
        if not closed.ok:
            raise AssertionError(f"BD closure failed on product output at {closed.pair}")
    return C


def entrywise_min(A: DistMatrix, B: DistMatrix) -> DistMatrix:
    if A.rows != B.rows or A.cols != B.cols:
        raise DimensionMismatch("entrywise_min needs identical labels")
    return DistMatrix(np.minimum(A.data, B.data), list(A.rows), list(A.cols))


def _product(A, B, cert, block, stats):
    if cert is None:
        return minplus_naive(A, B, stats)
    return minplus_bd(A, B, cert, block=block, stats=stats)


def minplus_power(
    A: DistMatrix, k: int, cert: BdCertificate | None = None, block: int | None = None, stats=None
) -> DistMatrix:
    """k-fold min-plus power by repeated squaring.

    A certificate on A's columns carries over to every intermediate product,
    so it is reused for all of them.
    """
    if A.rows != A.cols:
        raise DimensionMismatch("power needs a square matrix with matching labels")
    if k < 1:
        raise ValueError("k must be positive")
    if cert is not None and not (cert.on == "A" and cert.axis == "cols"):
        raise ValueError("power only propagates a column certificate on the left factor")
    result = None
    base = A
    while True:
        if k & 1:
            result = base if result is None else _product(result, base, cert, block, stats)
        k >>= 1
        if not k:
            return result
        base = _product(base, base, cert, block, stats)


def minplus_closure(
    A: DistMatrix, cap: int, cert: BdCertificate | None = None, block: int | None = None, stats=None
) -> DistMatrix:
    """A^cap for a matrix with zero diagonal, stopping early once squaring is stable.

    With a zero diagonal the powers decrease monotonically, so A^(2^t) equals
    A^cap once 2^t >= cap, and a fixed point can be returned immediately.
    """
    if np.any(np.diagonal(A.data) != 0):
        raise ValueError("closure requires a zero diagonal")
    cur = A
    e = 1
    while e < cap:
        nxt = _product(cur, cur, cert, block, stats)
        e *= 2
        if np.array_equal(nxt.data, cur.data):
            return nxt
        cur = nxt
    return cur


def euler_tour(vertices: Sequence[int], adj, root: int | None = None) -> list[int]:
    """DFS Euler tour (vertices repeated on return) of a spanning tree of ``vertices``.

    Raises :class:`NotConnected` if ``vertices`` is not connected using edges
    between members of the set.
    """
    members = set(vertices)
    if not members:
        return []
    root = min(members) if root is None else root
    seen = {root}
    tour = [root]
    stack = [(root, iter(sorted(w for w in adj[root] if w in members)))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if w not in seen:
                seen.add(w)
                tour.append(w)
                stack.append((w, iter(sorted(x for x in adj[w] if x in members))))
                break
        else:
            stack.pop()
            if stack:
                tour.append(stack[-1][0])
    if len(seen) != len(members):
        raise NotConnected(f"{len(members) - len(seen)} vertices unreachable from {root}")
    return tour


class NotConnected(ValueError):
    pass


def euler_reorder(M: DistMatrix, vertices: Sequence[int], adj, c: int, label=None):
    """Reorder (and duplicate) the rows of M along an Euler tour of ``vertices``.

    Row labels of M must include ``label(v, j)`` for every v and j in 0..c-1;
    the default label is ``v * c + j``.
    """
    label = label or (lambda v, j: v * c + j)
    tour = euler_tour(vertices, adj)
    index = M.row_index()
    seq, back = [], []
    for v in tour:
        for j in range(c):
            lab = label(v, j)
            seq.append(lab)
            back.append(index[lab])
    data = M.data[np.array(back, dtype=np.intp)] if back else M.data[:0]
    return DistMatrix(data, seq, list(M.cols)), EulerOrdering(seq, back)
