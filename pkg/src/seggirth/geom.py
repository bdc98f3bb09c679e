"""Exact planar primitives over rational coordinates.

All predicates work on :class:`fractions.Fraction` coordinates, so every
orientation test and intersection point is exact.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple

Coord = Fraction


class GeometryError(ValueError):
    pass


class DegenerateSegmentError(GeometryError):
    pass


class OverlapError(GeometryError):
    """Two segments share more than one point."""


class GeneralPositionError(GeometryError):
    def __init__(self, report: "PositionReport"):
        self.report = report
        super().__init__(report.summary())


class Point(NamedTuple):
    x: Fraction
    y: Fraction


def point(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class Segment:
    id: int
    a: Point
    b: Point

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise DegenerateSegmentError(f"segment {self.id} has identical endpoints")

    @classmethod
    def from_coords(cls, id: int, x1, y1, x2, y2) -> "Segment":
        return cls(id, point(x1, y1), point(x2, y2))

    @property
    def left(self) -> Point:
        """Lexicographically smaller endpoint (x first, then y)."""
        return min(self.a, self.b)


@dataclass(frozen=True)
class IntersectionEvent:
    seg_i: int
    seg_j: int
    p: Point


@dataclass(frozen=True)
class Violation:
    kind: str  # "concurrent" | "overlap" | "endpoint" | "duplicate"
    segments: tuple[int, ...]
    point: Point | None = None

    def describe(self) -> str:
        where = "" if self.point is None else f" at ({self.point.x}, {self.point.y})"
        segs = ",".join(map(str, self.segments))
        return f"{self.kind}: segments {segs}{where}"


@dataclass
class PositionReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def summary(self) -> str:
        if self.ok:
            return "general position: ok"
        lines = [f"general position violated ({len(self.violations)} issues)"]
        lines += ["  " + v.describe() for v in self.violations[:20]]
        return "\n".join(lines)


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the cross product (q - p) x (r - p)."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (d > 0) - (d < 0)


def seg_intersect(s: Segment, t: Segment) -> Point | None:
    """Unique common point of two closed segments, or ``None`` if disjoint.

    Raises :class:`OverlapError` when the segments overlap collinearly in more
    than one point.
    """
    a, b, c, d = s.a, s.b, t.a, t.b
    o1, o2 = orient(a, b, c), orient(a, b, d)
    if o1 == 0 and o2 == 0:
        s_lo, s_hi = sorted((a, b))
        t_lo, t_hi = sorted((c, d))
        lo, hi = max(s_lo, t_lo), min(s_hi, t_hi)
        if lo > hi:
            return None
        if lo == hi:
            return lo
        raise OverlapError(f"segments {s.id} and {t.id} overlap")
    if o1 * o2 > 0:
        return None
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o3 * o4 > 0:
        return None
    ex, ey = b.x - a.x, b.y - a.y
    fx, fy = d.x - c.x, d.y - c.y
    denom = ex * fy - ey * fx
    lam = ((c.x - a.x) * fy - (c.y - a.y) * fx) / denom
    return Point(a.x + lam * ex, a.y + lam * ey)


def param_along(s: Segment, p: Point) -> Fraction:
    """Affine parameter of ``p`` on ``s`` (0 at ``s.a``, 1 at ``s.b``)."""
    dx = s.b.x - s.a.x
    if dx != 0:
        return (p.x - s.a.x) / dx
    return (p.y - s.a.y) / (s.b.y - s.a.y)


def _candidate_pairs(segs: list[Segment]) -> Iterator[tuple[Segment, Segment]]:
    # Sort-and-sweep on x-extents, then a y-extent filter.
    boxes = []
    for s in segs:
        x0, x1 = sorted((s.a.x, s.b.x))
        y0, y1 = sorted((s.a.y, s.b.y))
        boxes.append((x0, x1, y0, y1, s))
    boxes.sort(key=lambda bx: (bx[0], bx[4].id))
    active: list[tuple] = []
    for box in boxes:
        x0, _, y0, y1, s = box
        active = [o for o in active if o[1] >= x0]
        for o in active:
            if o[2] <= y1 and y0 <= o[3]:
                yield (o[4], s) if o[4].id < s.id else (s, o[4])
        active.append(box)


def _scan(segs: list[Segment]) -> tuple[list[IntersectionEvent], PositionReport]:
    events: list[IntersectionEvent] = []
    report = PositionReport()
    at_point: dict[Point, set[int]] = defaultdict(set)
    for s, t in _candidate_pairs(segs):
        if {s.a, s.b} == {t.a, t.b}:
            report.violations.append(Violation("duplicate", (s.id, t.id)))
            continue
        try:
            p = seg_intersect(s, t)
        except OverlapError:
            report.violations.append(Violation("overlap", (s.id, t.id)))
            continue
        if p is None:
            continue
        if p in (s.a, s.b, t.a, t.b):
            report.violations.append(Violation("endpoint", (s.id, t.id), p))
            continue
        at_point[p].update((s.id, t.id))
        events.append(IntersectionEvent(s.id, t.id, p))
    for p in sorted(at_point):
        if len(at_point[p]) >= 3:
            report.violations.append(Violation("concurrent", tuple(sorted(at_point[p])), p))
    report.violations.sort(key=lambda v: (v.kind, v.segments))
    return events, report


def _sorted_events(segs: list[Segment], events: list[IntersectionEvent]) -> list[IntersectionEvent]:
    by_id = {s.id: s for s in segs}
    return sorted(events, key=lambda e: (e.seg_i, param_along(by_id[e.seg_i], e.p), e.seg_j))


def validate_general_position(segments: Iterable[Segment]) -> PositionReport:
    """Report triple points, collinear overlaps, endpoint contacts and duplicates."""
    return _scan(list(segments))[1]


def enumerate_intersections(segments: Iterable[Segment]) -> list[IntersectionEvent]:
    """All pairwise crossing points, sorted by (seg_i, position along seg_i).

    Raises :class:`GeneralPositionError` if the input is degenerate.
    """
    segs = list(segments)
    events, report = _scan(segs)
    if not report.ok:
        raise GeneralPositionError(report)
    return _sorted_events(segs, events)


def enumerate_intersections_naive(segments: Iterable[Segment]) -> list[IntersectionEvent]:
    """All-pairs reference enumeration (no general-position checks)."""
    segs = sorted(segments, key=lambda s: s.id)
    events = []
    for i, s in enumerate(segs):
        for t in segs[i + 1:]:
            p = seg_intersect(s, t)
            if p is not None:
                events.append(IntersectionEvent(s.id, t.id, p))
    return _sorted_events(segs, events)


def parse_segments(text: str) -> list[Segment]:
    """Parse ``x1 y1 x2 y2`` lines; ``#`` lines and blank lines are skipped."""
    segs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise GeometryError(f"line {lineno}: expected 4 numbers, got {len(parts)}")
        try:
            coords = [Fraction(tok) for tok in parts]
        except (ValueError, ZeroDivisionError) as exc:
            raise GeometryError(f"line {lineno}: {exc}") from None
        try:
            segs.append(Segment.from_coords(len(segs), *coords))
        except DegenerateSegmentError:
            raise GeometryError(f"line {lineno}: degenerate segment") from None
    return segs


def _fmt(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def format_coord(v: Fraction) -> str:
    return _fmt(v)


def format_segments(segments: Iterable[Segment], header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    for s in segments:
        # decimal tokens only; rational endpoints are written as exact decimals when possible
        lines.append(" ".join(_decimal(v) for v in (s.a.x, s.a.y, s.b.x, s.b.y)))
    return "\n".join(lines) + "\n"


def _decimal(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    d = v.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        raise GeometryError(f"coordinate {v} has no finite decimal form")
    k = max(twos, fives)
    scaled = v * 10**k
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(k + 1, "0")
    return f"{sign}{digits[:-k]}.{digits[-k:]}"
