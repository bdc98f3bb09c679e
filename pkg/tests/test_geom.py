import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seggirth.geom import (
    DegenerateSegmentError,
    GeneralPositionError,
    GeometryError,
    OverlapError,
    Segment,
    enumerate_intersections,
    enumerate_intersections_naive,
    format_segments,
    orient,
    parse_segments,
    point,
    seg_intersect,
    validate_general_position,
)
from helpers import random_segments


def S(i, *c):
    return Segment.from_coords(i, *c)


def test_orient_signs():
    assert orient(point(0, 0), point(1, 0), point(2, 0)) == 0
    assert orient(point(0, 0), point(1, 0), point(0, 1)) == 1
    assert orient(point(0, 0), point(0, 1), point(1, 0)) == -1


def test_seg_intersect_cases():
    assert seg_intersect(S(0, 0, 0, 2, 2), S(1, 0, 2, 2, 0)) == point(1, 1)
    assert seg_intersect(S(0, 0, 0, 1, 0), S(1, 0, 1, 1, 1)) is None
    with pytest.raises(OverlapError):
        seg_intersect(S(0, 0, 0, 2, 0), S(1, 1, 0, 3, 0))


def test_degenerate_segment_rejected():
    with pytest.raises(DegenerateSegmentError):
        S(0, 1, 1, 1, 1)


def test_rational_intersection_is_exact():
    s, t = S(0, 0, 0, 3, 1), S(1, 0, 1, 3, 0)
    p = seg_intersect(s, t)
    assert p == point(Fraction(3, 2), Fraction(1, 2))
    assert orient(s.a, s.b, p) == 0 and orient(t.a, t.b, p) == 0


def test_violation_kinds():
    concurrent = [S(0, -1, 0, 1, 0), S(1, 0, -1, 0, 1), S(2, -1, -1, 1, 1)]
    assert "concurrent" in validate_general_position(concurrent).kinds()
    tee = [S(0, 0, 0, 4, 0), S(1, 2, 0, 2, 3)]
    assert "endpoint" in validate_general_position(tee).kinds()
    assert "overlap" in validate_general_position([S(0, 0, 0, 2, 0), S(1, 1, 0, 3, 0)]).kinds()
    assert "duplicate" in validate_general_position([S(0, 0, 0, 2, 1), S(1, 2, 1, 0, 0)]).kinds()
    with pytest.raises(GeneralPositionError):
        enumerate_intersections(tee)


def test_enumeration_small_cases():
    assert len(enumerate_intersections([S(0, 0, 0, 2, 2), S(1, 0, 2, 2, 0)])) == 1
    assert enumerate_intersections([S(i, 0, i, 5, i) for i in range(6)]) == []
    tri = [S(0, 0, 0, 10, 1), S(1, 8, -2, 4, 8), S(2, 2, -2, 6, 8)]
    ev = enumerate_intersections(tri)
    assert {(e.seg_i, e.seg_j) for e in ev} == {(0, 1), (0, 2), (1, 2)}


@pytest.mark.parametrize("seed", range(15))
def test_sweep_matches_all_pairs(seed):
    rng = random.Random(seed)
    segs = random_segments(rng, rng.randint(2, 70), length=rng.choice([50, 200, 600]))
    assert enumerate_intersections(segs) == enumerate_intersections_naive(segs)


@given(st.lists(st.tuples(*[st.integers(-30, 30)] * 4), min_size=1, max_size=12))
def test_events_lie_on_both_segments(coords):
    segs = [S(i, *c) for i, c in enumerate(coords) if c[:2] != c[2:]]
    segs = [Segment(i, s.a, s.b) for i, s in enumerate(segs)]
    if not segs or not validate_general_position(segs).ok:
        return
    for e in enumerate_intersections(segs):
        s, t = segs[e.seg_i], segs[e.seg_j]
        assert e.seg_i < e.seg_j
        assert orient(s.a, s.b, e.p) == 0 and orient(t.a, t.b, e.p) == 0


def test_parse_and_format_roundtrip():
    text = "# header\n0 0 1.5 2\n\n-3 4 5 -0.25\n"
    segs = parse_segments(text)
    assert [s.id for s in segs] == [0, 1]
    assert segs[0].b == point(Fraction(3, 2), 2)
    assert parse_segments(format_segments(segs)) == segs


@pytest.mark.parametrize("bad", ["1 2 3\n", "a b c d\n", "1 1 1 1\n"])
def test_parse_errors(bad):
    with pytest.raises(GeometryError):
        parse_segments(bad)
