"""Girth and distances of line-segment intersection graphs."""

from .arrangement import PlanarArrangement, build_planarization
from .distkit import segment_distances
from .geom import GeneralPositionError, GeometryError, Segment, enumerate_intersections, parse_segments
from .girthcore import GirthResult, PromiseViolated, girth, girth_high
from .minplus import INF, DistMatrix, minplus_bd, minplus_naive
from .params import Params
from .separator import Separation, SepInput, separate, verify_separation
from .trace import Trace

__all__ = [
    "INF",
    "DistMatrix",
    "GeneralPositionError",
    "GeometryError",
    "GirthResult",
    "Params",
    "PlanarArrangement",
    "PromiseViolated",
    "Segment",
    "SepInput",
    "Separation",
    "Trace",
    "build_planarization",
    "enumerate_intersections",
    "girth",
    "girth_high",
    "minplus_bd",
    "minplus_naive",
    "parse_segments",
    "segment_distances",
    "separate",
    "verify_separation",
]
