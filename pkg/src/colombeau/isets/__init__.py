"""Internal subsets of the d-dimensional generalized space."""

from .grammar import parse_set, parse_shape
from .ops import (
    BoundReport,
    InclusionReport,
    Membership,
    Projection,
    contains,
    directed_distance,
    equality_report,
    family_distance,
    fatten,
    interleave,
    internal_union,
    is_sharply_bounded,
    max_norm,
    min_distance,
    nearest_point,
    product,
    project,
    raw_intersection,
    refined_intersection_contains,
    sharp_ball_larger_member,
    subset_report,
    sup_norm_net,
    trim_bounded,
)
from .shapes import Box, Exterior, InternalSet, Interval, Points, SetFamily, as_family, point_shape

__all__ = [
    "BoundReport", "Box", "Exterior", "InclusionReport", "InternalSet", "Interval",
    "Membership", "Points", "Projection", "SetFamily", "as_family", "contains",
    "directed_distance", "equality_report", "family_distance", "fatten", "interleave",
    "internal_union", "is_sharply_bounded", "max_norm", "min_distance", "nearest_point",
    "parse_set", "parse_shape", "point_shape", "product", "project", "raw_intersection",
    "refined_intersection_contains", "sharp_ball_larger_member", "subset_report",
    "sup_norm_net", "trim_bounded",
]
