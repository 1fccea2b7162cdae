"""Internal functions given by expressions in ``x`` and ``eps``."""

from .expr import Expr, parse_expr
from .graph import (
    ZERO_SET_FN,
    Evaluation,
    Graph,
    ImageReport,
    ModulusReport,
    PLInterpolant,
    ZeroSetReport,
    continuity_modulus,
    domain_bounded,
    eval_at,
    graph_contains,
    image_bounded,
    image_family,
    image_membership,
    image_sup,
    make_graph,
    pl_interpolant,
    zero_set_demo,
)

__all__ = [
    "Evaluation", "Expr", "Graph", "ImageReport", "ModulusReport", "PLInterpolant",
    "ZERO_SET_FN", "ZeroSetReport", "continuity_modulus", "domain_bounded", "eval_at",
    "graph_contains", "image_bounded", "image_family", "image_membership", "image_sup",
    "make_graph", "parse_expr", "pl_interpolant", "zero_set_demo",
]
