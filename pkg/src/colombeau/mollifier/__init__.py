"""Compactly supported mollifiers with vanishing moments and the generalized mollifier."""

from .bump import BumpBase, build_base, derivative_poly
from .quadrature import adaptive_simpson, adaptive_simpson_panels, gauss_legendre, sign_changes
from .tree import (
    MOMENT_TOL,
    DiagonalRow,
    DiagonalTable,
    Level,
    MollifierTree,
    MomentRow,
    Tensorized,
    assemble_generalized,
    build_vanishing,
    l1_factor,
    lift_coefficients,
    lift_order,
    moment_report,
    tensorize,
)

__all__ = [
    "BumpBase", "DiagonalRow", "DiagonalTable", "Level", "MOMENT_TOL", "MollifierTree",
    "MomentRow", "Tensorized", "adaptive_simpson", "adaptive_simpson_panels",
    "assemble_generalized", "build_base", "build_vanishing", "derivative_poly",
    "gauss_legendre", "l1_factor", "lift_coefficients", "lift_order", "moment_report",
    "sign_changes", "tensorize",
]
