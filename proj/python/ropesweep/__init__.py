"""Python bindings for the ropesweep C++ core."""

from ._core import (
    Knot,
    NumericError,
    ValidationError,
    diagram,
    gauss_code,
    generate,
    length,
    minimize_sweep,
    projected_area_bound,
    ropelength,
    sup_plane_bound,
    swept_area,
    thickness,
    total_curvature,
    vector_area,
)

__all__ = [
    "Knot",
    "NumericError",
    "ValidationError",
    "diagram",
    "gauss_code",
    "generate",
    "length",
    "minimize_sweep",
    "projected_area_bound",
    "ropelength",
    "sup_plane_bound",
    "swept_area",
    "thickness",
    "total_curvature",
    "vector_area",
]
