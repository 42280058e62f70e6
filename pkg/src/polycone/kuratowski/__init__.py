"""Kuratowski limits of parametric polyhedron families and their diagnostics."""

from .limits import (
    PLUS_INFINITY,
    DIVERGENT,
    AuxiliaryConstraint,
    ConstraintTrajectory,
    CostTrajectory,
    LimitReport,
    OffsetLimit,
    PolyhedronTrajectory,
    auxiliary_limit,
    classify_offset,
    construct_limit,
    detect_ie_pairs,
    trajectory_from_dict,
    trajectory_to_dict,
)
from .convergence import (
    ArgmaxReport,
    BoundaryReport,
    ConeConvergenceReport,
    ConvergenceReport,
    TrackReport,
    VertexTrack,
    WindowDistance,
    argmax_convergence,
    boundary_convergence,
    cone_convergence,
    default_directions,
    default_window,
    track_vertices,
    verify_convergence,
    window_distance,
)

__all__ = [
    "PLUS_INFINITY",
    "DIVERGENT",
    "AuxiliaryConstraint",
    "ConstraintTrajectory",
    "CostTrajectory",
    "LimitReport",
    "OffsetLimit",
    "PolyhedronTrajectory",
    "auxiliary_limit",
    "classify_offset",
    "construct_limit",
    "detect_ie_pairs",
    "trajectory_from_dict",
    "trajectory_to_dict",
    "ArgmaxReport",
    "BoundaryReport",
    "ConeConvergenceReport",
    "ConvergenceReport",
    "TrackReport",
    "VertexTrack",
    "WindowDistance",
    "argmax_convergence",
    "boundary_convergence",
    "cone_convergence",
    "default_directions",
    "default_window",
    "track_vertices",
    "verify_convergence",
    "window_distance",
]
