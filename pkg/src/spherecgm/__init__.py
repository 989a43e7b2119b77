"""Conditional gradient method for cone-order optimization on the unit sphere."""
from .cones import (
    SectorCone,
    SphereOrder,
    contains,
    make_cone,
    order_leq,
    order_lt,
    oriented_distance,
    orthant,
    sphere_order,
    strict_contains,
    transport_cone,
)
from .exceptions import (
    AntipodalPoints,
    DegenerateCone,
    LineSearchExhausted,
    NonConvexPolygon,
    PointOutsideFeasible,
    TooFewVertices,
)
from .icgm import (
    IterationRecord,
    IterationTrace,
    SolverParams,
    Status,
    armijo_step,
    icgm_run,
    lift_to_sphere,
    psi,
    solve_subproblem,
)
from .objectives import (
    FeasiblePolygon,
    SmoothObjective,
    builtin_objective,
    linear_objective,
    logmap_objective,
    polygon_contains,
    polygon_diameter,
    polygon_edges,
    polygon_make,
)
from .sphere import (
    TangentBasis,
    exp_map,
    from_coords,
    geodesic_distance,
    geodesic_point,
    log_map,
    make_basis,
    parallel_transport,
    sphere_point,
    tangent_vector,
    to_coords,
)

__version__ = "0.1.0"
