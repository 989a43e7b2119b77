"""Improved conditional gradient method for cone-order problems on a tangent plane.

Each iteration solves the Frank-Wolfe subproblem

    theta(z) = min_{s in Omega} phi_C(JV(z) (s - z))

exactly, moves along ``d = s(z) - z`` with an Armijo step in the cone order,
and stops once ``|theta|`` drops below ``tol_station``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .cones import SectorCone, contains, oriented_distance
from .exceptions import LineSearchExhausted, PointOutsideFeasible
from .objectives import FeasiblePolygon, SmoothObjective, polygon_contains, polygon_edges
from .sphere import exp_map, from_coords, make_basis, sphere_point


@dataclass(frozen=True)
class SolverParams:
    beta: float = 0.5
    delta: float = 0.5
    tol_station: float = 1e-8
    max_iter: int = 500
    armijo_max_pow: int = 60

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta!r}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta!r}")
        if not self.tol_station > 0.0:
            raise ValueError(f"tol_station must be positive, got {self.tol_station!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError(f"max_iter must be a positive integer, got {self.max_iter!r}")
        if int(self.armijo_max_pow) != self.armijo_max_pow or self.armijo_max_pow < 1:
            raise ValueError(
                f"armijo_max_pow must be a positive integer, got {self.armijo_max_pow!r}"
            )


class Status(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    LINE_SEARCH_FAILED = "LineSearchFailed"


@dataclass(frozen=True)
class IterationRecord:
    """State at iteration ``k``; ``t`` is 0 on the terminal record."""

    k: int
    z: np.ndarray
    theta: float
    s: np.ndarray
    direction: np.ndarray
    t: float
    phi_value: float


@dataclass
class IterationTrace:
    records: list = field(default_factory=list)
    status: Status = Status.MAX_ITERATIONS
    final_z: np.ndarray | None = None

    @property
    def iterations(self) -> int:
        """Number of accepted steps."""
        return max(len(self.records) - 1, 0)

    @property
    def final_theta(self) -> float:
        return self.records[-1].theta


def _check_feasible(poly, z):
    if not polygon_contains(poly, z):
        raise PointOutsideFeasible(f"z = {np.asarray(z).tolist()} is outside the feasible polygon")


def psi(V: SmoothObjective, cone: SectorCone, z, s, jac=None) -> float:
    """Auxiliary function ``phi_C(JV(z) (s - z))``."""
    z = np.asarray(z, dtype=float)
    jac = V.jacobian(z) if jac is None else jac
    return oriented_distance(cone, (np.asarray(s, dtype=float) - z) @ jac.T)


def solve_subproblem(V: SmoothObjective, cone: SectorCone, poly: FeasiblePolygon, z, jac=None):
    """Exact minimizer and value of the Frank-Wolfe subproblem at ``z``.

    Minimizes ``L(s) = max(<n1, g(s)>, <n2, g(s)>)`` with ``g(s) = J (s - z)``.
    ``L`` agrees with ``phi_C(g(s))`` wherever it is nonpositive and never
    exceeds it, and ``L(z) = 0``, so both have the same minimum. ``L`` is the
    maximum of two linear functions, so its minimum over the polygon sits at
    a vertex or where an edge crosses the kink line ``<n1 - n2, g(s)> = 0``.
    ``z`` itself is the last candidate, which pins ``theta <= 0``.

    Returns
    -------
    s_opt : ndarray
        First minimizing candidate (vertices, then edge crossings, then z).
    theta : float
    """
    z = np.asarray(z, dtype=float)
    _check_feasible(poly, z)
    jac = V.jacobian(z) if jac is None else np.asarray(jac, dtype=float)
    w1 = jac.T @ cone.n1
    w2 = jac.T @ cone.n2
    kink = w1 - w2

    cands = [v for v in poly.vertices]
    for a, b in polygon_edges(poly):
        fa, fb = kink @ (a - z), kink @ (b - z)
        if fa * fb < 0.0:
            lam = fa / (fa - fb)
            cands.append(a + lam * (b - a))
    cands.append(z)
    cands = np.array(cands)
    rel = cands - z
    values = np.maximum(rel @ w1, rel @ w2)
    i = int(np.argmin(values))
    return cands[i].copy(), float(min(values[i], 0.0))


def armijo_step(V: SmoothObjective, cone: SectorCone, z, d, params: SolverParams, jac=None):
    """Largest ``t = delta**n`` with ``V(z + t d) <=_C V(z) + beta t JV(z) d``.

    Returns ``(t, n)``. Raises :class:`LineSearchExhausted` if no
    ``n <= params.armijo_max_pow`` qualifies.
    """
    z = np.asarray(z, dtype=float)
    d = np.asarray(d, dtype=float)
    jac = V.jacobian(z) if jac is None else jac
    vz = V(z)
    slope = jac @ d
    for n in range(params.armijo_max_pow + 1):
        t = params.delta**n
        if contains(cone, vz + params.beta * t * slope - V(z + t * d)):
            return t, n
    raise LineSearchExhausted(
        f"no Armijo step up to delta**{params.armijo_max_pow} at z = {z.tolist()}"
    )


def icgm_run(
    V: SmoothObjective,
    cone: SectorCone,
    poly: FeasiblePolygon,
    z0,
    params: SolverParams | None = None,
) -> IterationTrace:
    """Run the improved conditional gradient method from ``z0``.

    The trace holds one record per visited iterate, so a run with ``n``
    accepted steps has ``n + 1`` records.
    """
    params = SolverParams() if params is None else params
    z = np.array(z0, dtype=float)
    _check_feasible(poly, z)
    trace = IterationTrace()
    for k in range(params.max_iter + 1):
        jac = V.jacobian(z)
        s, theta = solve_subproblem(V, cone, poly, z, jac=jac)
        d = s - z
        phi = float(oriented_distance(cone, V(z)))

        def record(t):
            trace.records.append(
                IterationRecord(k=k, z=z.copy(), theta=theta, s=s, direction=d, t=t, phi_value=phi)
            )

        if abs(theta) <= params.tol_station:
            record(0.0)
            trace.status = Status.CONVERGED
            break
        if k == params.max_iter:
            record(0.0)
            trace.status = Status.MAX_ITERATIONS
            break
        try:
            t, _ = armijo_step(V, cone, z, d, params, jac=jac)
        except LineSearchExhausted:
            record(0.0)
            trace.status = Status.LINE_SEARCH_FAILED
            break
        record(t)
        z = z + t * d
    trace.final_z = z.copy()
    return trace


def lift_to_sphere(anchor, z) -> np.ndarray:
    """Sphere point ``exp_p(z)`` for tangent coordinates ``z`` at ``p = anchor``."""
    p = sphere_point(anchor)
    return exp_map(p, from_coords(make_basis(p), z))
