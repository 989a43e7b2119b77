"""Planar sector cones, their partial orders and the oriented distance.

A :class:`SectorCone` is a closed convex pointed cone in R^2 with nonempty
interior, spanned by two unit generators. Membership is tested through the
facet normals ``n1``, ``n2``, which also generate the dual cone.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateCone
from .sphere import TangentBasis, from_coords, log_map, make_basis, parallel_transport, to_coords

#: Absolute tolerance on normal inner products for membership tests.
MEMBERSHIP_TOL = 1e-12
#: Admissible opening angles are (ANGLE_TOL, pi - ANGLE_TOL).
ANGLE_TOL = 1e-10


@dataclass(frozen=True)
class SectorCone:
    """Sector cone with CCW generators ``g1``, ``g2`` and facet normals.

    ``n1`` is orthogonal to ``g2`` with ``<n1, g1> > 0`` and ``n2`` is
    orthogonal to ``g1`` with ``<n2, g2> > 0``.
    """

    g1: np.ndarray
    g2: np.ndarray
    n1: np.ndarray
    n2: np.ndarray
    opening_angle: float


def _cross2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def make_cone(d1, d2) -> SectorCone:
    """Build the sector cone spanned by ``d1`` and ``d2`` (any order)."""
    d1 = np.asarray(d1, dtype=float).reshape(2)
    d2 = np.asarray(d2, dtype=float).reshape(2)
    l1, l2 = np.linalg.norm(d1), np.linalg.norm(d2)
    if not (np.isfinite(l1) and np.isfinite(l2)) or l1 == 0.0 or l2 == 0.0:
        raise DegenerateCone("cone generators must be finite and nonzero")
    g1, g2 = d1 / l1, d2 / l2
    cross = _cross2(g1, g2)
    angle = float(np.arctan2(abs(cross), g1 @ g2))
    if not ANGLE_TOL < angle < np.pi - ANGLE_TOL:
        raise DegenerateCone(
            f"opening angle {angle!r} outside (0, pi): generators are parallel, "
            "antiparallel or span a half-plane"
        )
    if cross < 0:
        g1, g2 = g2, g1
    # adding 0.0 turns negative zeros into plain zeros
    n1 = np.array([g2[1], -g2[0]]) + 0.0
    n2 = np.array([-g1[1], g1[0]]) + 0.0
    cone = SectorCone(g1=g1, g2=g2, n1=n1, n2=n2, opening_angle=angle)
    _check_representation(cone)
    return cone


def _check_representation(cone: SectorCone, n: int = 1000) -> None:
    # generator form (nonnegative combination) vs. normal form membership
    rng = np.random.default_rng(0)
    c = rng.standard_normal((n, 2))
    ab = np.linalg.solve(np.column_stack([cone.g1, cone.g2]), c.T).T
    h = np.column_stack([c @ cone.n1, c @ cone.n2])
    keep = (np.abs(ab).min(axis=1) > 1e-9) & (np.abs(h).min(axis=1) > 1e-9)
    by_gen = (ab >= 0).all(axis=1)
    by_normal = (h >= 0).all(axis=1)
    if np.any(by_gen[keep] != by_normal[keep]):
        raise DegenerateCone("generator and normal representations disagree")


def orthant() -> SectorCone:
    """The nonnegative quadrant R^2_+."""
    return make_cone([1.0, 0.0], [0.0, 1.0])


def _normals(cone: SectorCone, y):
    y = np.asarray(y, dtype=float)
    y1, y2 = y[..., 0], y[..., 1]
    return y1 * cone.n1[0] + y2 * cone.n1[1], y1 * cone.n2[0] + y2 * cone.n2[1]


def _ret(x):
    return x.item() if np.ndim(x) == 0 else x


def contains(cone: SectorCone, y, tol: float = MEMBERSHIP_TOL):
    """True where ``y`` lies in the closed cone (within ``tol``)."""
    a, b = _normals(cone, y)
    return _ret((a >= -tol) & (b >= -tol))


def strict_contains(cone: SectorCone, y, tol: float = MEMBERSHIP_TOL):
    """True where ``y`` lies in the interior of the cone (margin ``tol``)."""
    a, b = _normals(cone, y)
    return _ret((a > tol) & (b > tol))


def oriented_distance(cone: SectorCone, y):
    """Oriented distance to the negative cone, ``d(y, -C) - d(y, R^2 \\ -C)``.

    Negative on the interior of ``-C``, zero on its boundary and positive
    outside. Computed from the distances to the two boundary rays
    ``{-t g_i : t >= 0}``.
    """
    y = np.asarray(y, dtype=float)
    return _ret(oriented_distance_xy(cone, y[..., 0], y[..., 1]))


def oriented_distance_xy(cone: SectorCone, y1, y2) -> np.ndarray:
    """:func:`oriented_distance` on separate component arrays (no stacking)."""
    d2 = None
    for g in (cone.g1, cone.g2):
        # foot of y on the ray -t g, t >= 0
        t = np.maximum(0.0, -(y1 * g[0] + y2 * g[1]))
        rx = y1 + t * g[0]
        ry = y2 + t * g[1]
        r = rx * rx + ry * ry
        d2 = r if d2 is None else np.minimum(d2, r)
    dist = np.sqrt(d2)
    inside = (y1 * cone.n1[0] + y2 * cone.n1[1] <= MEMBERSHIP_TOL) & (
        y1 * cone.n2[0] + y2 * cone.n2[1] <= MEMBERSHIP_TOL
    )
    return np.where(inside, -dist, dist) + 0.0


def order_leq(cone: SectorCone, a, b):
    """``a <=_C b``, i.e. ``b - a`` in C."""
    return contains(cone, np.asarray(b, dtype=float) - np.asarray(a, dtype=float))


def order_lt(cone: SectorCone, a, b):
    """``a <_C b``, i.e. ``b - a`` in int C."""
    return strict_contains(cone, np.asarray(b, dtype=float) - np.asarray(a, dtype=float))


def transport_cone(cone: SectorCone, basis_p: TangentBasis, basis_y: TangentBasis) -> SectorCone:
    """Parallel-transport a cone given in ``basis_p`` to the plane of ``basis_y``."""
    gens = from_coords(basis_p, np.stack([cone.g1, cone.g2]))
    moved = parallel_transport(basis_p.base, basis_y.base, gens)
    c = to_coords(basis_y, moved)
    return make_cone(c[0], c[1])


class SphereOrder(enum.Enum):
    """Outcome of comparing two sphere points in the transported cone order."""

    LEQ_STRICT = "leq_strict"
    LEQ = "leq"
    NONE = "none"


def sphere_order(p_anchor, cone_p: SectorCone, x, y, basis_p=None, basis_x=None) -> SphereOrder:
    """Classify ``log_x(y)`` against the cone ``cone_p`` transported to ``x``.

    ``cone_p`` is expressed in ``basis_p`` (default ``make_basis(p_anchor)``);
    ``basis_x`` defaults to ``make_basis(x)``. The result does not depend on
    the choice of right-handed basis at ``x``.
    """
    basis_p = make_basis(p_anchor) if basis_p is None else basis_p
    basis_x = make_basis(x) if basis_x is None else basis_x
    cone_x = transport_cone(cone_p, basis_p, basis_x)
    v = to_coords(basis_x, log_map(basis_x.base, y))
    if strict_contains(cone_x, v):
        return SphereOrder.LEQ_STRICT
    if contains(cone_x, v):
        return SphereOrder.LEQ
    return SphereOrder.NONE
