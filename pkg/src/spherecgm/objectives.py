"""Vector objectives V: Omega -> R^2 and the feasible polygon Omega."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import NonConvexPolygon, TooFewVertices
from .sphere import exp_map, from_coords, log_map, make_basis, sphere_point, to_coords

FD_STEP = 1e-6
POLYGON_TOL = 1e-10


@dataclass(frozen=True)
class SmoothObjective:
    """A smooth map R^2 -> R^2 with Jacobian access.

    ``eval`` must accept a single point ``(2,)`` or a stack ``(..., 2)`` and be
    pure; the verification oracles evaluate it on whole grids at once.
    ``jacobian`` takes a single point and returns the 2x2 matrix whose rows
    are the component gradients.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]
    label: str

    def __call__(self, z):
        return self.eval(z)


def fd_jacobian(fun, z, step: float = FD_STEP) -> np.ndarray:
    """Central finite-difference Jacobian of ``fun`` at ``z``."""
    z = np.asarray(z, dtype=float)
    jac = np.empty((2, 2))
    for j in range(2):
        e = np.zeros(2)
        e[j] = step
        jac[:, j] = (fun(z + e) - fun(z - e)) / (2.0 * step)
    return jac


def linear_objective(A, b) -> SmoothObjective:
    """Affine map ``V(z) = A z + b`` with constant Jacobian ``A``."""
    A = np.array(A, dtype=float).reshape(2, 2)
    b = np.array(b, dtype=float).reshape(2)
    A.setflags(write=False)
    return SmoothObjective(
        eval=lambda z: np.asarray(z, dtype=float) @ A.T + b,
        jacobian=lambda z: A.copy(),
        label="linear",
    )


def logmap_objective(anchor, eval_point) -> SmoothObjective:
    """Sphere-derived objective ``V(z) = -log_y(exp_p(z))`` in tangent coordinates.

    ``z`` is read in the basis at ``p = anchor`` and the result is expressed
    in the basis at ``y = eval_point``. For ``y = p`` this is ``V(z) = -z``.
    The Jacobian uses central differences.
    """
    p = sphere_point(anchor)
    y = sphere_point(eval_point)
    bp, by = make_basis(p), make_basis(y)

    def value(z):
        x = exp_map(p, from_coords(bp, z))
        return -to_coords(by, log_map(y, x))

    return SmoothObjective(eval=value, jacobian=lambda z: fd_jacobian(value, z), label="logmap")


def _square(z):
    z = np.asarray(z, dtype=float)
    return z * z


def _neg_square_first(z):
    z = np.asarray(z, dtype=float)
    return np.stack([-z[..., 0] ** 2, np.zeros_like(z[..., 0])], axis=-1)


BUILTIN_OBJECTIVES = {
    "neg_identity": lambda: linear_objective(-np.eye(2), np.zeros(2)),
    "square": lambda: SmoothObjective(
        eval=_square,
        jacobian=lambda z: np.diag(2.0 * np.asarray(z, dtype=float)),
        label="square",
    ),
    "neg_square_first": lambda: SmoothObjective(
        eval=_neg_square_first,
        jacobian=lambda z: np.array([[-2.0 * z[0], 0.0], [0.0, 0.0]]),
        label="neg_square_first",
    ),
}


def builtin_objective(name: str) -> SmoothObjective:
    """Look up a named objective: ``neg_identity``, ``square`` or ``neg_square_first``."""
    try:
        return BUILTIN_OBJECTIVES[name]()
    except KeyError:
        raise KeyError(f"unknown builtin objective {name!r}") from None


@dataclass(frozen=True)
class FeasiblePolygon:
    """Convex polygon with counter-clockwise ``vertices`` of shape (k, 2)."""

    vertices: np.ndarray
    diameter: float

    @property
    def edges(self):
        return polygon_edges(self)


def polygon_make(vertices) -> FeasiblePolygon:
    """Validate a convex CCW vertex chain and build the polygon."""
    v = np.array(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise ValueError("vertices must be a list of 2-vectors")
    if len(v) < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {len(v)}")
    edge = np.roll(v, -1, axis=0) - v
    area2 = np.sum(v[:, 0] * np.roll(v[:, 1], -1) - np.roll(v[:, 0], -1) * v[:, 1])
    scale = max(1.0, float(np.abs(v).max()))
    if abs(area2) <= 1e-12 * scale**2:
        raise TooFewVertices("vertices are collinear")
    if area2 < 0:
        raise NonConvexPolygon("vertices are ordered clockwise")
    turn = edge[:, 0] * np.roll(edge[:, 1], -1) - edge[:, 1] * np.roll(edge[:, 0], -1)
    if np.any(turn < -1e-12):
        raise NonConvexPolygon("vertex chain turns clockwise somewhere")
    # a self-overlapping chain turns by more than one full revolution
    heading = np.arctan2(edge[:, 1], edge[:, 0])
    total = np.sum(np.mod(np.roll(heading, -1) - heading + np.pi, 2 * np.pi) - np.pi)
    if total > 2 * np.pi + 1e-6:
        raise NonConvexPolygon("vertex chain winds more than once")
    v.setflags(write=False)
    diff = v[:, None, :] - v[None, :, :]
    return FeasiblePolygon(vertices=v, diameter=float(np.sqrt((diff**2).sum(-1)).max()))


def polygon_edges(poly: FeasiblePolygon):
    """Edges ``(a, b)`` in CCW order, the last one closing the chain."""
    v = poly.vertices
    return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]


def polygon_contains(poly: FeasiblePolygon, s, tol: float = POLYGON_TOL):
    """Half-plane membership test, vectorized over leading axes of ``s``."""
    s = np.asarray(s, dtype=float)
    sx, sy = s[..., 0], s[..., 1]
    inside = np.ones(s.shape[:-1], dtype=bool)
    for a, b in polygon_edges(poly):
        e = b - a
        length = np.hypot(e[0], e[1])
        if length == 0.0:
            continue
        inside &= e[0] * (sy - a[1]) - e[1] * (sx - a[0]) >= -tol * length
    return inside.item() if inside.ndim == 0 else inside


def polygon_diameter(poly: FeasiblePolygon) -> float:
    return poly.diameter
