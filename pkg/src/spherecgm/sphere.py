"""Closed-form geometry of the unit sphere S^2 in R^3.

Points are unit 3-vectors and tangent vectors are ambient 3-vectors
orthogonal to their base point. Every function broadcasts over leading
axes, so ``p`` may be a single ``(3,)`` point or a stack ``(..., 3)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import AntipodalPoints

#: Below this norm a tangent vector is treated as zero.
ZERO_NORM = 1e-14
#: Points with d(p, q) > pi - ANTIPODAL_TOL are treated as antipodal.
ANTIPODAL_TOL = 1e-8


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def sphere_point(coords) -> np.ndarray:
    """Return ``coords`` renormalized to unit length."""
    x = np.asarray(coords, dtype=float)
    n = np.linalg.norm(x, axis=-1, keepdims=True)
    if np.any(n == 0.0):
        raise ValueError("a sphere point needs a nonzero coordinate vector")
    return x / n


def tangent_vector(base, vec) -> np.ndarray:
    """Project ``vec`` onto the tangent plane at ``base``."""
    p = np.asarray(base, dtype=float)
    v = np.asarray(vec, dtype=float)
    return v - _dot(p, v)[..., None] * p


def geodesic_distance(p, q):
    """Intrinsic distance ``arccos<p, q>`` in [0, pi].

    Evaluated as ``atan2(|p x q|, <p, q>)``, which equals the arccosine of
    the clamped inner product but keeps full precision near 0 and pi.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    c = np.clip(_dot(p, q), -1.0, 1.0)
    s = np.linalg.norm(np.cross(p, q), axis=-1)
    d = np.arctan2(s, c)
    return float(d) if np.ndim(d) == 0 else d


def exp_map(p, v) -> np.ndarray:
    """Exponential map ``cos|v| p + sin|v| v/|v|``; returns ``p`` for v = 0."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    small = n < ZERO_NORM
    safe = np.where(small, 1.0, n)
    x = np.cos(n) * p + np.sin(n) / safe * v
    x = x / np.linalg.norm(x, axis=-1, keepdims=True)
    return np.where(small, p, x)


def log_map(p, q) -> np.ndarray:
    """Inverse of :func:`exp_map` at ``p``.

    Raises
    ------
    AntipodalPoints
        If ``q`` is within ``ANTIPODAL_TOL`` of ``-p``.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    c = np.clip(_dot(p, q), -1.0, 1.0)
    u = q - c[..., None] * p
    u = u - _dot(p, u)[..., None] * p
    s = np.linalg.norm(u, axis=-1)
    theta = np.arctan2(s, c)
    if np.any(theta > np.pi - ANTIPODAL_TOL):
        raise AntipodalPoints("log map undefined for (nearly) antipodal points")
    factor = np.where(s > 0.0, theta / np.where(s > 0.0, s, 1.0), 1.0)
    return factor[..., None] * u


def geodesic_point(p, q, t) -> np.ndarray:
    """Point at fraction ``t`` along the minimal geodesic from ``p`` to ``q``."""
    t = np.asarray(t, dtype=float)
    return exp_map(p, t[..., None] * log_map(p, q))


def parallel_transport(p, q, v) -> np.ndarray:
    """Transport ``v`` in T_pS^2 to T_qS^2 along the minimal geodesic.

    With ``u = log_map(p, q)``, ``d = |u|`` and ``w = u/d`` the transported
    vector is ``v + <w, v> ((cos d - 1) w - sin d p)``.
    """
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    u = log_map(p, q)
    d = np.linalg.norm(u, axis=-1, keepdims=True)
    small = d < ZERO_NORM
    w = u / np.where(small, 1.0, d)
    out = v + _dot(w, v)[..., None] * ((np.cos(d) - 1.0) * w - np.sin(d) * p)
    return np.where(small, v, out)


@dataclass(frozen=True)
class TangentBasis:
    """Right-handed orthonormal frame ``(base, e1, e2)`` of a tangent plane."""

    base: np.ndarray
    e1: np.ndarray
    e2: np.ndarray


def make_basis(p) -> TangentBasis:
    """Deterministic tangent basis at a single point ``p``.

    ``e1`` is the projection of the coordinate axis least aligned with ``p``
    (lowest index on ties); ``e2 = p x e1``.
    """
    p = sphere_point(p)
    if p.shape != (3,):
        raise ValueError("make_basis expects a single point of shape (3,)")
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(p)))] = 1.0
    e1 = axis - (axis @ p) * p
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(p, e1)
    return TangentBasis(base=p, e1=e1, e2=e2)


def rotated_basis(basis: TangentBasis, angle: float) -> TangentBasis:
    """The same tangent plane with its frame rotated by ``angle`` radians."""
    c, s = np.cos(angle), np.sin(angle)
    return TangentBasis(
        base=basis.base,
        e1=c * basis.e1 + s * basis.e2,
        e2=-s * basis.e1 + c * basis.e2,
    )


def to_coords(basis: TangentBasis, v) -> np.ndarray:
    """Coordinates of tangent vector(s) ``v`` in ``basis``."""
    v = np.asarray(v, dtype=float)
    return np.stack([v @ basis.e1, v @ basis.e2], axis=-1)


def from_coords(basis: TangentBasis, c) -> np.ndarray:
    """Ambient tangent vector(s) with coordinates ``c`` in ``basis``."""
    c = np.asarray(c, dtype=float)
    return c[..., 0, None] * basis.e1 + c[..., 1, None] * basis.e2
