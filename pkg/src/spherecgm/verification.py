"""Brute-force oracles that certify solver output independently.

Everything here evaluates the oriented distance or the cone order directly
on a sample of the feasible polygon: a square grid of spacing ``h`` clipped
to the polygon, the polygon vertices, and a dyadic subdivision of each edge
with spacing at most ``h``. Tolerances are stated in terms of ``h`` and the
spectral norm of the Jacobian, since the auxiliary function is
``|J|``-Lipschitz.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cones import SectorCone, contains, order_lt, oriented_distance_xy
from .exceptions import PointOutsideFeasible
from .objectives import (
    POLYGON_TOL,
    FeasiblePolygon,
    SmoothObjective,
    fd_jacobian,
    polygon_contains,
    polygon_edges,
)

C_CONVEX_SAMPLES = 10_000
C_CONVEX_SEED = 20240601
C_CONVEX_TOL = 1e-9
_CHUNK = 1 << 18
_BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Square grid of spacing ``h`` anchored at the polygon's lower-left corner."""

    h: float
    lower: np.ndarray
    upper: np.ndarray

    @classmethod
    def for_polygon(cls, poly: FeasiblePolygon, h: float) -> "GridSpec":
        if not h > 0:
            raise ValueError(f"grid spacing must be positive, got {h!r}")
        return cls(h=float(h), lower=poly.vertices.min(axis=0), upper=poly.vertices.max(axis=0))

    @property
    def shape(self):
        n = np.floor((self.upper - self.lower) / self.h).astype(int) + 2
        return int(n[0]), int(n[1])

    def sample_chunks(self, poly: FeasiblePolygon):
        """Yield sample points in a fixed order: grid columns, vertices, edge points.

        Each grid column is clipped to the y-interval allowed by the same
        half-plane tests (and tolerance) as ``polygon_contains``.
        """
        for x, y in self.sample_xy(poly):
            yield np.column_stack([x, y])

    def sample_xy(self, poly: FeasiblePolygon):
        """Same samples as :meth:`sample_chunks`, as separate x and y arrays."""
        nx, ny = self.shape
        xs = self.lower[0] + self.h * np.arange(nx)
        y0 = self.lower[1]
        lo = np.full(nx, -np.inf)
        hi = np.full(nx, np.inf)
        ok = np.ones(nx, dtype=bool)
        for a, b in polygon_edges(poly):
            e = b - a
            length = np.hypot(e[0], e[1])
            if length == 0.0:
                continue
            # e_x (y - a_y) - e_y (x - a_x) >= -tol * length
            rhs = e[1] * (xs - a[0]) - POLYGON_TOL * length
            if e[0] > 0:
                lo = np.maximum(lo, a[1] + rhs / e[0])
            elif e[0] < 0:
                hi = np.minimum(hi, a[1] + rhs / e[0])
            else:
                ok &= rhs <= 0.0
        j_lo = np.maximum(np.ceil((lo - y0) / self.h), 0)
        j_hi = np.minimum(np.floor((hi - y0) / self.h), ny - 1)
        counts = np.where(ok, np.maximum(j_hi - j_lo + 1, 0), 0).astype(np.int64)
        cols = np.flatnonzero(counts)
        start = 0
        while start < len(cols):
            stop = start + 1
            total = counts[cols[start]]
            while stop < len(cols) and total + counts[cols[stop]] <= _CHUNK:
                total += counts[cols[stop]]
                stop += 1
            sel = cols[start:stop]
            n = counts[sel]
            offsets = np.arange(n.sum()) - np.repeat(np.cumsum(n) - n, n)
            gx = np.repeat(xs[sel], n)
            gy = y0 + self.h * (np.repeat(j_lo[sel], n) + offsets)
            yield gx, gy
            start = stop
        yield poly.vertices[:, 0].copy(), poly.vertices[:, 1].copy()
        for a, b in polygon_edges(poly):
            # dyadic subdivision keeps the samples nested when h is halved
            length, m = float(np.linalg.norm(b - a)), 1
            while length / m > self.h:
                m *= 2
            lam = np.arange(1, m)[:, None] / m
            if len(lam):
                pts = a + lam * (b - a)
                yield pts[:, 0].copy(), pts[:, 1].copy()


def _require_feasible(poly, z):
    if not polygon_contains(poly, z):
        raise PointOutsideFeasible(f"z = {np.asarray(z).tolist()} is outside the feasible polygon")


def spectral_norm(jac) -> float:
    return float(np.linalg.norm(jac, 2))


def grid_subproblem_oracle(V: SmoothObjective, cone: SectorCone, poly: FeasiblePolygon, z, h: float):
    """Minimize ``phi_C(JV(z)(s - z))`` over the sample set; returns ``(s_hat, theta_hat)``.

    ``theta_hat`` is an upper bound for the exact subproblem value and
    overshoots it by at most ``|JV(z)| h``. Ties go to the first sample in
    :meth:`GridSpec.sample_xy` order.

    Since ``n1`` and ``n2`` are unit vectors of the dual cone,
    ``phi_C(g) >= max(<n1, g>, <n2, g>)``. The cheap bound is computed
    everywhere and the exact oriented distance only where the bound does not
    exceed the best value seen so far, which leaves the result unchanged.
    """
    z = np.asarray(z, dtype=float)
    _require_feasible(poly, z)
    jac = V.jacobian(z)
    w1, w2 = jac.T @ cone.n1, jac.T @ cone.n2
    best, best_s = np.inf, None
    for x, y in GridSpec.for_polygon(poly, h).sample_xy(poly):
        dx, dy = x - z[0], y - z[1]
        bound = np.maximum(w1[0] * dx + w1[1] * dy, w2[0] * dx + w2[1] * dy)
        i = int(np.argmin(bound))
        cap = min(best, float(_phi_at(cone, jac, dx[i : i + 1], dy[i : i + 1])[0]))
        # the slack absorbs rounding differences between the two formulas
        idx = np.flatnonzero(bound <= cap + _BOUND_SLACK * (1.0 + abs(cap)))
        if len(idx) == 0:
            continue
        vals = _phi_at(cone, jac, dx[idx], dy[idx])
        j = int(np.argmin(vals))
        if vals[j] < best:
            best, best_s = float(vals[j]), np.array([x[idx[j]], y[idx[j]]])
    return best_s, best


def _phi_at(cone, jac, dx, dy):
    return oriented_distance_xy(cone, jac[0, 0] * dx + jac[0, 1] * dy, jac[1, 0] * dx + jac[1, 1] * dy)


def check_stationary(V: SmoothObjective, cone: SectorCone, poly: FeasiblePolygon, z, h: float) -> bool:
    """No sampled ``s`` has ``phi_C(JV(z)(s - z)) < -|JV(z)| h``."""
    _, theta_hat = grid_subproblem_oracle(V, cone, poly, z, h)
    return theta_hat >= -spectral_norm(V.jacobian(np.asarray(z, dtype=float))) * h


def check_weakly_efficient(V: SmoothObjective, cone: SectorCone, poly: FeasiblePolygon, z_bar, h: float) -> bool:
    """No sampled ``s`` has ``V(s) <_C V(z_bar)``."""
    z_bar = np.asarray(z_bar, dtype=float)
    _require_feasible(poly, z_bar)
    v_bar = V(z_bar)
    for pts in GridSpec.for_polygon(poly, h).sample_chunks(poly):
        if np.any(order_lt(cone, V(pts), v_bar)):
            return False
    return True


def sample_polygon(poly: FeasiblePolygon, n: int, rng) -> np.ndarray:
    """``n`` points uniform on the polygon (fan triangulation from vertex 0)."""
    v = poly.vertices
    a, b, c = v[0], v[1:-1], v[2:]
    area = np.abs((b[:, 0] - a[0]) * (c[:, 1] - a[1]) - (b[:, 1] - a[1]) * (c[:, 0] - a[0]))
    tri = rng.choice(len(area), size=n, p=area / area.sum())
    r1, r2 = rng.random(n), rng.random(n)
    flip = r1 + r2 > 1.0
    r1, r2 = np.where(flip, 1.0 - r1, r1), np.where(flip, 1.0 - r2, r2)
    return a + r1[:, None] * (b[tri] - a) + r2[:, None] * (c[tri] - a)


def check_c_convex(
    V: SmoothObjective,
    cone: SectorCone,
    poly: FeasiblePolygon,
    n_samples: int = C_CONVEX_SAMPLES,
    seed: int = C_CONVEX_SEED,
    tol: float = C_CONVEX_TOL,
) -> bool:
    """Sampled falsification test of C-convexity on the polygon.

    Checks ``lam V(a) + (1 - lam) V(b) - V(lam a + (1 - lam) b)`` in C for
    random ``a, b`` in the polygon and ``lam`` in (0, 1). A ``True`` result
    only means no counterexample was found.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rng = np.random.default_rng(seed)
    a = sample_polygon(poly, n_samples, rng)
    b = sample_polygon(poly, n_samples, rng)
    lam = rng.random((n_samples, 1))
    gap = lam * V(a) + (1.0 - lam) * V(b) - V(lam * a + (1.0 - lam) * b)
    return bool(np.all(contains(cone, gap, tol=tol)))


def jacobian_fd_check(V: SmoothObjective, z, step: float = 1e-6, tol: float = 1e-6) -> bool:
    """Compare ``V.jacobian(z)`` with central differences of ``V.eval``."""
    z = np.asarray(z, dtype=float)
    return bool(np.all(np.abs(V.jacobian(z) - fd_jacobian(V.eval, z, step)) <= tol))
