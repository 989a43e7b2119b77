"""
Walking on the unit sphere
==========================

Exponential and logarithm maps, geodesic distance and parallel transport.
"""

import numpy as np

from spherecgm import (
    exp_map,
    from_coords,
    geodesic_distance,
    log_map,
    make_basis,
    parallel_transport,
    sphere_point,
    to_coords,
)

# start at the north pole and walk a quarter turn along the x direction
p = sphere_point([0, 0, 1])
v = np.array([np.pi / 2, 0.0, 0.0])
q = exp_map(p, v)
print("exp_p(v) =", np.round(q, 12))

# the log map brings us back to the same tangent vector
print("log_p(q) =", np.round(log_map(p, q), 12))
print("distance =", geodesic_distance(p, q), "(pi/2 =", np.pi / 2, ")")

# every tangent plane gets a deterministic right-handed basis, so tangent
# vectors can be handled as plain 2-vectors
basis = make_basis(p)
print("coords of v at p:", to_coords(basis, v))

# transport a tangent vector from p to q: its length is unchanged
u = from_coords(basis, [0.3, 0.4])
moved = parallel_transport(p, q, u)
print("|u| =", np.linalg.norm(u), " |P u| =", np.linalg.norm(moved))
print("P u is tangent at q:", abs(moved @ q) < 1e-15)

# the maps broadcast over leading axes: 5 random round trips at once
rng = np.random.default_rng(0)
pts = rng.standard_normal((5, 3))
pts /= np.linalg.norm(pts, axis=1, keepdims=True)
tang = rng.standard_normal((5, 3))
tang -= np.sum(tang * pts, axis=1, keepdims=True) * pts
err = np.linalg.norm(log_map(pts, exp_map(pts, tang)) - tang, axis=1)
print("round-trip errors:", err)
