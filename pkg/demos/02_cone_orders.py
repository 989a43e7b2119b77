"""
Cone orders and the oriented distance
=====================================

A sector cone orders the plane; the oriented distance turns cone
comparisons into a single real number.
"""

import numpy as np

from spherecgm import SphereOrder, contains, exp_map, from_coords, make_basis, make_cone
from spherecgm import order_leq, order_lt, oriented_distance, orthant, sphere_order, transport_cone

C = orthant()
print("generators", C.g1, C.g2, "normals", C.n1, C.n2)

# order predicates: a <=_C b means b - a lies in C
print(order_leq(C, [0, 0], [1, 2]), order_lt(C, [0, 0], [1, 2]))  # True True
print(order_leq(C, [0, 0], [1, -1]))  # incomparable, False

# phi_C is negative inside -C, zero on its boundary and positive outside
for y in ([-1, -1], [0, 0], [1, 1], [1, -2]):
    print("phi", y, "=", oriented_distance(C, y))

# a narrower cone, 30 degrees wide
narrow = make_cone([1, 0], [np.cos(np.pi / 6), np.sin(np.pi / 6)])
print("opening angle", narrow.opening_angle)
print("(1, 1) in narrow cone:", contains(narrow, [1, 1]))

# on the sphere, x <= y when log_x(y) lies in the cone carried over to x by
# parallel transport along the geodesic from the anchor
p = np.array([0.0, 0.0, 1.0])
x = exp_map(p, from_coords(make_basis(p), [0.4, -0.2]))
C_x = transport_cone(C, make_basis(p), make_basis(x))
w = 0.2 * (C_x.g1 + C_x.g2)  # a direction inside the transported cone
y_up = exp_map(x, from_coords(make_basis(x), w))
y_down = exp_map(x, from_coords(make_basis(x), -w))
print(sphere_order(p, C, x, y_up))
print(sphere_order(p, C, x, y_down))
print(sphere_order(p, C, x, x) is SphereOrder.LEQ)
