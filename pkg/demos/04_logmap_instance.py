"""
A sphere-derived objective
==========================

The objective measures where exp_p(z) lands as seen from a second point y,
V(z) = -log_y(exp_p(z)) in tangent coordinates at y. It is not affine, so
the line search has to backtrack.
"""

import numpy as np

from spherecgm import icgm_run, order_lt
from spherecgm.problems import builtin_problem

inst = builtin_problem("logmap_far").build()
V, C, P = inst.objective, inst.cone, inst.polygon
print("cone at the evaluation point:", np.round(C.g1, 4), np.round(C.g2, 4))

trace = icgm_run(V, C, P, inst.start, inst.params)
for r in trace.records:
    print(f"k={r.k:2d} z=({r.z[0]:+.5f}, {r.z[1]:+.5f}) theta={r.theta:+.2e} t={r.t:<6} phi={r.phi_value:+.6f}")
print(trace.status.value, "after", trace.iterations, "iterations")

# each accepted step strictly improves the objective in the cone order
steps = zip(trace.records, trace.records[1:])
print("strict descent at every step:", all(order_lt(C, V(b.z), V(a.z)) for a, b in steps))
