"""
The closed-form instance
========================

V(z) = -z on the unit square with the nonnegative quadrant as cone. The
only weakly efficient points are on the top and right edges, and the
solver jumps from the origin to the corner (1, 1) in one step.
"""

from spherecgm import icgm_run, lift_to_sphere, solve_subproblem
from spherecgm.problems import builtin_problem

inst = builtin_problem("linear_square").build()
V, C, P = inst.objective, inst.cone, inst.polygon

s, theta = solve_subproblem(V, C, P, inst.start)
print("subproblem at the origin: s =", s, "theta =", theta)

trace = icgm_run(V, C, P, inst.start, inst.params)
for r in trace.records:
    print(f"k={r.k} z={r.z} theta={r.theta:+.3f} t={r.t} phi={r.phi_value:+.4f}")
print(trace.status.value, "after", trace.iterations, "iteration(s)")

# the answer as a point on the sphere, via the exponential map at the anchor
print("lifted point:", lift_to_sphere(inst.anchor, trace.final_z))
