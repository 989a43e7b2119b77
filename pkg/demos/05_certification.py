"""
Certifying a solution by brute force
====================================

The grid oracles check the solver's claims without using its subproblem
formula: stationarity, weak efficiency and a sampled convexity test.
"""

import numpy as np

from spherecgm import icgm_run, solve_subproblem
from spherecgm.problems import builtin_problem, random_problem
from spherecgm.verification import (
    check_c_convex,
    check_stationary,
    check_weakly_efficient,
    grid_subproblem_oracle,
    spectral_norm,
)

inst = builtin_problem("rotated_cone_triangle").build()
V, C, P = inst.objective, inst.cone, inst.polygon
z = inst.start

# the exact subproblem value is sandwiched by the grid value
_, theta = solve_subproblem(V, C, P, z)
for h in (1e-1, 1e-2, 1e-3):
    _, theta_hat = grid_subproblem_oracle(V, C, P, z, h)
    print(f"h={h:g}: theta={theta:.6f} grid={theta_hat:.6f} bound={spectral_norm(V.jacobian(z)) * h:.2e}")

trace = icgm_run(V, C, P, z, inst.params)
z_bar = trace.final_z
print("final z", z_bar)
print("stationary", check_stationary(V, C, P, z_bar, 1e-2))
print("weakly efficient", check_weakly_efficient(V, C, P, z_bar, 1e-2))
print("C-convex (sampled)", check_c_convex(V, C, P))

# a random instance: convexity decides whether stationarity is enough
for seed in range(6):
    r = random_problem(seed).build()
    out = icgm_run(r.objective, r.cone, r.polygon, r.start, r.params)
    flags = (
        check_c_convex(r.objective, r.cone, r.polygon),
        check_stationary(r.objective, r.cone, r.polygon, out.final_z, 1e-2),
        check_weakly_efficient(r.objective, r.cone, r.polygon, out.final_z, 1e-2),
    )
    print(f"seed {seed} {r.objective.label:7s} convex/stationary/weak:", flags, np.round(out.final_z, 4))
