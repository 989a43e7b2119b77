"""Command-line front end: ``solve``, ``verify`` and ``generate``.

``solve`` exits 0 when converged, 2 at the iteration limit and 3 when the
line search fails. ``verify`` exits 0 iff the candidate is stationary and
2 otherwise. Input errors exit 1 everywhere.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .icgm import Status, icgm_run, lift_to_sphere
from .objectives import polygon_contains
from .problems import BUILTIN_NAMES, ProblemFileError, builtin_problem, load_problem, random_problem
from .verification import (
    C_CONVEX_SAMPLES,
    C_CONVEX_SEED,
    C_CONVEX_TOL,
    check_c_convex,
    check_stationary,
    check_weakly_efficient,
    spectral_norm,
)

TRACE_COLUMNS = ("k", "z1", "z2", "theta", "s1", "s2", "t", "phi")
EXIT_CODES = {Status.CONVERGED: 0, Status.MAX_ITERATIONS: 2, Status.LINE_SEARCH_FAILED: 3}


def trace_csv(trace) -> str:
    """Render a trace as CSV text with full float precision."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for r in trace.records:
        writer.writerow(
            [r.k, repr(float(r.z[0])), repr(float(r.z[1])), repr(r.theta),
             repr(float(r.s[0])), repr(float(r.s[1])), repr(r.t), repr(r.phi_value)]
        )
    return buf.getvalue()


def trace_summary(trace, anchor) -> dict:
    return {
        "status": trace.status.value,
        "iterations": trace.iterations,
        "final_z": [float(x) for x in trace.final_z],
        "final_theta": trace.final_theta,
        "lifted_point": [float(x) for x in lift_to_sphere(anchor, trace.final_z)],
    }


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _load(path, **overrides):
    problem = load_problem(path).with_params(**overrides)
    return problem.build()


def cmd_solve(problem_path, trace_out_path=None, summary_out_path=None, **overrides) -> int:
    try:
        inst = _load(problem_path, **overrides)
    except (OSError, ProblemFileError) as exc:
        return _fail(str(exc))
    trace = icgm_run(inst.objective, inst.cone, inst.polygon, inst.start, inst.params)
    summary = json.dumps(trace_summary(trace, inst.anchor), indent=2) + "\n"
    try:
        if trace_out_path:
            with open(trace_out_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(trace_csv(trace))
        if summary_out_path:
            with open(summary_out_path, "w", encoding="utf-8") as fh:
                fh.write(summary)
        else:
            sys.stdout.write(summary)
    except OSError as exc:
        return _fail(str(exc))
    return EXIT_CODES[trace.status]


def cmd_verify(problem_path, z, h=1e-2, seed=C_CONVEX_SEED) -> int:
    try:
        inst = _load(problem_path)
    except (OSError, ProblemFileError) as exc:
        return _fail(str(exc))
    z = np.asarray(z, dtype=float)
    if z.shape != (2,) or not polygon_contains(inst.polygon, z):
        return _fail(f"candidate z = {z.tolist()} is outside the feasible polygon")
    V, cone, poly = inst.objective, inst.cone, inst.polygon
    stationary = check_stationary(V, cone, poly, z, h)
    weak = check_weakly_efficient(V, cone, poly, z, h)
    convex = check_c_convex(V, cone, poly, seed=seed)
    tol = spectral_norm(V.jacobian(z)) * h

    def yn(flag):
        return "yes" if flag else "no"

    print(f"stationary: {yn(stationary)} (grid h={h!r}, tol={tol!r})")
    print(f"weakly_efficient: {yn(weak)} (grid h={h!r}, strict-order margin 1e-12)")
    print(f"c_convex(sampled): {yn(convex)} ({C_CONVEX_SAMPLES} samples, seed={seed}, tol={C_CONVEX_TOL!r})")
    return 0 if stationary else 2


def cmd_generate(name=None, seed=None) -> int:
    if (name is None) == (seed is None):
        return _fail("give exactly one of a builtin name or --seed")
    try:
        problem = builtin_problem(name) if name is not None else random_problem(seed)
    except KeyError as exc:
        return _fail(exc.args[0])
    sys.stdout.write(problem.dumps())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherecgm", description="Conditional gradient method for cone orders on the sphere."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the solver on a problem file")
    p.add_argument("problem")
    p.add_argument("--trace", help="write the iteration trace CSV here")
    p.add_argument("--summary", help="write the JSON summary here (default: stdout)")
    p.add_argument("--max-iter", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--tol", type=float, help="stationarity tolerance on |theta|")

    p = sub.add_parser("verify", help="certify a candidate point by grid oracles")
    p.add_argument("problem")
    p.add_argument("--z", type=float, nargs=2, required=True, metavar=("Z1", "Z2"))
    p.add_argument("--grid-h", type=float, default=1e-2)
    p.add_argument("--seed", type=int, default=C_CONVEX_SEED, help="seed for the C-convexity sampler")

    p = sub.add_parser("generate", help="print a problem file")
    p.add_argument("name", nargs="?", help=f"one of {', '.join(BUILTIN_NAMES)}")
    p.add_argument("--seed", type=int, help="generate a random instance instead")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "solve":
        return cmd_solve(
            args.problem, args.trace, args.summary,
            max_iter=args.max_iter, beta=args.beta, delta=args.delta, tol_station=args.tol,
        )
    if args.command == "verify":
        if not args.grid_h > 0:
            return _fail("--grid-h must be positive")
        return cmd_verify(args.problem, args.z, args.grid_h, args.seed)
    return cmd_generate(args.name, args.seed)


if __name__ == "__main__":
    sys.exit(main())
