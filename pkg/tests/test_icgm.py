import numpy as np
import pytest
from scipy.optimize import linprog

from spherecgm.cones import make_cone, order_lt, oriented_distance
from spherecgm.exceptions import LineSearchExhausted, PointOutsideFeasible
from spherecgm.icgm import (
    SolverParams,
    Status,
    armijo_step,
    icgm_run,
    lift_to_sphere,
    psi,
    solve_subproblem,
)
from spherecgm.objectives import linear_objective, logmap_objective, polygon_contains
from spherecgm.problems import builtin_problem, random_problem
from spherecgm.sphere import log_map, make_basis, sphere_point, to_coords
from spherecgm.verification import (
    check_stationary,
    grid_subproblem_oracle,
    sample_polygon,
    spectral_norm,
)


def theta_by_lp(jac, cone, poly, z):
    """min u s.t. u >= <n_i, J(s - z)>, s in the polygon; solved by HiGHS."""
    rows, rhs = [], []
    for n in (cone.n1, cone.n2):
        w = jac.T @ n
        rows.append([w[0], w[1], -1.0])
        rhs.append(w @ z)
    v = poly.vertices
    for a, b in zip(v, np.roll(v, -1, axis=0)):
        e = b - a
        # e_x (s_y - a_y) - e_y (s_x - a_x) >= 0
        rows.append([e[1], -e[0], 0.0])
        rhs.append(e[1] * a[0] - e[0] * a[1])
    res = linprog([0, 0, 1], A_ub=rows, b_ub=rhs, bounds=[(None, None)] * 3, method="highs")
    assert res.status == 0
    return res.fun


def random_instance(seed):
    inst = random_problem(seed).build()
    z = sample_polygon(inst.polygon, 1, np.random.default_rng(seed))[0]
    return inst, z


class TestParams:
    @pytest.mark.parametrize(
        "kwargs",
        [{"beta": 1.2}, {"beta": 0.0}, {"delta": 1.0}, {"tol_station": 0.0}, {"max_iter": 0}, {"armijo_max_pow": 0}],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            SolverParams(**kwargs)


class TestPsi:
    def test_zero_at_z(self, rng, quadrant):
        V = linear_objective(rng.standard_normal((2, 2)), rng.standard_normal(2))
        z = rng.standard_normal(2)
        assert psi(V, quadrant, z, z) == 0.0

    def test_examples(self, neg_identity, quadrant):
        assert psi(neg_identity, quadrant, [0, 0], [1, 1]) == pytest.approx(-1.0, abs=1e-15)
        assert psi(neg_identity, quadrant, [0, 0], [1, -1]) == pytest.approx(1.0, abs=1e-15)


class TestSubproblem:
    def test_square_from_origin(self, neg_identity, quadrant, unit_square):
        s, theta = solve_subproblem(neg_identity, quadrant, unit_square, [0, 0])
        np.testing.assert_array_equal(s, [1, 1])
        assert theta == pytest.approx(-1.0, abs=1e-15)

    def test_square_stationary_corner(self, neg_identity, quadrant, unit_square):
        _, theta = solve_subproblem(neg_identity, quadrant, unit_square, [1, 1])
        assert abs(theta) <= 1e-12

    def test_outside(self, neg_identity, quadrant, unit_square):
        with pytest.raises(PointOutsideFeasible):
            solve_subproblem(neg_identity, quadrant, unit_square, [2, 2])

    def test_tie_break_lowest_vertex(self, quadrant, unit_square):
        # V = (-z1, 0): L(s) = max(-s1, 0) is 0 everywhere, so vertex 0 wins
        V = linear_objective([[-1, 0], [0, 0]], [0, 0])
        s, theta = solve_subproblem(V, quadrant, unit_square, [0, 0.5])
        np.testing.assert_array_equal(s, [0, 0])
        assert theta == 0.0

    def test_kink_candidate(self):
        from spherecgm.objectives import polygon_make

        cone = make_cone([1, 0], [0, 1])
        poly = polygon_make([[0, 0], [2, 0], [0, 2]])
        V = linear_objective(-np.eye(2), [0, 0])
        s, theta = solve_subproblem(V, cone, poly, [0, 0])
        np.testing.assert_allclose(s, [1, 1], atol=1e-15)
        assert theta == pytest.approx(-1.0)

    def test_theta_nonpositive_and_matches_lp(self):
        for seed in range(200):
            inst, z = random_instance(seed)
            jac = inst.objective.jacobian(z)
            s, theta = solve_subproblem(inst.objective, inst.cone, inst.polygon, z, jac=jac)
            assert theta <= 1e-12
            assert polygon_contains(inst.polygon, s)
            assert theta == pytest.approx(theta_by_lp(jac, inst.cone, inst.polygon, z), abs=1e-9)
            assert psi(inst.objective, inst.cone, z, s, jac=jac) == pytest.approx(theta, abs=1e-12)

    def test_grid_sandwich(self):
        for seed in range(10):
            inst, z = random_instance(seed)
            V = inst.objective
            _, theta = solve_subproblem(V, inst.cone, inst.polygon, z)
            _, theta_hat = grid_subproblem_oracle(V, inst.cone, inst.polygon, z, 1e-2)
            assert theta - 1e-12 <= theta_hat <= theta + spectral_norm(V.jacobian(z)) * 1e-2

    def test_stationary_linear_points(self, quadrant, unit_square, neg_identity):
        # every point of the top and right edges is weakly efficient for V = -z
        for z in ([1.0, 0.3], [0.2, 1.0], [1.0, 1.0]):
            _, theta = solve_subproblem(neg_identity, quadrant, unit_square, z)
            assert abs(theta) <= 1e-9

    def test_theta_continuity(self, rng):
        for seed in range(30):
            inst, z = random_instance(seed)
            V = inst.objective
            dz = rng.standard_normal(2) * 1e-3
            z2 = z + dz
            if not polygon_contains(inst.polygon, z2):
                continue
            J1, J2 = V.jacobian(z), V.jacobian(z2)
            _, t1 = solve_subproblem(V, inst.cone, inst.polygon, z, jac=J1)
            _, t2 = solve_subproblem(V, inst.cone, inst.polygon, z2, jac=J2)
            K = max(spectral_norm(J1), spectral_norm(J2))
            K += spectral_norm(J1 - J2) * inst.polygon.diameter / np.linalg.norm(dz)
            assert abs(t1 - t2) <= K * np.linalg.norm(dz) + 1e-9


class TestArmijo:
    def test_full_step_linear(self, neg_identity, quadrant):
        t, n = armijo_step(neg_identity, quadrant, [0, 0], [1, 1], SolverParams(beta=0.5))
        assert (t, n) == (1.0, 0)

    def test_linear_accepts_any_descent(self, rng, quadrant):
        for _ in range(20):
            A = rng.standard_normal((2, 2))
            V = linear_objective(A, rng.standard_normal(2))
            d = np.linalg.solve(A, -(rng.random() * quadrant.g1 + rng.random() * quadrant.g2))
            assert armijo_step(V, quadrant, rng.standard_normal(2), d, SolverParams())[0] == 1.0

    def test_exhausted_on_ascent(self, neg_identity, quadrant):
        with pytest.raises(LineSearchExhausted):
            armijo_step(neg_identity, quadrant, [0, 0], [-1, -1], SolverParams(armijo_max_pow=5))

    def test_backtracks_on_logmap(self):
        inst = builtin_problem("logmap_far").build()
        z = inst.start
        s, theta = solve_subproblem(inst.objective, inst.cone, inst.polygon, z)
        assert theta < 0
        t, n = armijo_step(inst.objective, inst.cone, z, s - z, inst.params)
        assert n >= 1 and t == inst.params.delta**n


class TestRun:
    def test_linear_square(self, neg_identity, quadrant, unit_square):
        trace = icgm_run(neg_identity, quadrant, unit_square, [0, 0], SolverParams(beta=0.5, delta=0.5))
        assert trace.status is Status.CONVERGED
        assert trace.iterations == 1
        np.testing.assert_array_equal(trace.final_z, [1, 1])
        assert trace.records[0].theta == pytest.approx(-1.0, abs=1e-9)
        assert abs(trace.final_theta) <= 1e-9

    def test_start_stationary(self, neg_identity, quadrant, unit_square):
        trace = icgm_run(neg_identity, quadrant, unit_square, [1, 1])
        assert trace.status is Status.CONVERGED
        assert len(trace.records) == 1 and trace.records[0].t == 0.0

    def test_outside_start(self, neg_identity, quadrant, unit_square):
        with pytest.raises(PointOutsideFeasible):
            icgm_run(neg_identity, quadrant, unit_square, [-1, 0])

    def test_max_iterations(self, quadrant):
        # V(z) = (z1^2, z2^2) has its ideal point inside the square, so the
        # conditional gradient steps only approach it
        from spherecgm.objectives import builtin_objective, polygon_make

        poly = polygon_make([[-1, -1], [1, -1], [1, 1], [-1, 1]])
        V = builtin_objective("square")
        trace = icgm_run(V, quadrant, poly, [0.8, 0.6], SolverParams(max_iter=15))
        assert trace.status is Status.MAX_ITERATIONS
        assert len(trace.records) == 16
        assert trace.records[-1].theta < -1e-8

    def test_line_search_failure(self):
        inst = builtin_problem("logmap_far").build()
        params = SolverParams(armijo_max_pow=1)
        trace = icgm_run(inst.objective, inst.cone, inst.polygon, inst.start, params)
        assert trace.status is Status.LINE_SEARCH_FAILED
        assert trace.records[-1].t == 0.0

    @pytest.mark.parametrize("name", ["linear_square", "rotated_cone_triangle", "logmap_near", "logmap_far"])
    def test_trace_invariants(self, name):
        inst = builtin_problem(name).build()
        V, C, P = inst.objective, inst.cone, inst.polygon
        trace = icgm_run(V, C, P, inst.start, inst.params)
        assert trace.status is Status.CONVERGED
        recs = trace.records
        for r in recs:
            assert polygon_contains(P, r.z)
            np.testing.assert_array_equal(r.direction, r.s - r.z)
        for a, b in zip(recs, recs[1:]):
            assert b.phi_value < a.phi_value
            assert order_lt(C, V(b.z), V(a.z))
            assert a.t * abs(a.theta) <= (a.phi_value - b.phi_value) / inst.params.beta + 1e-9
        assert check_stationary(V, C, P, trace.final_z, 1e-2)

    def test_logmap_run_uses_backtracking(self):
        inst = builtin_problem("logmap_far").build()
        trace = icgm_run(inst.objective, inst.cone, inst.polygon, inst.start, inst.params)
        assert trace.iterations > 1
        assert any(r.t < 1.0 for r in trace.records[:-1])

    def test_phi_values_recorded(self, neg_identity, quadrant, unit_square):
        trace = icgm_run(neg_identity, quadrant, unit_square, [0.2, 0.1])
        for r in trace.records:
            assert r.phi_value == oriented_distance(quadrant, neg_identity(r.z))


class TestLift:
    def test_origin(self):
        p = sphere_point([1, 2, 2])
        np.testing.assert_allclose(lift_to_sphere(p, [0, 0]), p, atol=1e-15)

    def test_quarter_circle(self):
        np.testing.assert_allclose(lift_to_sphere([0, 0, 1], [np.pi / 2, 0]), [1, 0, 0], atol=1e-15)

    def test_roundtrip(self, rng):
        p = sphere_point(rng.standard_normal(3))
        b = make_basis(p)
        for z in rng.uniform(-2, 2, (50, 2)):
            np.testing.assert_allclose(to_coords(b, log_map(p, lift_to_sphere(p, z))), z, atol=1e-9)

    def test_logmap_reduction_consistent(self):
        # with eval point = anchor the objective is -z and the lift inverts it
        p = sphere_point([0.2, -0.4, 0.9])
        V = logmap_objective(p, p)
        z = np.array([0.3, -0.7])
        np.testing.assert_allclose(to_coords(make_basis(p), log_map(p, lift_to_sphere(p, z))), -V(z), atol=1e-12)
