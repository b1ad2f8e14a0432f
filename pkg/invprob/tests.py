import json
import random
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase

from exact.interval import DyadicInterval
from exact.linalg import squared_norm, vec_sub
from exact.quadext import QuadExt
from exact.rational import dyadic
from exact.scalars import approximate
from invprob.basis_pursuit import solve_bp
from invprob.bernstein import BernsteinApprox, build_bernstein_l1, radius_upper_bound
from invprob.branch_bound import check_bpa_domain, solve_bpa_branch_bound
from invprob.effective import instance_map, naive_bp_map, snapshot_solver_map
from invprob.exceptions import BernsteinDegreeError, DegenerateInstanceError, InfeasibleInstanceError, \
    InstanceFormatError
from invprob.families import EPSILON, JUMP, THRESHOLD, discontinuity_family
from invprob.homotopy import lasso2_objective, solve_lasso2_homotopy
from invprob.instance import Instance, random_instance, split_complex
from invprob.kkt import kkt_check_bp, kkt_check_lasso2
from invprob.results import BUDGET, OPTIMAL
from turing.transparency import CONSISTENT, VIOLATION, check_transparency, consistency_tolerance, \
    variant_patterns


def random_lambda(rng):
    # lambda in (0, 5/4)
    return Fraction(rng.randint(1, 19), 16)


def random_shape(rng, largest):
    N = rng.randint(3, largest)
    return rng.randint(2, N - 1), N


def descent_objective(A, y, lam, sweeps=5000):
    """Coordinate descent on lasso^2 polished by a halving pattern search."""
    A = np.array([[float(v) for v in row] for row in A])
    y = np.array([float(v) for v in y])
    lam = float(lam)
    N = A.shape[1]
    norms = (A * A).sum(axis=0)

    def objective(z):
        return lam * np.abs(z).sum() + np.sum((A @ z - y) ** 2)

    x = np.zeros(N)
    for _ in range(sweeps):
        previous = x.copy()
        for j in range(N):
            if norms[j] == 0:
                x[j] = 0.0
                continue
            rho = A[:, j] @ (y - A @ x + A[:, j] * x[j])
            x[j] = np.sign(rho) * max(abs(rho) - lam / 2, 0.0) / norms[j]
        if np.max(np.abs(x - previous)) < 1e-15:
            break
    best = objective(x)
    directions = np.vstack([np.eye(N), -np.eye(N)])
    step = 0.5
    while step > 1e-12:
        improved = False
        for direction in directions:
            candidate = x + step * direction
            value = objective(candidate)
            if value < best:
                x, best, improved = candidate, value, True
        if not improved:
            step /= 2
    return best


class InstanceTest(SimpleTestCase):

    def test_json_round_trip(self):
        instance = Instance.build([[1, Fraction(1, 2), 0]], [Fraction(-3, 4)], lam=Fraction(1, 2))
        self.assertEqual(Instance.from_json(json.dumps(instance.to_json())), instance)
        self.assertEqual(instance.to_json()['lambda'], '1/2')

    def test_field_named_in_errors(self):
        with self.assertRaises(InstanceFormatError) as ctx:
            Instance.from_json('{"A": [["1/1", "0/1"]], "epsilon": "1/8"}')
        self.assertEqual(ctx.exception.field, 'y')
        with self.assertRaises(InstanceFormatError) as ctx:
            Instance.from_json('{"A": [["1/1", "x"]], "y": ["1/1"], "epsilon": "1/8"}')
        self.assertEqual(ctx.exception.field, 'A')
        with self.assertRaises(InstanceFormatError) as ctx:
            Instance.from_json('{"A": [["1/1", "0/1"]], "y": ["1/1"')
        self.assertEqual(ctx.exception.field, 'json')

    def test_standing_assumptions(self):
        with self.assertRaises(InstanceFormatError):
            Instance.build([[1, 0], [0, 1]], [1, 1], epsilon=Fraction(1, 8))
        with self.assertRaises(InstanceFormatError):
            Instance.build([[1, 0]], [1])
        with self.assertRaises(InstanceFormatError):
            Instance.build([[1, 0]], [1], epsilon=0)

    def test_random_instance_is_seeded(self):
        first = random_instance(4, 2, 5, lam=1, sparsity=2, noise_scale=Fraction(1, 10))
        second = random_instance(4, 2, 5, lam=1, sparsity=2, noise_scale=Fraction(1, 10))
        self.assertEqual(first, second)
        self.assertEqual(len(first.noise), 2)
        for value in first.flatten()[:10]:
            self.assertLessEqual(abs(value), 2)
            self.assertLessEqual(value.denominator, 16)

    def test_flatten(self):
        instance = Instance.build([[1, 2, 3], [4, 5, 6]], [7, 8], epsilon=1)
        self.assertEqual(instance.flatten(), list(range(1, 9)))
        self.assertEqual(Instance.from_flat(instance.flatten(), 2, 3, epsilon=1), instance)

    def test_complex_entries_are_embedded(self):
        data = {'A': [[{'re': '1', 'im': '1'}, '2']], 'y': [{'re': '3', 'im': '-1'}], 'epsilon': '1/8'}
        instance = Instance.from_json(json.dumps(data))
        self.assertTrue(instance.is_complex)
        self.assertEqual(instance.complex_shape, (1, 2))
        self.assertEqual(instance.A, ((1, 2, -1, 0), (1, 0, 1, 2)))
        self.assertEqual(instance.y, (3, -1))
        # (1 + i) * 1 + 2 * (1 + i) = 3 + 3i
        self.assertEqual(instance.residual([1, 1, 0, 1]), [0, 4])
        self.assertEqual(split_complex([1, 1, 0, 1]), [(1, 0), (1, 1)])

    def test_complex_json_keeps_complex_form(self):
        data = {'A': [[{'re': '1/1', 'im': '1/1'}, {'re': '2/1', 'im': '0/1'}]],
                'y': [{'re': '3/1', 'im': '-1/1'}], 'epsilon': '1/8'}
        instance = Instance.from_json(data)
        self.assertEqual(instance.to_json(), data)
        self.assertEqual(Instance.from_json(instance.to_json()), instance)

    def test_complex_instances_are_bpa_only(self):
        instance = Instance.build_complex([[(1, 1), (2, 0)]], [(3, -1)], epsilon=Fraction(1, 8))
        for problem in ('lasso2', 'bp'):
            with self.assertRaises(InstanceFormatError):
                instance.require_real(problem)
        Instance.build([[1, 0]], [1], epsilon=1).require_real('bp')

    def test_malformed_complex_entry(self):
        with self.assertRaises(InstanceFormatError) as ctx:
            Instance.from_json({'A': [[{'re': '1', 'arg': '2'}, '1']], 'y': ['1'], 'epsilon': '1'})
        self.assertEqual(ctx.exception.field, 'A')
        with self.assertRaises(InstanceFormatError) as ctx:
            Instance.from_json({'A': [['1', '0']], 'y': [{'re': 'x'}], 'epsilon': '1'})
        self.assertEqual(ctx.exception.field, 'y')


class Lasso2HomotopyTest(SimpleTestCase):

    def test_soft_threshold(self):
        result = solve_lasso2_homotopy([[1, 0]], [1], Fraction(1, 2))
        self.assertEqual(result.minimizer, [Fraction(3, 4), 0])
        self.assertTrue(result.certified)
        self.assertEqual([(b.event, b.index, b.lam) for b in result.breakpoints], [('join', 0, 2)])

    def test_zero_data(self):
        result = solve_lasso2_homotopy([[1, 2, 3], [0, 1, -1]], [0, 0], Fraction(1, 3))
        self.assertEqual(result.minimizer, [0, 0, 0])
        self.assertEqual(result.objective, 0)
        self.assertTrue(result.certified)

    def test_large_lambda_gives_zero(self):
        A = [[1, Fraction(-1, 2), 2], [Fraction(3, 4), 1, 0]]
        y = [1, Fraction(1, 3)]
        lam_max = max(abs(2 * (A[0][j] * y[0] + A[1][j] * y[1])) for j in range(3))
        for lam in (lam_max, lam_max + 1):
            result = solve_lasso2_homotopy(A, y, lam)
            self.assertEqual(result.minimizer, [0, 0, 0])
            self.assertTrue(kkt_check_lasso2(A, y, lam, [Fraction(0)] * 3).valid)

    def test_kkt_rejects_least_squares_point(self):
        certificate = kkt_check_lasso2([[1, 0]], [1], 10, [Fraction(1), Fraction(0)])
        self.assertFalse(certificate.valid)
        self.assertEqual(certificate.index, 0)

    def test_tie_goes_to_lowest_index(self):
        result = solve_lasso2_homotopy([[1, 1, 1]], [1], Fraction(1, 2))
        self.assertEqual(result.support, (0,))
        self.assertTrue(result.certified)

    def test_breakpoint_cap(self):
        with self.assertRaises(DegenerateInstanceError) as ctx:
            solve_lasso2_homotopy([[1, 0]], [1], Fraction(1, 2), max_steps=1)
        self.assertEqual(ctx.exception.support, (0,))

    def test_kkt_exact_on_random_instances(self):
        rng = random.Random(101)
        degenerate = 0
        for _ in range(200):
            m, N = random_shape(rng, 8)
            instance = random_instance(rng, m, N, lam=random_lambda(rng))
            try:
                result = solve_lasso2_homotopy(instance.A, instance.y, instance.lam)
            except DegenerateInstanceError:
                degenerate += 1
                continue
            self.assertTrue(kkt_check_lasso2(instance.A, instance.y, instance.lam, result.minimizer).valid)
            self.assertEqual(len(result.minimizer), N)
        self.assertLess(degenerate, 10)

    def test_matches_descent_oracle_and_random_points(self):
        rng = random.Random(202)
        points_rng = np.random.default_rng(202)
        for _ in range(50):
            N = rng.randint(2, 3)
            m = rng.randint(1, N - 1)
            instance = random_instance(rng, m, N, lam=random_lambda(rng))
            A, y, lam = instance.A, instance.y, instance.lam
            result = solve_lasso2_homotopy(A, y, lam)
            optimum = result.objective
            self.assertLess(abs(float(optimum) - descent_objective(A, y, lam)), 1e-6)

            far = points_rng.integers(-192, 193, size=(5000, N))
            centre = np.array([round(float(v) * 1024) for v in result.minimizer])
            near = centre + points_rng.integers(-64, 65, size=(5000, N))
            grid = [(far, 64), (near, 1024)]
            A_float = np.array([[float(v) for v in row] for row in A])
            y_float = np.array([float(v) for v in y])
            for numerators, denominator in grid:
                X = numerators / denominator
                values = float(lam) * np.abs(X).sum(axis=1) + ((X @ A_float.T - y_float) ** 2).sum(axis=1)
                for row in np.nonzero(values <= float(optimum) + 1e-9)[0]:
                    point = [Fraction(int(v), denominator) for v in numerators[row]]
                    self.assertLessEqual(optimum, lasso2_objective(A, y, lam, point))

    def test_scaling_equivariance(self):
        rng = random.Random(303)
        for _ in range(30):
            m, N = random_shape(rng, 5)
            instance = random_instance(rng, m, N, lam=random_lambda(rng))
            c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            base = solve_lasso2_homotopy(instance.A, instance.y, instance.lam)
            scaled_y = [c * v for v in instance.y]
            scaled = solve_lasso2_homotopy(instance.A, scaled_y, c * instance.lam)
            self.assertTrue(kkt_check_lasso2(instance.A, scaled_y, c * instance.lam, scaled.minimizer).valid)
            self.assertEqual(scaled.minimizer, [c * v for v in base.minimizer])

    def test_result_json(self):
        data = solve_lasso2_homotopy([[1, 0]], [1], Fraction(1, 2)).to_json()
        self.assertEqual(data['minimizer'], ['3/4', '0/1'])
        self.assertTrue(data['certificate']['valid'])
        json.dumps(data)


class BasisPursuitTest(SimpleTestCase):

    def test_zero_data(self):
        result = solve_bp([[1, 2, 3], [0, 1, 1]], [0, 0], Fraction(1, 8))
        self.assertEqual(result.minimizer, [0, 0, 0])
        self.assertEqual(result.objective, 0)
        self.assertTrue(result.certified)

    def test_origin_feasible_when_eps_covers_y(self):
        result = solve_bp([[1, 1]], [Fraction(1, 2)], Fraction(1, 2))
        self.assertEqual(result.minimizer, [0, 0])
        self.assertTrue(result.certified)

    def test_two_column_objective(self):
        for epsilon in (Fraction(1, 8), Fraction(1, 4), Fraction(3, 5)):
            result = solve_bp([[1, 1]], [1], epsilon)
            self.assertEqual(result.objective, 1 - epsilon)
            self.assertEqual(len(result.support), 1)
            self.assertTrue(result.certified)

    def test_irrational_breakpoint(self):
        A = [[1, 2, 0], [0, 1, 1]]
        y = [1, 1]
        epsilon = Fraction(3, 4)
        result = solve_bp(A, y, epsilon)
        self.assertTrue(result.certified)
        # lambda^2 = 29/4 on the segment with support {1}
        self.assertEqual(result.metadata['lambda'], QuadExt(0, Fraction(1, 2), 29))
        self.assertEqual(result.support, (1,))
        residual2 = squared_norm(vec_sub([sum(a * x for a, x in zip(row, result.minimizer)) for row in A], y))
        self.assertEqual(residual2, epsilon * epsilon)
        json.dumps(result.to_json())

    def test_certificate_rejects_inactive_constraint(self):
        certificate = kkt_check_bp([[1, 1]], [1], Fraction(1, 8), [Fraction(1, 2), 0], multiplier=Fraction(1, 4))
        self.assertFalse(certificate.valid)

    def test_infeasible_with_witness(self):
        # y is orthogonal to the range of A
        with self.assertRaises(InfeasibleInstanceError) as ctx:
            solve_bp([[1, 1, 1], [0, 0, 0]], [0, 1], Fraction(1, 2))
        self.assertEqual(ctx.exception.witness['min_residual_squared'], '1/1')

    def test_path_correctness_and_monotonicity(self):
        rng = random.Random(404)
        slack = dyadic(70)
        checked = 0
        for _ in range(50):
            m, N = random_shape(rng, 5)
            instance = random_instance(rng, m, N, epsilon=1)
            previous = None
            try:
                results = [(epsilon, solve_bp(instance.A, instance.y, epsilon))
                           for epsilon in (Fraction(j, 10) for j in range(1, 11))]
            except DegenerateInstanceError:
                continue
            checked += 1
            for epsilon, result in results:
                self.assertTrue(result.certified)
                if result.support:
                    residual = squared_norm(vec_sub(
                        [sum((a * x for a, x in zip(row, result.minimizer)), Fraction(0)) for row in instance.A],
                        instance.y))
                    self.assertEqual(residual, epsilon * epsilon)
                else:
                    self.assertLessEqual(squared_norm(instance.y), epsilon * epsilon)
                value = approximate(result.objective, 80)
                if previous is not None:
                    self.assertLessEqual(value, previous + slack)
                previous = value
        self.assertGreater(checked, 45)


class DiscontinuityFamilyTest(SimpleTestCase):

    def solve(self, t):
        instance = discontinuity_family(t)
        return solve_bp(instance.A, instance.y, instance.epsilon)

    def test_supports_switch_at_threshold(self):
        below = self.solve(THRESHOLD - Fraction(1, 1024))
        above = self.solve(THRESHOLD + Fraction(1, 1024))
        self.assertEqual(below.support, (0,))
        self.assertEqual(above.support, (1,))

    def test_tie_breaks_to_first_coordinate(self):
        result = self.solve(THRESHOLD)
        self.assertEqual(result.minimizer, [1 - EPSILON, 0])
        instance = discontinuity_family(THRESHOLD)
        for candidate in ([1 - EPSILON, Fraction(0)], [Fraction(0), 1 - EPSILON]):
            self.assertTrue(kkt_check_bp(instance.A, instance.y, EPSILON, candidate, multiplier=2 * EPSILON).valid)

    def test_jump_size(self):
        at = self.solve(THRESHOLD).minimizer
        for i in range(1, 101):
            step = Fraction(1, 4 * i)
            below = self.solve(THRESHOLD - step).minimizer
            above = self.solve(THRESHOLD + step).minimizer
            self.assertGreaterEqual(squared_norm(vec_sub(below, above)), JUMP * JUMP)
            self.assertGreaterEqual(squared_norm(vec_sub(at, above)), JUMP * JUMP)

    def test_parameter_range(self):
        with self.assertRaises(InstanceFormatError):
            discontinuity_family(1)


class TransparencyGapTest(SimpleTestCase):

    def test_naive_heuristic_violates_at_threshold(self):
        instance = discontinuity_family(THRESHOLD)
        k = 10
        report = check_transparency(naive_bp_map(1, 2, EPSILON), instance.flatten(), variant_patterns(10), k)
        self.assertEqual(report.verdict, VIOLATION)
        self.assertGreater(Fraction(report.witness['distance']), consistency_tolerance(k) + JUMP / 2)
        supports = {tuple(v != 0 for v in outcome.outputs) for outcome in report.outcomes}
        self.assertEqual(supports, {(True, False), (False, True)})

    def test_exact_wrapper_is_consistent_on_generic_instances(self):
        rng = random.Random(505)
        for _ in range(50):
            instance = random_instance(rng, 2, 3, epsilon=EPSILON)
            report = check_transparency(instance_map('bp', instance), instance.flatten(), variant_patterns(10), 10)
            self.assertEqual(report.verdict, CONSISTENT, report.to_json())

    def test_lasso_wrapper_is_consistent(self):
        instance = random_instance(7, 2, 4, lam=1)
        candidate = snapshot_solver_map('lasso2', 2, 4, instance.lam)
        report = check_transparency(candidate, instance.flatten(), variant_patterns(6), 12)
        self.assertEqual(report.verdict, CONSISTENT)

    def test_reports_are_byte_identical(self):
        instance = discontinuity_family(THRESHOLD)
        runs = [json.dumps(check_transparency(naive_bp_map(1, 2, EPSILON), instance.flatten(),
                                              variant_patterns(10, seed=3), 10).to_json())
                for _ in range(2)]
        self.assertEqual(runs[0], runs[1])


class BernsteinTest(SimpleTestCase):

    def test_degree_two_at_zero(self):
        self.assertEqual(BernsteinApprox.of_degree(2).evaluate_coordinate(0), Fraction(1, 2))

    def test_interpolates_endpoints(self):
        approx = BernsteinApprox.of_degree(7, dimension=3, beta=Fraction(1, 2))
        for t in (approx.radius, -approx.radius):
            self.assertEqual(approx.evaluate_coordinate(t), approx.radius)

    def test_radius_bound(self):
        radius = radius_upper_bound(2, 1)
        self.assertEqual(radius, Fraction(1449, 1024))
        self.assertGreaterEqual(radius * radius, 2)
        self.assertEqual(radius_upper_bound(4, Fraction(1, 3)), Fraction(2, 3))

    def test_certificate(self):
        approx = build_bernstein_l1(1, 1, Fraction(1, 16))
        self.assertEqual(approx.degree, 256)
        certificate = approx.grid_certificate(dyadic(12))
        self.assertTrue(certificate['certified'])
        self.assertLessEqual(Fraction(certificate['bound']), Fraction(1, 16))

    def test_error_rate(self):
        degrees = [4, 16, 64, 256]
        errors = [BernsteinApprox.of_degree(n).grid_sup_error(dyadic(8)) for n in degrees]
        self.assertEqual(errors, sorted(errors, reverse=True))
        slope = np.polyfit(np.log(degrees), np.log([float(e) for e in errors]), 1)[0]
        self.assertTrue(-0.65 <= slope <= -0.35, slope)

    def test_degree_cap(self):
        with self.assertRaises(BernsteinDegreeError) as ctx:
            build_bernstein_l1(1, 1, Fraction(1, 16), degree_cap=100)
        self.assertEqual(ctx.exception.required, 256)

    def test_windowed_enclosure_contains_exact_value(self):
        approx = BernsteinApprox.of_degree(600, dimension=2, beta=1)
        for t in (Fraction(0), Fraction(1, 3), Fraction(-5, 7), Fraction(13, 10), approx.radius / 2):
            box = approx.enclose_point(t)
            self.assertTrue(box.contains(approx.evaluate_coordinate(t)))
            self.assertLessEqual(box.width, dyadic(56))

    def test_range_enclosure(self):
        approx = BernsteinApprox.of_degree(40, dimension=2, beta=1)
        for lo, hi in ((Fraction(-1, 2), Fraction(1, 4)), (Fraction(1, 8), Fraction(5, 4)), (-1, Fraction(-1, 3))):
            box = approx.enclose_coordinate(DyadicInterval(lo, hi))
            for j in range(9):
                self.assertTrue(box.contains(approx.evaluate_coordinate(lo + (hi - lo) * Fraction(j, 8))))


class BranchBoundTest(SimpleTestCase):
    tol = Fraction(1, 16)

    def test_two_column_example_encloses_the_minimizer(self):
        approx = build_bernstein_l1(2, 1, Fraction(1, 16))
        A, y, epsilon = [[1, 1]], [1], Fraction(1, 8)
        self.assertTrue(check_bpa_domain(A, y, epsilon, approx)['valid'])
        result = solve_bpa_branch_bound(A, y, epsilon, approx, self.tol, node_budget=400)
        # q is nearly linear away from 0, so the near-minimizers span the whole segment
        self.assertEqual(result.status, BUDGET)
        self.assertFalse(result.certified)
        minimizer = Fraction(7, 16)
        self.assertTrue(all(side.contains(minimizer) for side in result.minimizer))
        value = approx.enclose_at([minimizer, minimizer])
        self.assertLessEqual(result.objective.lo, value.hi)
        self.assertGreaterEqual(result.objective.hi, value.lo)
        self.assertLessEqual(result.objective.lo, 1 - epsilon + approx.gamma)

    def test_zero_data(self):
        approx = build_bernstein_l1(2, 1, Fraction(1, 4))
        result = solve_bpa_branch_bound([[1, 2]], [0], Fraction(1, 8), approx, self.tol)
        self.assertEqual(result.status, OPTIMAL)
        self.assertLessEqual(approx.evaluate([0, 0]), approx.gamma)
        self.assertLessEqual(result.objective.lo, approx.evaluate([0, 0]))
        reach = approx.gamma + 2 * self.tol
        for side in result.minimizer:
            self.assertTrue(DyadicInterval(-reach, reach).contains(side))
            self.assertTrue(side.contains(0))
        self.assertLessEqual(max(side.width for side in result.minimizer), self.tol)
        self.assertLessEqual(result.objective.width, self.tol)

    def test_large_tolerance_stops_at_root(self):
        approx = build_bernstein_l1(2, 1, Fraction(1, 4))
        result = solve_bpa_branch_bound([[1, 1]], [1], Fraction(1, 8), approx, 4)
        self.assertEqual(result.metadata['nodes'], 1)
        self.assertEqual(result.minimizer, [DyadicInterval(-approx.radius, approx.radius)] * 2)

    def test_infeasible_region(self):
        approx = build_bernstein_l1(2, 1, Fraction(1, 4))
        with self.assertRaises(InfeasibleInstanceError):
            solve_bpa_branch_bound([[1, 1]], [10], Fraction(1, 8), approx, self.tol)

    def test_budget_flag(self):
        approx = build_bernstein_l1(2, 1, Fraction(1, 4))
        result = solve_bpa_branch_bound([[1, 1]], [1], Fraction(1, 8), approx, self.tol, node_budget=3)
        self.assertEqual(result.status, BUDGET)
        self.assertFalse(result.certified)

    def test_brackets_bp_optimum(self):
        rng = random.Random(606)
        gamma = Fraction(1, 4)
        approx = build_bernstein_l1(2, 1, gamma)
        slack = dyadic(50)
        accepted = 0
        for _ in range(500):
            if accepted == 20:
                break
            instance = random_instance(rng, 1, 2, epsilon=Fraction(1, 8))
            bp = solve_bp(instance.A, instance.y, instance.epsilon)
            if not check_bpa_domain(instance.A, instance.y, instance.epsilon, approx, bp_result=bp)['valid']:
                continue
            accepted += 1
            result = solve_bpa_branch_bound(instance.A, instance.y, instance.epsilon, approx, self.tol,
                                            node_budget=2000)
            self.assertIn(result.status, (OPTIMAL, BUDGET))
            optimum = approximate(bp.objective, 60)
            self.assertLessEqual(result.objective.lo, optimum + gamma + slack)
            self.assertGreaterEqual(result.objective.hi, optimum - gamma - slack)
            if result.status == OPTIMAL:
                self.assertLessEqual(max(side.width for side in result.minimizer), self.tol)
                self.assertLessEqual(result.objective.hi, optimum + gamma + self.tol + slack)
        self.assertEqual(accepted, 20)

    def test_domain_check_fails_for_far_optimum(self):
        approx = build_bernstein_l1(2, 1, Fraction(1, 4))
        check = check_bpa_domain([[Fraction(1, 4), Fraction(1, 8)]], [2], Fraction(1, 8), approx)
        self.assertFalse(check['valid'])
        self.assertIsInstance(check['bp_objective'], (Fraction, QuadExt))
