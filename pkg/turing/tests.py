import json
import random
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from exact.interval import DyadicInterval
from exact.oracle import SignPattern, oracle_from_rational, oracle_perturbed
from exact.rational import dyadic
from neural.exceptions import DimensionMismatch
from turing.effective import EffectiveMap, evaluate_effective, refine_loop
from turing.exceptions import DomainViolation, PrecisionExhausted, TransparencyCheckError
from turing.expressions import Var, relu
from turing.transparency import CONSISTENT, VIOLATION, check_transparency, variant_patterns


def sign_reader_map():
    """Reads one coarse query and returns its sign: not a realization of anything."""
    def evaluate(inputs, k):
        value = inputs[0].query(1)
        return [Fraction((value > 0) - (value < 0))]

    return EffectiveMap(arity_in=1, arity_out=1, evaluate=evaluate, name='sign-reader')


class EvaluateEffectiveTest(SimpleTestCase):

    def test_identity(self):
        identity = EffectiveMap.from_expressions([Var(0)], arity_in=1, name='identity')
        value, = evaluate_effective(identity, [oracle_perturbed(Fraction(1, 3), SignPattern.seeded(1))], 10)
        self.assertLessEqual(abs(value - Fraction(1, 3)), dyadic(10))

    def test_shift_error_bound(self):
        shift = EffectiveMap.from_expressions([Var(0) + 1], arity_in=1)
        value, = evaluate_effective(shift, [oracle_perturbed(0, SignPattern.alternating())], 4)
        self.assertTrue(Fraction(15, 16) <= value <= Fraction(17, 16))

    def test_arity_mismatch(self):
        identity = EffectiveMap.from_expressions([Var(0)], arity_in=1)
        with self.assertRaises(DomainViolation):
            evaluate_effective(identity, [oracle_from_rational(1), oracle_from_rational(2)], 5)

    def test_query_budget_enforced(self):
        def greedy(inputs, k):
            return [inputs[0].query(10 * k + 100)]

        greedy_map = EffectiveMap(arity_in=1, arity_out=1, evaluate=greedy, name='greedy')
        with self.assertRaises(PrecisionExhausted):
            evaluate_effective(greedy_map, [oracle_from_rational(1)], 3)

    @override_settings(WORKBENCH_QUERY_BUDGET_SLOPE=1, WORKBENCH_QUERY_BUDGET_OFFSET=200)
    def test_budget_follows_settings(self):
        def deep(inputs, k):
            return [inputs[0].query(150)]

        deep_map = EffectiveMap(arity_in=1, arity_out=1, evaluate=deep)
        self.assertEqual(evaluate_effective(deep_map, [oracle_from_rational(2)], 3), [Fraction(2)])

    def test_determinism(self):
        square = EffectiveMap.from_expressions([Var(0) * Var(0) - Var(1)], arity_in=2)
        inputs = [oracle_perturbed(Fraction(2, 3), SignPattern.seeded(9)),
                  oracle_perturbed(Fraction(-1, 5), SignPattern.alternating())]
        self.assertEqual(evaluate_effective(square, inputs, 25), evaluate_effective(square, inputs, 25))


class RefineLoopTest(SimpleTestCase):

    def test_square_of_constant_is_exact(self):
        x = Var(0)
        self.assertEqual(refine_loop(x * x, [oracle_from_rational(2)], 8), [Fraction(4)])

    def test_reciprocal_at_zero_exhausts(self):
        with self.assertRaises(PrecisionExhausted):
            refine_loop(1 / Var(0), [oracle_from_rational(0)], 5)
        with self.assertRaises(PrecisionExhausted):
            refine_loop(1 / Var(0), [oracle_perturbed(0, SignPattern.constant(1))], 5, budget=40)

    def test_relu_at_zero(self):
        value, = refine_loop(relu(Var(0)), [oracle_perturbed(0, SignPattern.constant(-1))], 6)
        self.assertLessEqual(abs(value), dyadic(6))

    def test_monotone_precision(self):
        rng = random.Random(3)
        x = Var(0)
        expression = x * x * x - 2 * x + relu(x - Fraction(1, 2))
        for seed in range(10):
            point = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
            oracle = oracle_perturbed(point, SignPattern.seeded(seed))
            previous = None
            for k in range(1, 25):
                value, = refine_loop(expression, [oracle], k)
                exact = expression.evaluate([point])
                self.assertLessEqual(abs(value - exact), dyadic(k))
                if previous is not None:
                    self.assertLessEqual(abs(value - previous), dyadic(k - 1) + dyadic(k))
                previous = value


class TransparencyTest(SimpleTestCase):

    def test_sign_reader_is_flagged(self):
        report = check_transparency(sign_reader_map(), [0],
                                    [SignPattern.constant(1), SignPattern.constant(-1)], 10)
        self.assertEqual(report.verdict, VIOLATION)
        self.assertEqual([o.outputs for o in report.outcomes], [[1], [-1]])
        self.assertEqual(report.witness['variants'], [0, 1])
        self.assertEqual(report.witness['distance'], '2/1')

    def test_constant_map_is_consistent(self):
        constant = EffectiveMap.constant([42], arity_in=2)
        report = check_transparency(constant, [Fraction(1, 3), 5], variant_patterns(10, seed=1), 12)
        self.assertEqual(report.verdict, CONSISTENT)
        self.assertIsNone(report.witness)

    def test_continuous_map_is_consistent(self):
        x = Var(0)
        cubic = EffectiveMap.from_expressions([x * x * x - x], arity_in=1)
        report = check_transparency(cubic, [Fraction(3, 7)], variant_patterns(10), 16)
        self.assertEqual(report.verdict, CONSISTENT)

    def test_evaluation_error_is_recorded(self):
        reciprocal = EffectiveMap.from_expressions([1 / Var(0)], arity_in=1)
        report = check_transparency(reciprocal, [0], variant_patterns(3), 4)
        self.assertEqual(report.verdict, VIOLATION)
        self.assertIn('reason', report.witness)
        self.assertTrue(all(o.error for o in report.outcomes))

    def test_interval_division_failure_is_recorded(self):
        def evaluate(inputs, k):
            return [(DyadicInterval.point(1) / inputs[0].enclosure(2)).midpoint]

        reciprocal = EffectiveMap(arity_in=1, arity_out=1, evaluate=evaluate, name='coarse-reciprocal')
        report = check_transparency(reciprocal, [0], [SignPattern.zero(), SignPattern.constant(1)], 4)
        self.assertEqual(report.verdict, VIOLATION)
        self.assertIn('PrecisionRefinementRequired', report.witness['reason'])
        self.assertEqual([o.outputs for o in report.outcomes], [None, None])

    def test_network_failure_on_one_variant_is_recorded(self):
        def evaluate(inputs, k):
            if inputs[0].query(1) > 0:
                raise DimensionMismatch("layer 1 expects 2 inputs, got 1")
            return [Fraction(0)]

        partial = EffectiveMap(arity_in=1, arity_out=1, evaluate=evaluate, name='partial')
        report = check_transparency(partial, [0], [SignPattern.constant(-1), SignPattern.constant(1)], 4)
        self.assertEqual(report.verdict, VIOLATION)
        self.assertEqual(report.witness['variants'], [1])
        self.assertIn('DimensionMismatch', report.witness['reason'])
        self.assertEqual(report.outcomes[0].outputs, [0])

    def test_requires_two_variants(self):
        with self.assertRaises(TransparencyCheckError):
            check_transparency(sign_reader_map(), [0], [SignPattern.zero()], 4)

    @override_settings(WORKBENCH_MAX_WORKERS=4)
    def test_report_is_reproducible(self):
        first = check_transparency(sign_reader_map(), [0], variant_patterns(10, seed=5), 8)
        second = check_transparency(sign_reader_map(), [0], variant_patterns(10, seed=5), 8)
        self.assertEqual(json.dumps(first.to_json()), json.dumps(second.to_json()))

    def test_variant_patterns_are_deterministic(self):
        self.assertEqual(variant_patterns(10, seed=2), variant_patterns(10, seed=2))
        self.assertTrue(variant_patterns(10)[0].is_zero)
