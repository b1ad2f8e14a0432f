import random
from fractions import Fraction

from django.test import SimpleTestCase
from mpmath import iv

from exact.exceptions import MixedRadicandError, PrecisionRefinementRequired, RationalFormatError, \
    SingularSystemError, ZeroDenominatorError
from exact.interval import DyadicInterval, interval_op
from exact.linalg import matvec, solve
from exact.oracle import SignPattern, oracle_from_rational, oracle_perturbed
from exact.quadext import QuadExt, quadext_sign, sqrt_rational, squarefree_split
from exact.rational import dyadic, format_rational, parse_rational, rat_normalize
from exact.scalars import scalar_from_json, scalar_to_json


def random_rational(rng, bound=5, max_den=16):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * den, bound * den), den)


class RationalTest(SimpleTestCase):

    def test_normalize(self):
        self.assertEqual(rat_normalize(2, 4), Fraction(1, 2))
        self.assertEqual(rat_normalize(-3, -6), Fraction(1, 2))
        zero = rat_normalize(0, 7)
        self.assertEqual((zero.numerator, zero.denominator), (0, 1))

    def test_zero_denominator(self):
        with self.assertRaises(ZeroDenominatorError):
            rat_normalize(1, 0)

    def test_wire_format(self):
        self.assertEqual(format_rational(Fraction(-6, 4)), '-3/2')
        self.assertEqual(format_rational(3), '3/1')
        self.assertEqual(parse_rational('-3/2'), Fraction(-3, 2))
        self.assertEqual(parse_rational('0.75'), Fraction(3, 4))
        self.assertEqual(parse_rational(' 4 '), Fraction(4))
        with self.assertRaises(RationalFormatError):
            parse_rational('1/x')
        with self.assertRaises(RationalFormatError):
            parse_rational('1/0')


class IntervalTest(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(interval_op('×', DyadicInterval(1, 2), DyadicInterval(-1, 1)), DyadicInterval(-2, 2))
        self.assertEqual(
            interval_op('+', DyadicInterval(0, 0), DyadicInterval(Fraction(3, 4), Fraction(3, 4))),
            DyadicInterval.point(Fraction(3, 4)),
        )
        self.assertEqual(
            interval_op('÷', DyadicInterval(1, 1), DyadicInterval(2, 4)),
            DyadicInterval(Fraction(1, 4), Fraction(1, 2)),
        )

    def test_division_by_interval_containing_zero(self):
        with self.assertRaises(PrecisionRefinementRequired):
            interval_op('/', DyadicInterval(1, 1), DyadicInterval(-1, 1))

    def test_degenerate_evaluation_is_exact(self):
        rng = random.Random(7)
        exact_ops = {
            '+': lambda x, y: x + y,
            '-': lambda x, y: x - y,
            '*': lambda x, y: x * y,
            '/': lambda x, y: x / y,
        }
        for _ in range(200):
            exact = random_rational(rng)
            box = DyadicInterval.point(exact)
            for _ in range(6):
                op = rng.choice(sorted(exact_ops))
                operand = random_rational(rng)
                if op == '/' and operand == 0:
                    operand = Fraction(1, 3)
                box = interval_op(op, box, DyadicInterval.point(operand))
                exact = exact_ops[op](exact, operand)
                self.assertTrue(box.is_degenerate)
                self.assertEqual(box.lo, exact)

    def test_outward_soundness(self):
        rng = random.Random(11)
        for _ in range(300):
            a = DyadicInterval(*sorted([random_rational(rng), random_rational(rng)]))
            b = DyadicInterval(*sorted([random_rational(rng), random_rational(rng)]))
            x = a.lo + (a.hi - a.lo) * Fraction(rng.randint(0, 8), 8)
            y = b.lo + (b.hi - b.lo) * Fraction(rng.randint(0, 8), 8)
            self.assertTrue((a + b).contains(x + y))
            self.assertTrue((a - b).contains(x - y))
            self.assertTrue((a * b).contains(x * y))
            self.assertTrue(a.square().contains(x * x))
            self.assertTrue(a.relu().contains(max(Fraction(0), x)))
            if not b.contains_zero():
                self.assertTrue((a / b).contains(x / y))

    def test_round_outward(self):
        box = DyadicInterval(Fraction(1, 3), Fraction(2, 3)).round_outward(4)
        self.assertEqual(box, DyadicInterval(Fraction(5, 16), Fraction(11, 16)))


class OracleTest(SimpleTestCase):

    def test_constant_oracle(self):
        self.assertEqual(oracle_from_rational(Fraction(1, 3)).query(5), Fraction(1, 3))
        self.assertEqual(oracle_from_rational(0).query(0), 0)
        self.assertEqual(oracle_from_rational(Fraction(-7, 2)).query(20), Fraction(-7, 2))

    def test_alternating_pattern(self):
        oracle = oracle_perturbed(0, SignPattern.alternating())
        self.assertEqual(abs(oracle.query(3)), Fraction(1, 16))
        self.assertLessEqual(abs(oracle.query(3)), dyadic(3))

    def test_zero_pattern_is_constant_representation(self):
        oracle = oracle_perturbed(1, SignPattern.zero())
        constant = oracle_from_rational(1)
        self.assertEqual(oracle.exact, constant.exact)
        self.assertEqual([oracle.query(k) for k in range(10)], [constant.query(k) for k in range(10)])

    def test_patterns_satisfy_bound(self):
        half = Fraction(1, 2)
        patterns = [SignPattern.constant(1), SignPattern.constant(-1), SignPattern.alternating(),
                    SignPattern.seeded(3), SignPattern.seeded(4).for_coordinate(2)]
        for pattern in patterns:
            oracle = oracle_perturbed(half, pattern)
            for k in range(40):
                self.assertLessEqual(abs(oracle.query(k) - half), dyadic(k))
                self.assertEqual(oracle.query(k), oracle.query(k))

    def test_pattern_values_are_signs(self):
        for value in (2, -3, Fraction(1, 2)):
            with self.assertRaises(ValueError):
                SignPattern.constant(value)
        with self.assertRaises(ValueError):
            SignPattern.alternating(5)
        self.assertTrue(SignPattern.constant(0).is_zero)
        self.assertEqual(SignPattern.constant(-1).sign(7), -1)

    def test_distinct_patterns_disagree_but_represent_same_real(self):
        plus = oracle_perturbed(Fraction(1, 2), SignPattern.constant(1))
        minus = oracle_perturbed(Fraction(1, 2), SignPattern.constant(-1))
        self.assertNotEqual(plus.query(4), minus.query(4))
        self.assertTrue(plus.enclosure(4).contains(Fraction(1, 2)))
        self.assertTrue(minus.enclosure(4).contains(Fraction(1, 2)))

    def test_containment_under_refinement(self):
        rng = random.Random(5)
        for seed in range(20):
            q = random_rational(rng)
            oracle = oracle_perturbed(q, SignPattern.seeded(seed))
            for k in range(30):
                coarse = oracle.enclosure(k).inflate(2 * dyadic(k))
                self.assertTrue(coarse.contains(oracle.enclosure(k + 1)))


class QuadExtTest(SimpleTestCase):

    def test_sign_examples(self):
        self.assertEqual(quadext_sign(QuadExt(1, -1, 2)), -1)
        self.assertEqual(quadext_sign(QuadExt(3, -1, 2)), 1)
        self.assertEqual(quadext_sign(QuadExt(0, 0, 5)), 0)

    def test_embedding_agrees_with_rationals(self):
        rng = random.Random(13)
        for _ in range(500):
            x, y = random_rational(rng), random_rational(rng)
            qx, qy = QuadExt(x, 0, 7), QuadExt(y, 0, 7)
            self.assertEqual(qx + qy, x + y)
            self.assertEqual(qx - qy, x - y)
            self.assertEqual(qx * qy, x * y)
            if y != 0:
                self.assertEqual(qx / qy, x / y)
            self.assertEqual(quadext_sign(qx - qy), (x > y) - (x < y))

    def test_sign_matches_high_precision_enclosure(self):
        rng = random.Random(17)
        iv.dps = 60
        for _ in range(300):
            a, b = random_rational(rng), random_rational(rng)
            d = rng.choice([2, 3, 5, 6, 7, 10, 11, 13])
            value = QuadExt(a, b, d)
            enclosure = (iv.mpf(a.numerator) / a.denominator
                         + iv.mpf(b.numerator) / b.denominator * iv.sqrt(iv.mpf(d)))
            expected = 1 if enclosure.a > 0 else (-1 if enclosure.b < 0 else 0)
            self.assertEqual(quadext_sign(value), expected)

    def test_field_operations(self):
        root2 = QuadExt(0, 1, 2)
        self.assertEqual(root2 * root2, 2)
        self.assertEqual((1 + root2) * (1 - root2), -1)
        self.assertEqual(1 / (1 + root2), root2 - 1)
        self.assertTrue(root2 > Fraction(141, 100))
        self.assertTrue(root2 < Fraction(142, 100))

    def test_mixed_radicands_rejected(self):
        with self.assertRaises(MixedRadicandError):
            QuadExt(0, 1, 2) + QuadExt(0, 1, 3)

    def test_sqrt_rational(self):
        self.assertEqual(sqrt_rational(Fraction(9, 4)), Fraction(3, 2))
        root = sqrt_rational(Fraction(8, 3))
        self.assertEqual(root * root, Fraction(8, 3))
        self.assertEqual(root.d, 6)
        self.assertEqual(squarefree_split(72), (6, 2))

    def test_approximation(self):
        value = QuadExt(Fraction(1, 3), Fraction(-5, 7), 2)
        for k in (0, 10, 40, 100):
            self.assertLessEqual(abs(value - value.approximate(k)), dyadic(k))

    def test_json(self):
        value = QuadExt(Fraction(1, 2), Fraction(-3, 4), 5)
        self.assertEqual(scalar_to_json(value), {'a': '1/2', 'b': '-3/4', 'd': 5})
        self.assertEqual(scalar_from_json(scalar_to_json(value)), value)


class LinalgTest(SimpleTestCase):

    def test_solve(self):
        matrix = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
        rhs = [Fraction(1), Fraction(2)]
        x = solve(matrix, rhs)
        self.assertEqual(matvec(matrix, x), rhs)

    def test_singular(self):
        with self.assertRaises(SingularSystemError):
            solve([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [Fraction(1), Fraction(1)])
