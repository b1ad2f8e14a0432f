import json
import random
from fractions import Fraction
from pathlib import Path

from django.test import SimpleTestCase

from exact.oracle import SignPattern, oracle_from_rational, oracle_perturbed
from exact.rational import dyadic
from neural.exceptions import DimensionMismatch, NetworkFormatError
from neural.network import NeuralNet, OracleNet, forward_complex, forward_effective, forward_exact, random_relu_net, \
    stack_complex
from turing.effective import EffectiveMap, evaluate_effective

FIXTURES = Path(__file__).resolve().parent / 'fixtures'


def abs_net():
    return NeuralNet.from_json((FIXTURES / 'abs_net.json').read_text())


def random_point(rng, dim):
    return [Fraction(rng.randint(-40, 40), rng.randint(1, 16)) for _ in range(dim)]


class ForwardExactTest(SimpleTestCase):

    def test_identity(self):
        identity = NeuralNet.from_lists([([[1]], [0])])
        self.assertEqual(forward_exact(identity, [Fraction(1, 2)]), [Fraction(1, 2)])

    def test_relu_kills_negative(self):
        split = NeuralNet.from_lists([([[1], [-1]], [0, 0]), ([[1, 0], [0, 1]], [0, 0])])
        self.assertEqual(forward_exact(split, [2]), [2, 0])

    def test_absolute_value(self):
        self.assertEqual(forward_exact(abs_net(), [Fraction(-5, 3)]), [Fraction(5, 3)])

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            forward_exact(abs_net(), [1, 2])

    def test_shape_validation(self):
        with self.assertRaises(DimensionMismatch):
            NeuralNet.from_lists([([[1, 2]], [0]), ([[1, 1]], [0])])
        with self.assertRaises(NetworkFormatError):
            NeuralNet.from_lists([([[1]], [0])], activation='tanh')
        with self.assertRaises(NetworkFormatError):
            NeuralNet.from_json('{"layers": [{"W": [["1/0"]], "b": ["0"]}]}')

    def test_json(self):
        net = random_relu_net(4, input_dim=2, depth=3, width=4)
        self.assertEqual(NeuralNet.from_json(json.dumps(net.to_json())), net)


class ComplexInputTest(SimpleTestCase):

    def test_stacking_order(self):
        stacked = stack_complex([{'re': '1/2', 'im': '-3'}, '2', (Fraction(1, 3), 4)])
        self.assertEqual(stacked, [Fraction(1, 2), 2, Fraction(1, 3), -3, 0, 4])

    def test_real_and_imaginary_parts_feed_separate_inputs(self):
        # |Re z| + |Im z| with the abs net applied to each part
        net = NeuralNet.from_lists([([[1, 0], [-1, 0], [0, 1], [0, -1]], [0, 0, 0, 0]), ([[1, 1, 1, 1]], [0])])
        self.assertEqual(forward_complex(net, [{'re': '-3/2', 'im': '2'}]), [Fraction(7, 2)])

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatch):
            forward_complex(abs_net(), [{'re': '1', 'im': '1'}])

    def test_malformed_entry(self):
        with self.assertRaises(NetworkFormatError):
            stack_complex([{'re': '1', 'phase': '0'}])


class ForwardEffectiveTest(SimpleTestCase):

    def test_constant_oracles_match_exact(self):
        rng = random.Random(21)
        net = random_relu_net(rng, input_dim=3, depth=2, width=4)
        x = random_point(rng, 3)
        result = forward_effective(OracleNet.from_net(net), [oracle_from_rational(v) for v in x], 30)
        self.assertEqual(result, forward_exact(net, x))

    def test_continuity_at_kink(self):
        net = OracleNet.from_net(abs_net(), SignPattern.alternating())
        value, = forward_effective(net, [oracle_perturbed(0, SignPattern.constant(-1))], 8)
        self.assertLessEqual(abs(value), dyadic(8))

    def test_random_nets_under_perturbed_representations(self):
        rng = random.Random(1234)
        for index in range(50):
            net = random_relu_net(rng, input_dim=rng.randint(1, 4), depth=rng.randint(1, 3), width=5)
            x = random_point(rng, net.input_dim)
            expected = forward_exact(net, x)
            pattern = SignPattern.seeded(index)
            oracle_net = OracleNet.from_net(net, pattern)
            inputs = [oracle_perturbed(v, pattern.for_coordinate(1000 + i)) for i, v in enumerate(x)]
            for k in (10, 20, 30):
                result = forward_effective(oracle_net, inputs, k)
                for got, want in zip(result, expected):
                    self.assertLessEqual(abs(got - want), dyadic(k))

    def test_error_contract_holds_for_deep_nets(self):
        rng = random.Random(99)
        for depth in range(1, 7):
            net = random_relu_net(rng, input_dim=2, depth=depth, width=3, bound=1)
            x = random_point(rng, 2)
            oracle_net = OracleNet.from_net(net, SignPattern.seeded(depth))
            inputs = [oracle_perturbed(v, SignPattern.seeded(50 + depth).for_coordinate(i)) for i, v in enumerate(x)]
            result = forward_effective(oracle_net, inputs, 16)
            for got, want in zip(result, forward_exact(net, x)):
                self.assertLessEqual(abs(got - want), dyadic(16))

    def test_relu_interval_rule_is_exact_image(self):
        from exact.interval import DyadicInterval
        for lo, hi in [(-3, -1), (-1, 2), (1, 4), (0, 0)]:
            box = DyadicInterval(lo, hi).relu()
            self.assertEqual((box.lo, box.hi), (max(0, lo), max(0, hi)))

    def test_as_effective_map(self):
        net = abs_net()
        oracle_net = OracleNet.from_net(net, SignPattern.seeded(3))
        effective = EffectiveMap(arity_in=1, arity_out=1,
                                 evaluate=lambda inputs, k: forward_effective(oracle_net, inputs, k),
                                 name='abs-net')
        value, = evaluate_effective(effective, [oracle_from_rational(Fraction(-7, 3))], 20)
        self.assertLessEqual(abs(value - Fraction(7, 3)), dyadic(20))
