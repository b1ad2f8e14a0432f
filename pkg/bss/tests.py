import json
import random
from fractions import Fraction
from pathlib import Path

from django.test import SimpleTestCase

from bss.compiler import compile_relu_net
from bss.exceptions import BssRuntimeError, CompileError, InputArityError, NonTerminationError, ProgramParseError
from bss.machine import Trace, run
from bss.program import parse_program, program_to_json
from exact.quadext import QuadExt
from neural.network import NeuralNet, forward_exact, random_relu_net

FIXTURES = Path(__file__).resolve().parent / 'fixtures'


def abs_program():
    return parse_program((FIXTURES / 'abs_value.json').read_text())


class ParseProgramTest(SimpleTestCase):

    def test_abs_program(self):
        self.assertEqual(len(abs_program().nodes), 4)

    def test_dangling_target(self):
        text = json.dumps({'nodes': [
            {'kind': 'input', 'count': 1},
            {'kind': 'branch', 'register': 0, 'predicate': '<0', 'true': 7, 'false': 2},
            {'kind': 'output', 'registers': [0]},
        ]})
        with self.assertRaises(ProgramParseError) as ctx:
            parse_program(text)
        self.assertIn('dangling target', str(ctx.exception))
        self.assertEqual(ctx.exception.issues[0].location, 'nodes[1].true')

    def test_unknown_op(self):
        text = json.dumps({'nodes': [
            {'kind': 'input', 'count': 1},
            {'kind': 'compute', 'target': 0, 'op': '^', 'args': [0, 0]},
            {'kind': 'output', 'registers': [0]},
        ]})
        with self.assertRaises(ProgramParseError) as ctx:
            parse_program(text)
        self.assertEqual(ctx.exception.issues[0].location, 'nodes[1].op')

    def test_uninitialized_register_on_one_path(self):
        text = json.dumps({'nodes': [
            {'kind': 'input', 'count': 1},
            {'kind': 'branch', 'register': 0, 'predicate': '>0', 'true': 2, 'false': 3},
            {'kind': 'compute', 'target': 1, 'op': '+', 'args': [0, 0]},
            {'kind': 'output', 'registers': [1]},
        ]})
        with self.assertRaises(ProgramParseError) as ctx:
            parse_program(text)
        self.assertIn('register 1 may be uninitialized', str(ctx.exception))

    def test_division_by_constant_zero_fails_at_run(self):
        program = parse_program(json.dumps({'nodes': [
            {'kind': 'input', 'count': 1},
            {'kind': 'compute', 'target': 0, 'op': '÷', 'args': [0, {'const': '0'}]},
            {'kind': 'output', 'registers': [0]},
        ]}))
        with self.assertRaises(BssRuntimeError) as ctx:
            run(program, [Fraction(1)])
        self.assertEqual(ctx.exception.node, 1)

    def test_round_trip(self):
        program = abs_program()
        self.assertEqual(parse_program(json.dumps(program_to_json(program))), program)


class RunTest(SimpleTestCase):

    def test_abs(self):
        outputs, _ = run(abs_program(), [Fraction(-3, 2)])
        self.assertEqual(outputs, [Fraction(3, 2)])
        outputs, _ = run(abs_program(), [Fraction(0)])
        self.assertEqual(outputs, [0])

    def test_quadratic_field_inputs(self):
        outputs, _ = run(abs_program(), [QuadExt(1, -1, 2)])
        self.assertEqual(outputs, [QuadExt(-1, 1, 2)])

    def test_input_arity(self):
        with self.assertRaises(InputArityError):
            run(abs_program(), [1, 2])

    def test_non_termination(self):
        program = parse_program(json.dumps({'nodes': [
            {'kind': 'input', 'count': 1},
            {'kind': 'compute', 'target': 0, 'op': '+', 'args': [0, {'const': '1'}]},
            {'kind': 'branch', 'register': 0, 'predicate': '=0', 'true': 3, 'false': 1},
            {'kind': 'output', 'registers': [0]},
        ]}))
        with self.assertRaises(NonTerminationError):
            run(program, [Fraction(1, 2)], max_steps=1000)
        outputs, _ = run(program, [Fraction(-3)], max_steps=1000)
        self.assertEqual(outputs, [0])

    def test_trace_replay(self):
        _, trace = run(abs_program(), [Fraction(-7, 4)])
        self.assertEqual(trace.replay(), trace.final_registers)
        restored = Trace.from_json(json.loads(json.dumps(trace.to_json())))
        self.assertEqual(restored.replay(), trace.final_registers)
        _, again = run(abs_program(), [Fraction(-7, 4)])
        self.assertEqual(again.to_json(), trace.to_json())


class CompileReluNetTest(SimpleTestCase):

    def test_identity_net(self):
        program = compile_relu_net(NeuralNet.from_lists([([[1]], [0])]))
        self.assertEqual(run(program, [Fraction(5, 9)])[0], [Fraction(5, 9)])

    def test_absolute_value_net(self):
        net = NeuralNet.from_lists([([[1], [-1]], [0, 0]), ([[1, 1]], [0])])
        self.assertEqual(run(compile_relu_net(net), [Fraction(-2)])[0], [2])

    def test_size_is_linear_in_weights(self):
        net = random_relu_net(8, input_dim=4, depth=3, width=5)
        weights = sum(layer.out_dim * layer.in_dim for layer in net.layers)
        neurons = sum(layer.out_dim for layer in net.layers)
        self.assertLessEqual(len(compile_relu_net(net).nodes), 2 * weights + 3 * neurons + 2)

    def test_non_rational_parameter(self):
        net = NeuralNet.from_lists([([[1]], [0])])
        object.__setattr__(net.layers[0], 'bias', (0.5,))
        with self.assertRaises(CompileError):
            compile_relu_net(net)

    def test_random_equivalence(self):
        rng = random.Random(2024)
        for _ in range(100):
            net = random_relu_net(rng, input_dim=rng.randint(1, 4), depth=rng.randint(1, 3), width=5)
            x = [Fraction(rng.randint(-30, 30), rng.randint(1, 12)) for _ in range(net.input_dim)]
            outputs, _ = run(compile_relu_net(net), x)
            self.assertEqual(outputs, forward_exact(net, x))
