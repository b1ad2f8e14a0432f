import csv
import json
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path

import mpmath
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings

from bss.machine import Trace
from exact.exceptions import RationalFormatError
from exact.rational import dyadic, parse_rational
from experiments.forms import ExperimentConfigForm, SolveConfigForm, bind_config, bind_solve_config
from experiments.management.commands.bss import parse_inputs
from experiments.models import ExperimentReport
from experiments.oracles import machin_pi, pi_oracle
from experiments.services import config_digest, serializable_config

ABS_NET = settings.BASE_DIR / 'neural' / 'fixtures' / 'abs_net.json'
ABS_PROGRAM = settings.BASE_DIR / 'bss' / 'fixtures' / 'abs_value.json'


class CommandTestMixin:

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, data):
        path = self.dir / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)

    def call(self, *args, **kwargs):
        out, err = StringIO(), StringIO()
        call_command(*args, stdout=out, stderr=err, **kwargs)
        return out.getvalue(), err.getvalue()

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as raised:
            self.call(*args)
        self.assertEqual(raised.exception.returncode, code)
        return raised.exception


class SolveCommandTest(CommandTestMixin, SimpleTestCase):

    def test_soft_threshold(self):
        path = self.write('lasso.json', {'A': [['1', '0']], 'y': ['1'], 'lambda': '1/2'})
        out, _ = self.call('solve', 'lasso2', path)
        result = json.loads(out)
        self.assertEqual(result['minimizer'], ['3/4', '0/1'])
        self.assertTrue(result['certificate']['valid'])
        self.assertEqual(result['status'], 'optimal')

    def test_bp_with_feasible_origin(self):
        path = self.write('bp.json', {'A': [['1', '1']], 'y': ['1/2'], 'epsilon': '1'})
        output = self.dir / 'result.json'
        self.call('solve', 'bp', path, '--output', str(output))
        result = json.loads(output.read_text())
        self.assertEqual(result['minimizer'], ['0/1', '0/1'])
        self.assertEqual(result['objective'], '0/1')

    def test_bp_two_column(self):
        path = self.write('bp.json', {'A': [['1', '1']], 'y': ['1'], 'epsilon': '1/8'})
        out, _ = self.call('solve', 'bp', path)
        self.assertEqual(json.loads(out)['objective'], '7/8')

    def test_bpa_zero_data(self):
        path = self.write('bpa.json', {'A': [['1', '2']], 'y': ['0'], 'epsilon': '1/8'})
        out, _ = self.call('solve', 'bpa', path, '--gamma', '1/4', '--tol', '1/16')
        result = json.loads(out)
        self.assertEqual(result['status'], 'optimal')
        self.assertTrue(result['metadata']['domain_check'])
        lower, upper = (parse_rational(v) for v in result['objective'])
        self.assertLessEqual(upper - lower, Fraction(1, 16))

    def test_bpa_budget_exits_with_failure(self):
        path = self.write('bpa.json', {'A': [['1', '1']], 'y': ['1'], 'epsilon': '1/8'})
        self.assertExitCode(1, 'solve', 'bpa', path, '--gamma', '1/4', '--node-budget', '3')

    def test_config_file_sets_bpa_parameters(self):
        path = self.write('bpa.json', {'A': [['1', '2']], 'y': ['0'], 'epsilon': '1/8'})
        output = self.dir / 'result.json'
        config = self.write('solve.json', {'gamma': '1/4', 'tol': '1/16', 'node_budget': 3, 'output': str(output)})
        self.assertExitCode(1, 'solve', 'bpa', path, '--config', config)
        self.assertEqual(json.loads(output.read_text())['status'], 'budget')
        self.call('solve', 'bpa', path, '--config', config, '--node-budget', '1000000')
        self.assertEqual(json.loads(output.read_text())['status'], 'optimal')

    def test_invalid_config(self):
        path = self.write('bpa.json', {'A': [['1', '2']], 'y': ['0'], 'epsilon': '1/8'})
        self.assertExitCode(2, 'solve', 'bpa', path, '--config', self.write('solve.json', {'tol': '-1'}))
        self.assertExitCode(2, 'solve', 'bpa', path, '--config', self.write('list.json', [1, 2]))
        self.assertExitCode(2, 'solve', 'bpa', path, '--config', str(self.dir / 'absent.json'))
        self.assertExitCode(2, 'solve', 'bpa', path, '--gamma', 'x')

    def test_complex_bpa(self):
        path = self.write('complex.json', {
            'A': [[{'re': '1', 'im': '1'}, '2']], 'y': [{'re': '0', 'im': '0'}], 'epsilon': '1/8'})
        out, _ = self.call('solve', 'bpa', path, '--gamma', '1/2', '--tol', '1/4')
        result = json.loads(out)
        self.assertEqual(result['status'], 'optimal')
        self.assertEqual(len(result['minimizer']), 4)
        self.assertEqual(len(result['metadata']['complex_minimizer']), 2)
        for entry in result['metadata']['complex_minimizer']:
            for part in ('re', 'im'):
                lo, hi = (parse_rational(v) for v in entry[part])
                self.assertTrue(lo <= 0 <= hi)
                self.assertLessEqual(hi - lo, Fraction(1, 4))

    def test_complex_rejected_by_exact_solvers(self):
        path = self.write('complex.json', {
            'A': [[{'re': '1', 'im': '1'}, '2']], 'y': ['1'], 'epsilon': '1/8'})
        error = self.assertExitCode(2, 'solve', 'bp', path)
        self.assertIn('bpa', str(error))
        lasso = self.write('lasso.json', {'A': [[{'re': '1', 'im': '1'}, '2']], 'y': ['1'], 'lambda': '1'})
        self.assertExitCode(2, 'solve', 'lasso2', lasso)

    def test_malformed_json(self):
        path = self.write('bad.json', '{"A": [["1", "0"]], "y": ')
        error = self.assertExitCode(2, 'solve', 'lasso2', path)
        self.assertIn("'json'", str(error))

    def test_malformed_entry_names_field(self):
        path = self.write('bad.json', {'A': [['1', 'x']], 'y': ['1'], 'lambda': '1'})
        error = self.assertExitCode(2, 'solve', 'lasso2', path)
        self.assertIn("'A'", str(error))

    def test_missing_parameter(self):
        path = self.write('bp.json', {'A': [['1', '1']], 'y': ['1'], 'epsilon': '1/8'})
        self.assertExitCode(2, 'solve', 'lasso2', path)

    def test_missing_file(self):
        self.assertExitCode(2, 'solve', 'bp', str(self.dir / 'absent.json'))

    def test_infeasible_instance(self):
        path = self.write('bp.json', {'A': [['1', '1', '1'], ['0', '0', '0']], 'y': ['0', '1'], 'epsilon': '1/2'})
        self.assertExitCode(1, 'solve', 'bp', path)


class TransparencyDemoCommandTest(CommandTestMixin, TestCase):
    flags = ('--k', '10', '--variants', '6', '--generic', '2', '--seed', '7')

    def run_demo(self, tag, *extra):
        json_path, csv_path = self.dir / f'{tag}.json', self.dir / f'{tag}.csv'
        self.call('transparency_demo', *self.flags, *extra, '--output', str(json_path), '--csv', str(csv_path))
        return json_path, csv_path

    def test_verdicts(self):
        json_path, _ = self.run_demo('demo')
        document = json.loads(json_path.read_text())
        self.assertTrue(document['passed'])
        verdicts = {(v['case'], v['candidate']): v['verdict'] for v in document['verdicts']}
        self.assertEqual(verdicts[('family t=0/1', 'naive')], 'violation')
        self.assertEqual(verdicts[('generic 0', 'exact')], 'consistent')
        self.assertEqual(verdicts[('generic 1', 'exact')], 'consistent')
        self.assertTrue(document['metrics']['naive_caught_at_threshold'])
        self.assertGreater(parse_rational(document['metrics']['max_naive_distance']),
                           parse_rational(document['metrics']['tolerance']))

    def test_reruns_are_byte_identical(self):
        first_json, first_csv = self.run_demo('first')
        second_json, second_csv = self.run_demo('second')
        self.assertEqual(first_json.read_bytes(), second_json.read_bytes())
        self.assertEqual(first_csv.read_bytes(), second_csv.read_bytes())
        digests = set(ExperimentReport.objects.values_list('digest', flat=True))
        self.assertEqual(len(digests), 1)
        self.assertEqual(ExperimentReport.objects.count(), 2)

    def test_csv_rows_per_variant(self):
        _, csv_path = self.run_demo('demo')
        with open(csv_path, newline='') as handle:
            rows = list(csv.DictReader(handle))
        # three family cases with two candidates, two generic instances
        self.assertEqual(len(rows), (3 * 2 + 2) * 6)
        self.assertEqual(rows[0]['case'], 'family t=0/1')

    def test_extra_instance(self):
        instance = self.write('instance.json', {'A': [['1', '0', '1'], ['0', '1', '1']], 'y': ['1', '1/2'],
                                                'lambda': '1/2'})
        json_path, _ = self.run_demo('demo', '--instance', instance)
        document = json.loads(json_path.read_text())
        self.assertEqual(document['verdicts'][-1]['case'], 'instance')
        self.assertEqual(document['verdicts'][-1]['verdict'], 'consistent')

    def test_complex_instance_rejected(self):
        instance = self.write('instance.json', {'A': [[{'re': '1', 'im': '1'}, '0']], 'y': ['1'], 'epsilon': '1/8'})
        self.assertExitCode(2, 'transparency_demo', *self.flags, '--instance', instance)
        self.assertEqual(ExperimentReport.objects.count(), 0)

    def test_config_file(self):
        config = self.write('config.json', {'precision': 10, 'variants': 6, 'generic': 2, 'seed': 7})
        json_path = self.dir / 'from_config.json'
        self.call('transparency_demo', '--config', config, '--output', str(json_path))
        flags_path, _ = self.run_demo('from_flags')
        self.assertEqual(json_path.read_bytes(), flags_path.read_bytes())

    def test_too_few_variants(self):
        self.assertExitCode(2, 'transparency_demo', '--variants', '1')
        self.assertEqual(ExperimentReport.objects.count(), 0)

    def test_unreadable_config(self):
        self.assertExitCode(2, 'transparency_demo', '--config', str(self.dir / 'absent.json'))
        self.assertExitCode(2, 'transparency_demo', '--config', self.write('bad.json', '[1, 2'))


class BernsteinCurveCommandTest(CommandTestMixin, TestCase):

    def read_rows(self, path):
        with open(path, newline='') as handle:
            return list(csv.DictReader(handle))

    def test_curve(self):
        csv_path = self.dir / 'curve.csv'
        _, err = self.call('bernstein_curve', '--degrees', '2', '4', '16', '64', '--step', '1/256',
                           '--csv', str(csv_path))
        rows = self.read_rows(csv_path)
        self.assertEqual([int(row['degree']) for row in rows], [2, 4, 16, 64])
        self.assertEqual(rows[0]['error_at_zero'], '1/2')
        self.assertEqual(float(rows[0]['measured_error']), 0.5)
        errors = [float(row['measured_error']) for row in rows]
        self.assertEqual(errors, sorted(errors, reverse=True))
        for row in rows:
            self.assertLessEqual(float(row['measured_error']), float(row['envelope']))
        metrics = json.loads(err.strip().splitlines()[-1])
        self.assertTrue(metrics['monotone'])
        self.assertLess(metrics['slope'], -0.3)
        report = ExperimentReport.objects.get()
        self.assertEqual(report.experiment, 'bernstein_curve')
        self.assertTrue(report.passed)

    def test_empty_degree_list(self):
        self.assertExitCode(2, 'bernstein_curve', '--degrees')
        self.assertExitCode(2, 'bernstein_curve')

    def test_unsorted_degrees(self):
        self.assertExitCode(2, 'bernstein_curve', '--degrees', '8', '4')

    @override_settings(WORKBENCH_BERNSTEIN_DEGREE_CAP=8)
    def test_row_over_cap_is_flagged(self):
        csv_path = self.dir / 'curve.csv'
        self.call('bernstein_curve', '--degrees', '2', '16', '--step', '1/64', '--csv', str(csv_path))
        rows = self.read_rows(csv_path)
        self.assertEqual(rows[0]['flag'], 'ok')
        self.assertEqual(rows[1]['flag'], 'cap_exceeded')
        self.assertEqual(rows[1]['measured_error'], '')

    def test_svg_is_reproducible(self):
        paths = [self.dir / 'a.svg', self.dir / 'b.svg']
        for path in paths:
            self.call('bernstein_curve', '--degrees', '2', '8', '--step', '1/64', '--svg', str(path))
        self.assertTrue(paths[0].read_text().lstrip().startswith('<?xml'))
        self.assertEqual(paths[0].read_bytes(), paths[1].read_bytes())


class BssCommandTest(CommandTestMixin, SimpleTestCase):

    def compile_abs(self):
        program = self.dir / 'abs.json'
        self.call('bss', 'compile-net', str(ABS_NET), '--output', str(program))
        return str(program)

    def sum_program(self):
        return self.write('sum.json', {'entry': 0, 'nodes': [
            {'kind': 'input', 'count': 2, 'next': 1},
            {'kind': 'compute', 'target': 2, 'op': '+', 'args': [0, 1], 'next': 2},
            {'kind': 'output', 'registers': [2, 0]},
        ]})

    def test_compiled_net_runs(self):
        program = self.compile_abs()
        for value, expected in (('-2', 2), ('3/4', Fraction(3, 4)), ('0', 0)):
            out, _ = self.call('bss', 'run', program, '--input', value)
            self.assertEqual(parse_rational(out.strip()), expected)

    def test_fixture_program(self):
        out, _ = self.call('bss', 'run', str(ABS_PROGRAM), '--input=-5/3')
        self.assertEqual(parse_rational(out.strip()), Fraction(5, 3))

    def test_comma_separated_inputs_with_trace(self):
        trace_path = self.dir / 'out.json'
        out, _ = self.call('bss', 'run', self.sum_program(), '--input', '1/2,-3/4', '--trace', str(trace_path))
        self.assertEqual([parse_rational(v) for v in out.split()], [Fraction(-1, 4), Fraction(1, 2)])
        trace = Trace.from_json(json.loads(trace_path.read_text()))
        self.assertEqual(trace.replay(), trace.final_registers)
        self.assertEqual(trace.final_registers[2], Fraction(-1, 4))

    def test_parse_inputs(self):
        self.assertEqual(parse_inputs(' 1/2, -3/4 '), [Fraction(1, 2), Fraction(-3, 4)])
        self.assertEqual(parse_inputs(''), [])
        with self.assertRaises(RationalFormatError):
            parse_inputs('1,,2')

    def test_wrong_arity(self):
        program = self.compile_abs()
        self.assertExitCode(2, 'bss', 'run', program, '--input', '1,2')
        self.assertExitCode(2, 'bss', 'run', self.sum_program(), '--input', '1')

    def test_bad_input_rational(self):
        self.assertExitCode(2, 'bss', 'run', self.sum_program(), '--input', '1/2,x')

    def test_malformed_program(self):
        program = self.write('bad.json', {'nodes': [{'kind': 'teleport'}]})
        self.assertExitCode(2, 'bss', 'run', program, '--input', '1')

    def test_malformed_net(self):
        net = self.write('net.json', {'layers': [{'W': [['1', 'x']], 'b': ['0']}]})
        self.assertExitCode(2, 'bss', 'compile-net', net)

    def test_step_limit(self):
        program = self.compile_abs()
        self.assertExitCode(1, 'bss', 'run', program, '--input', '1', '--max-steps', '2')

    def test_trace_replays(self):
        program = self.compile_abs()
        trace_path = self.dir / 'trace.json'
        self.call('bss', 'run', program, '--input', '-2', '--trace', str(trace_path))
        trace = Trace.from_json(json.loads(trace_path.read_text()))
        self.assertEqual(trace.replay(), trace.final_registers)
        self.assertIn(Fraction(2), trace.final_registers.values())


class PiOracleTest(CommandTestMixin, SimpleTestCase):

    def assertWithin(self, value, k):
        with mpmath.workdps(k // 3 + 30):
            distance = abs(mpmath.mpf(value.numerator) / value.denominator - mpmath.pi)
            self.assertLessEqual(distance, mpmath.mpf(2) ** -k)

    def test_machin_accuracy(self):
        for k in (0, 1, 10, 53, 200):
            self.assertWithin(machin_pi(k), k)

    def test_enclosure_contains_pi(self):
        box = pi_oracle().enclosure(30)
        self.assertLessEqual(box.width, 2 * dyadic(30))
        with mpmath.workdps(40):
            self.assertLessEqual(mpmath.mpf(box.lo.numerator) / box.lo.denominator, mpmath.pi)
            self.assertGreaterEqual(mpmath.mpf(box.hi.numerator) / box.hi.denominator, mpmath.pi)

    def test_command(self):
        out, _ = self.call('pi', '--k', '40')
        data = json.loads(out)
        self.assertWithin(parse_rational(data['approximation']), 40)
        self.assertTrue(data['decimal'].startswith('3.14159265358'))

    def test_negative_precision(self):
        self.assertExitCode(2, 'pi', '--k', '-1')


class ExperimentConfigFormTest(SimpleTestCase):

    def test_defaults(self):
        form = ExperimentConfigForm({'experiment': 'transparency_demo'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['precision'], 10)
        self.assertEqual(form.cleaned_data['epsilon'], Fraction(1, 8))

    def test_invalid_fields(self):
        form = ExperimentConfigForm({'experiment': 'transparency_demo', 'epsilon': 'x/2', 'precision': 0})
        self.assertFalse(form.is_valid())
        self.assertIn('epsilon', form.errors)
        self.assertIn('precision', form.errors)

    def test_unknown_experiment(self):
        self.assertFalse(ExperimentConfigForm({'experiment': 'sorting'}).is_valid())

    def test_flags_override_file(self):
        form = bind_config('transparency_demo', json.dumps({'seed': 1, 'variants': 4}), {'seed': 5, 'variants': None})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['seed'], 5)
        self.assertEqual(form.cleaned_data['variants'], 4)

    def test_digest_is_stable(self):
        form = bind_config('bernstein_curve', None, {'degrees': [2, 4], 'beta': '2/4', 'csv_output': 'a.csv'})
        self.assertTrue(form.is_valid(), form.errors)
        config = form.cleaned_data
        reserialized = json.loads(json.dumps(serializable_config(config)))
        self.assertEqual(config_digest(config), config_digest(reserialized))
        self.assertEqual(reserialized['beta'], '1/2')
        self.assertNotIn('csv_output', reserialized)
        moved = dict(config, csv_output='elsewhere.csv')
        self.assertEqual(config_digest(config), config_digest(moved))

    def test_solve_config_defaults(self):
        form = SolveConfigForm({})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['beta'], 1)
        self.assertEqual(form.cleaned_data['gamma'], Fraction(1, 16))
        self.assertIsNone(form.cleaned_data['node_budget'])
        self.assertIsNone(form.cleaned_data['output'])

    def test_solve_flags_override_file(self):
        form = bind_solve_config(json.dumps({'tol': '1/8', 'node_budget': 10}), {'tol': '1/32', 'gamma': None})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['tol'], Fraction(1, 32))
        self.assertEqual(form.cleaned_data['node_budget'], 10)
        self.assertFalse(bind_solve_config(None, {'node_budget': 0}).is_valid())
