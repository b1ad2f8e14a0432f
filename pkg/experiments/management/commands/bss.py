import json
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from bss.compiler import compile_relu_net
from bss.exceptions import BssError, CompileError, InputArityError, ProgramParseError
from bss.machine import run
from bss.program import parse_program, program_to_json
from exact.exceptions import RationalFormatError
from exact.rational import parse_rational
from exact.scalars import scalar_to_json
from neural.exceptions import NetworkError
from neural.network import NeuralNet

logger = logging.getLogger(__name__)


def parse_inputs(text):
    """Comma-separated rationals such as "1/2,-3/4"; an empty string is no input."""
    text = text.strip()
    return [parse_rational(value) for value in text.split(',')] if text else []


class Command(BaseCommand):
    help = "Runs BSS programs and compiles ReLU networks into them."

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='action', required=True)
        run_parser = subparsers.add_parser('run', help="run a program on rational inputs")
        run_parser.add_argument('program', help="program JSON file")
        run_parser.add_argument('--input', default='', help='comma-separated rationals such as "1/2,-3/4"')
        run_parser.add_argument('--trace', help="write the replayable trace JSON here")
        run_parser.add_argument('--max-steps', type=int)
        compile_parser = subparsers.add_parser('compile-net', help="compile a ReLU network")
        compile_parser.add_argument('net', help="network JSON file")
        compile_parser.add_argument('--output', help="write the program JSON here instead of stdout")

    def _read(self, path):
        try:
            return Path(path).read_text()
        except OSError as exc:
            raise CommandError(f"cannot read {path}: {exc}", returncode=2)

    def handle(self, *args, **options):
        if options['action'] == 'compile-net':
            self.compile_net(options)
        else:
            self.run_program(options)

    def compile_net(self, options):
        try:
            net = NeuralNet.from_json(self._read(options['net']))
            program = compile_relu_net(net)
        except (NetworkError, CompileError) as exc:
            raise CommandError(f"cannot compile {options['net']}: {exc}", returncode=2)
        document = json.dumps(program_to_json(program), indent=2)
        if options['output']:
            Path(options['output']).write_text(document + '\n')
            logger.info("Compiled %s into %s nodes at %s", options['net'], len(program.nodes), options['output'])
        else:
            self.stdout.write(document)

    def run_program(self, options):
        try:
            program = parse_program(self._read(options['program']))
        except ProgramParseError as exc:
            raise CommandError(f"invalid program: {exc}", returncode=2)
        try:
            inputs = parse_inputs(options['input'])
        except RationalFormatError as exc:
            raise CommandError(f"invalid input: {exc}", returncode=2)
        try:
            outputs, trace = run(program, inputs, max_steps=options['max_steps'])
        except InputArityError as exc:
            raise CommandError(str(exc), returncode=2)
        except BssError as exc:
            raise CommandError(f"run failed: {exc}", returncode=1)
        if options['trace']:
            Path(options['trace']).write_text(json.dumps(trace.to_json(), indent=2) + '\n')
        self.stdout.write(' '.join(str(scalar_to_json(value)) for value in outputs))
