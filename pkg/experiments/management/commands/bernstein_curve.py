import json
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from experiments.forms import bind_config
from experiments.services import (CURVE_COLUMNS, bernstein_curve, render_curve_svg, run_experiment, save_report,
                                  write_csv, write_json)


class Command(BaseCommand):
    help = "Measures the Bernstein approximation error of |t| over a list of degrees."

    def add_arguments(self, parser):
        parser.add_argument('--config', help="JSON config file; flags override its keys")
        parser.add_argument('--N', dest='dimension', type=int)
        parser.add_argument('--beta')
        parser.add_argument('--step', help="grid step on [0, R]")
        parser.add_argument('--degrees', nargs='*', type=int)
        parser.add_argument('--output', dest='json_output')
        parser.add_argument('--csv', dest='csv_output')
        parser.add_argument('--svg', dest='svg_output')

    def handle(self, *args, **options):
        overrides = {key: options[key] for key in ('dimension', 'beta', 'step', 'degrees',
                                                   'json_output', 'csv_output', 'svg_output')}
        try:
            text = Path(options['config']).read_text() if options['config'] else None
            form = bind_config('bernstein_curve', text, overrides)
        except (OSError, ValueError) as exc:
            raise CommandError(f"cannot read config: {exc}", returncode=2)
        if not form.is_valid():
            raise CommandError(f"invalid config:\n{form.errors.as_text()}", returncode=2)
        config = form.cleaned_data

        outcome = run_experiment(bernstein_curve, config)
        save_report(outcome)
        if config['csv_output']:
            write_csv(config['csv_output'], CURVE_COLUMNS, outcome.rows)
        else:
            self.stdout.write(','.join(CURVE_COLUMNS))
            for row in outcome.rows:
                self.stdout.write(','.join(str(row[column]) for column in CURVE_COLUMNS))
        if config['json_output']:
            write_json(config['json_output'], outcome.to_json())
        if config['svg_output']:
            render_curve_svg(outcome.rows, config['svg_output'])
        self.stderr.write(json.dumps(outcome.metrics))
        if not outcome.passed:
            raise CommandError("measured errors are not monotone or exceed the envelope", returncode=1)
