import json
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from experiments.forms import bind_config
from experiments.services import (TRANSPARENCY_COLUMNS, run_experiment, run_transparency_demo, save_report,
                                  write_csv, write_json)
from invprob.exceptions import InstanceFormatError

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Runs the naive BP heuristic and the exact solver wrapper over representation variants."

    def add_arguments(self, parser):
        parser.add_argument('--config', help="JSON config file; flags override its keys")
        parser.add_argument('--seed', type=int)
        parser.add_argument('--k', dest='precision', type=int, help="requested output precision")
        parser.add_argument('--variants', type=int)
        parser.add_argument('--generic', type=int, help="number of random generic instances")
        parser.add_argument('--epsilon')
        parser.add_argument('--instance', dest='instance_file', help="extra instance checked with the exact wrapper")
        parser.add_argument('--output', dest='json_output')
        parser.add_argument('--csv', dest='csv_output')

    def handle(self, *args, **options):
        overrides = {key: options[key] for key in ('seed', 'precision', 'variants', 'generic', 'epsilon',
                                                   'instance_file', 'json_output', 'csv_output')}
        try:
            text = Path(options['config']).read_text() if options['config'] else None
            form = bind_config('transparency_demo', text, overrides)
        except (OSError, ValueError) as exc:
            raise CommandError(f"cannot read config: {exc}", returncode=2)
        if not form.is_valid():
            raise CommandError(f"invalid config:\n{form.errors.as_text()}", returncode=2)
        config = form.cleaned_data

        try:
            outcome = run_experiment(run_transparency_demo, config)
        except InstanceFormatError as exc:
            raise CommandError(f"malformed instance: {exc}", returncode=2)
        save_report(outcome)
        document = outcome.to_json()
        if config['json_output']:
            write_json(config['json_output'], document)
        else:
            self.stdout.write(json.dumps(document, indent=2))
        if config['csv_output']:
            write_csv(config['csv_output'], TRANSPARENCY_COLUMNS, outcome.rows)

        for verdict in outcome.verdicts:
            self.stderr.write(f"{verdict['case']:<24} {verdict['candidate']:<6} {verdict['verdict']}")
        if not outcome.passed:
            raise CommandError("transparency demo did not reproduce the expected verdicts", returncode=1)
        self.stderr.write(self.style.SUCCESS(f"transparency demo passed ({outcome.digest[:12]})"))
