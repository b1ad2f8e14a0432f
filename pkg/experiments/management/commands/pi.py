import json

import mpmath
from django.core.management.base import BaseCommand, CommandError

from exact.rational import format_rational
from experiments.oracles import pi_oracle


class Command(BaseCommand):
    help = "Prints a 2^-k approximation of pi from the Machin oracle."

    def add_arguments(self, parser):
        parser.add_argument('--k', type=int, default=64)

    def handle(self, *args, **options):
        k = options['k']
        if k < 0:
            raise CommandError("--k must be non-negative", returncode=2)
        oracle = pi_oracle()
        value = oracle(k)
        box = oracle.enclosure(k)
        digits = max(15, int(k * 0.30103) + 2)
        with mpmath.workdps(digits):
            decimal = mpmath.nstr(mpmath.mpf(value.numerator) / value.denominator, digits)
        self.stdout.write(json.dumps({
            'precision': k,
            'approximation': format_rational(value),
            'enclosure': box.to_json(),
            'decimal': decimal,
        }, indent=2))
