import json
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from experiments.forms import bind_solve_config
from invprob.basis_pursuit import solve_bp
from invprob.bernstein import build_bernstein_l1
from invprob.branch_bound import check_bpa_domain, solve_bpa_branch_bound
from invprob.exceptions import InstanceFormatError, InverseProblemError
from invprob.homotopy import solve_lasso2_homotopy
from invprob.instance import Instance, split_complex

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Solves an inverse problem instance exactly and prints its certificate."

    def add_arguments(self, parser):
        parser.add_argument('problem', choices=['lasso2', 'bp', 'bpa'])
        parser.add_argument('instance', help="instance JSON file")
        parser.add_argument('--config', help="JSON file with beta, gamma, tol, node_budget, output")
        parser.add_argument('--output', help="write the result JSON here instead of stdout")
        parser.add_argument('--beta', help="BP-A ball radius per coordinate (default 1)")
        parser.add_argument('--gamma', help="BP-A approximation accuracy (default 1/16)")
        parser.add_argument('--tol', help="BP-A box width and objective gap (default 1/16)")
        parser.add_argument('--node-budget', type=int)

    def _config(self, options):
        overrides = {key: options[key] for key in ('beta', 'gamma', 'tol', 'node_budget', 'output')}
        try:
            text = Path(options['config']).read_text() if options['config'] else None
            form = bind_solve_config(text, overrides)
        except (OSError, ValueError) as exc:
            raise CommandError(f"cannot read config: {exc}", returncode=2)
        if not form.is_valid():
            raise CommandError(f"invalid config:\n{form.errors.as_text()}", returncode=2)
        return form.cleaned_data

    def _load(self, path, problem):
        try:
            instance = Instance.from_json(Path(path).read_text())
            if problem != 'bpa':
                instance.require_real(problem)
        except OSError as exc:
            raise CommandError(f"cannot read instance: {exc}", returncode=2)
        except InstanceFormatError as exc:
            raise CommandError(f"malformed instance: {exc}", returncode=2)
        needed = 'lam' if problem == 'lasso2' else 'epsilon'
        if getattr(instance, needed) is None:
            name = 'lambda' if needed == 'lam' else 'epsilon'
            raise CommandError(f"{problem} needs an instance with '{name}'", returncode=2)
        return instance

    def _solve_bpa(self, instance, config):
        p = build_bernstein_l1(instance.N, config['beta'], config['gamma'])
        domain = check_bpa_domain(instance.A, instance.y, instance.epsilon, p)
        if not domain['valid']:
            logger.warning("BP-A minimizers may leave the ball of radius sqrt(N) * beta; increase --beta")
        result = solve_bpa_branch_bound(instance.A, instance.y, instance.epsilon, p, config['tol'],
                                        node_budget=config['node_budget'])
        result.metadata['domain_check'] = domain['valid']
        result.metadata['bp_objective'] = domain['bp_objective']
        if instance.is_complex:
            result.metadata['complex_minimizer'] = [
                {'re': re.to_json(), 'im': im.to_json()} for re, im in split_complex(result.minimizer)
            ]
            if 'point' in result.metadata:
                result.metadata['complex_point'] = [
                    {'re': re, 'im': im} for re, im in split_complex(result.metadata['point'])
                ]
        return result

    def handle(self, *args, **options):
        problem = options['problem']
        config = self._config(options)
        instance = self._load(options['instance'], problem)
        try:
            if problem == 'lasso2':
                result = solve_lasso2_homotopy(instance.A, instance.y, instance.lam)
            elif problem == 'bp':
                result = solve_bp(instance.A, instance.y, instance.epsilon)
            else:
                result = self._solve_bpa(instance, config)
        except (InverseProblemError, ValueError) as exc:
            raise CommandError(f"{problem} solver failed: {exc}", returncode=1)

        document = json.dumps(result.to_json(), indent=2)
        if config['output']:
            Path(config['output']).write_text(document + '\n')
            logger.info("Wrote %s result to %s", problem, config['output'])
        else:
            self.stdout.write(document)
        if not result.certified:
            raise CommandError(f"{problem} result is not certified (status {result.status})", returncode=1)
