import csv
import hashlib
import json
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import matplotlib
import numpy as np
from django.conf import settings
from matplotlib.figure import Figure

from exact.rational import format_rational, format_vector
from experiments.models import ExperimentReport
from invprob.bernstein import BernsteinApprox, radius_upper_bound
from invprob.effective import instance_input, naive_bp_map, snapshot_solver_map
from invprob.families import JUMP, THRESHOLD, discontinuity_family
from invprob.instance import Instance, random_instance
from turing.transparency import check_transparency, consistency_tolerance, variant_patterns

logger = logging.getLogger(__name__)

FAMILY_OFFSETS = (Fraction(0), Fraction(-1, 1024), Fraction(1, 1024))

TRANSPARENCY_COLUMNS = ['case', 'candidate', 'verdict', 'variant', 'pattern', 'output']
CURVE_COLUMNS = ['degree', 'measured_error', 'error_at_zero', 'envelope', 'ratio', 'flag']

SVG_HASHSALT = 'realsolve'


def canonical_json(data):
    return json.dumps(data, sort_keys=True, separators=(',', ':'))


def serializable_config(config):
    """Experiment parameters only; output paths do not enter the digest."""
    data = {}
    for key, value in config.items():
        if key.endswith('_output') or value is None:
            continue
        data[key] = format_rational(value) if isinstance(value, Fraction) else value
    return data


def config_digest(config):
    return hashlib.sha256(canonical_json(serializable_config(config)).encode()).hexdigest()


def write_json(path, data):
    Path(path).write_text(json.dumps(data, indent=2) + '\n')
    logger.info("Wrote %s", path)


def write_csv(path, columns, rows):
    with open(path, 'w', newline='') as handle:
        writer = csv.DictWriter(handle, fieldnames=columns, lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
    logger.info("Wrote %s rows to %s", len(rows), path)


@dataclass
class ExperimentOutcome:
    experiment: str
    digest: str
    config: dict
    metrics: dict
    verdicts: list
    passed: bool
    rows: list = field(default_factory=list)
    reports: list = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self):
        data = {
            'experiment': self.experiment,
            'digest': self.digest,
            'config': self.config,
            'metrics': self.metrics,
            'verdicts': self.verdicts,
            'passed': self.passed,
        }
        if self.reports:
            data['reports'] = self.reports
        return data


def load_instance(config):
    if config.get('instance'):
        return Instance.from_json(config['instance'])
    if config.get('instance_file'):
        return Instance.from_json(Path(config['instance_file']).read_text())
    return None


def _transparency_cases(config):
    epsilon = config['epsilon']
    cases = []
    for offset in FAMILY_OFFSETS:
        t = THRESHOLD + offset
        instance = discontinuity_family(t, epsilon)
        cases.append((f"family t={format_rational(t)}", instance, [
            ('naive', naive_bp_map(instance.m, instance.N, epsilon)),
            ('exact', snapshot_solver_map('bp', instance.m, instance.N, epsilon)),
        ]))
    rng = random.Random(config['seed'])
    for index in range(config['generic']):
        instance = random_instance(rng, 2, 3, epsilon=epsilon)
        cases.append((f"generic {index}", instance, [
            ('exact', snapshot_solver_map('bp', instance.m, instance.N, epsilon)),
        ]))
    extra = load_instance(config)
    if extra is not None:
        problem = 'bp' if extra.epsilon is not None else 'lasso2'
        extra.require_real(problem)
        param = extra.epsilon if problem == 'bp' else extra.lam
        cases.append(('instance', extra, [('exact', snapshot_solver_map(problem, extra.m, extra.N, param))]))
    return cases


def run_transparency_demo(config):
    """Naive heuristic against the exact wrapper over representation variants.

    Passes when the heuristic is caught at the threshold of the discontinuity
    family and the exact wrapper stays consistent on every generic instance.
    """
    k = config['precision']
    patterns = variant_patterns(config['variants'], seed=config['seed'])
    cases = _transparency_cases(config)

    def check(case):
        name, instance, candidates = case
        x = instance_input(instance)
        return [(name, kind, check_transparency(candidate, x, patterns, k)) for kind, candidate in candidates]

    workers = settings.WORKBENCH_MAX_WORKERS
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            checked = [item for batch in executor.map(check, cases) for item in batch]
    else:
        checked = [item for case in cases for item in check(case)]

    verdicts, rows, reports = [], [], []
    threshold_case = f"family t={format_rational(THRESHOLD)}"
    naive_caught = False
    generic_total = generic_consistent = 0
    widest = Fraction(0)
    for name, kind, report in checked:
        logger.info("%s / %s: %s", name, kind, report.verdict)
        verdicts.append({'case': name, 'candidate': kind, 'verdict': report.verdict, 'witness': report.witness})
        reports.append(dict(report.to_json(), case=name))
        for outcome in report.outcomes:
            rows.append({
                'case': name,
                'candidate': kind,
                'verdict': report.verdict,
                'variant': outcome.variant,
                'pattern': outcome.pattern,
                'output': outcome.error if outcome.error is not None else ' '.join(format_vector(outcome.outputs)),
            })
        if kind == 'naive':
            widest = max(widest, Fraction(report.metrics.get('max_distance', 0)))
            if name == threshold_case and report.is_violation:
                naive_caught = True
        if name.startswith('generic'):
            generic_total += 1
            generic_consistent += not report.is_violation

    metrics = {
        'precision': k,
        'variants': len(patterns),
        'tolerance': format_rational(consistency_tolerance(k)),
        'jump': format_rational(JUMP),
        'naive_caught_at_threshold': naive_caught,
        'max_naive_distance': format_rational(widest),
        'generic_instances': generic_total,
        'generic_consistent': generic_consistent,
    }
    passed = naive_caught and generic_consistent == generic_total
    return ExperimentOutcome(
        experiment='transparency_demo',
        digest=config_digest(config),
        config=serializable_config(config),
        metrics=metrics,
        verdicts=verdicts,
        passed=passed,
        rows=rows,
        reports=reports,
    )


def bernstein_curve(config):
    """Measured sup error of the Bernstein approximation against R / sqrt(n)."""
    dimension, beta, step = config['dimension'], config['beta'], config['step']
    cap = settings.WORKBENCH_BERNSTEIN_DEGREE_CAP
    radius = radius_upper_bound(dimension, beta)
    rows, verdicts, measured = [], [], []
    for degree in config['degrees']:
        envelope = float(radius) / np.sqrt(degree)
        if degree > cap:
            logger.warning("Degree %s exceeds the cap %s, skipped", degree, cap)
            rows.append({'degree': degree, 'measured_error': '', 'error_at_zero': '',
                         'envelope': f"{envelope:.12g}", 'ratio': '', 'flag': 'cap_exceeded'})
            verdicts.append({'degree': degree, 'verdict': 'cap_exceeded'})
            continue
        approx = BernsteinApprox.of_degree(degree, dimension=dimension, beta=beta)
        error = float(approx.grid_sup_error(step))
        at_zero = approx.evaluate_coordinate(0)
        measured.append((degree, error))
        within = error <= envelope
        rows.append({
            'degree': degree,
            'measured_error': f"{error:.12g}",
            'error_at_zero': format_rational(at_zero),
            'envelope': f"{envelope:.12g}",
            'ratio': f"{error / envelope:.6f}",
            'flag': 'ok' if within else 'above_envelope',
        })
        verdicts.append({'degree': degree, 'verdict': 'ok' if within else 'above_envelope'})
        logger.info("Bernstein degree %s: sup error %.6g, envelope %.6g", degree, error, envelope)

    errors = [error for _, error in measured]
    slope = None
    if len(measured) >= 2:
        degrees = np.array([degree for degree, _ in measured], dtype=float)
        slope = float(np.polyfit(np.log(degrees), np.log(np.array(errors)), 1)[0])
    metrics = {
        'dimension': dimension,
        'beta': format_rational(beta),
        'radius': format_rational(radius),
        'step': format_rational(step),
        'degrees': list(config['degrees']),
        'slope': None if slope is None else round(slope, 6),
        'monotone': all(a >= b for a, b in zip(errors, errors[1:])),
    }
    passed = metrics['monotone'] and not any(v['verdict'] == 'above_envelope' for v in verdicts)
    return ExperimentOutcome(
        experiment='bernstein_curve',
        digest=config_digest(config),
        config=serializable_config(config),
        metrics=metrics,
        verdicts=verdicts,
        passed=passed,
        rows=rows,
    )


def render_curve_svg(rows, path):
    """Log-log plot of measured error and envelope; byte-stable across runs."""
    measured = [(row['degree'], float(row['measured_error'])) for row in rows if row['measured_error']]
    envelope = [(row['degree'], float(row['envelope'])) for row in rows]
    with matplotlib.rc_context({'svg.hashsalt': SVG_HASHSALT, 'svg.fonttype': 'none'}):
        figure = Figure(figsize=(6, 4))
        axes = figure.add_subplot()
        if measured:
            axes.loglog(*zip(*measured), marker='o', label='measured sup error')
        axes.loglog(*zip(*envelope), linestyle='--', label='R / sqrt(n)')
        axes.set_xlabel('degree n')
        axes.set_ylabel('error')
        axes.legend()
        figure.savefig(path, format='svg', metadata={'Date': None})
    logger.info("Wrote %s", path)


def run_experiment(runner, config):
    started = time.perf_counter()
    outcome = runner(config)
    outcome.wall_time = time.perf_counter() - started
    return outcome


def save_report(outcome):
    report = ExperimentReport.objects.create(
        experiment=outcome.experiment,
        digest=outcome.digest,
        metrics=outcome.metrics,
        verdicts=outcome.verdicts,
        passed=outcome.passed,
        wall_time=outcome.wall_time,
    )
    logger.info("Saved report %s in %.3fs", report, outcome.wall_time)
    return report
