"""Solvers as effective maps on representations of (A, y).

The inputs of every map are the entries of A in row-major order followed by
y. The exact wrapper snapshots the inputs deeper as the requested precision
grows; the naive heuristic always reads them at one fixed depth.
"""
import logging

from django.conf import settings

from exact.scalars import approximate
from invprob.basis_pursuit import solve_bp
from invprob.exceptions import InverseProblemError
from invprob.homotopy import solve_lasso2_homotopy
from invprob.instance import Instance
from turing.effective import EffectiveMap
from turing.exceptions import EffectiveEvaluationError

logger = logging.getLogger(__name__)

SOLVERS = {
    'bp': solve_bp,
    'lasso2': solve_lasso2_homotopy,
}


def _solve_snapshot(solver, values, m, N, param):
    A = [values[i * N:(i + 1) * N] for i in range(m)]
    y = values[m * N:m * N + m]
    try:
        return solver(A, y, param)
    except InverseProblemError as exc:
        raise EffectiveEvaluationError(f"solver failed on snapshot: {exc}") from exc


def _snapshot_map(solver, m, N, param, depth_of, name):
    def evaluate(inputs, k):
        depth = depth_of(k)
        values = [oracle.query(depth) for oracle in inputs]
        result = _solve_snapshot(solver, values, m, N, param)
        # one extra bit keeps two runs on nearby snapshots within 2 * 2^-k
        return [approximate(value, k + 1) for value in result.minimizer]

    return EffectiveMap(arity_in=m * N + m, arity_out=N, evaluate=evaluate, name=name)


def snapshot_solver_map(problem, m, N, param, margin=None):
    """Exact solver applied to a rational snapshot read at depth k + margin."""
    margin = settings.WORKBENCH_SNAPSHOT_MARGIN if margin is None else margin
    return _snapshot_map(SOLVERS[problem], m, N, param, lambda k: k + margin, f"exact-{problem}")


def naive_bp_map(m, N, epsilon, precision=None):
    """BP solved on inputs read at a fixed depth, whatever k is asked for."""
    precision = settings.WORKBENCH_NAIVE_SNAPSHOT_PRECISION if precision is None else precision
    return _snapshot_map(solve_bp, m, N, epsilon, lambda k: precision, f"naive-bp@{precision}")


def instance_map(problem, instance, naive=False):
    if naive:
        return naive_bp_map(instance.m, instance.N, instance.epsilon)
    param = instance.epsilon if problem == 'bp' else instance.lam
    return snapshot_solver_map(problem, instance.m, instance.N, param)


def instance_input(instance: Instance):
    return instance.flatten()
