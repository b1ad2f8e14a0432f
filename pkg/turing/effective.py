"""Effective maps: guaranteed-precision evaluation on representation oracles."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from django.conf import settings

from exact.exceptions import PrecisionRefinementRequired
from exact.oracle import RealOracle
from exact.rational import as_rational, dyadic
from turing.exceptions import DomainViolation, EffectiveEvaluationError, PrecisionExhausted
from turing.expressions import Expr

logger = logging.getLogger(__name__)


def default_query_budget(k):
    return settings.WORKBENCH_QUERY_BUDGET_SLOPE * k + settings.WORKBENCH_QUERY_BUDGET_OFFSET


class BudgetedOracle:
    """Oracle wrapper refusing queries deeper than a fixed budget."""

    def __init__(self, oracle, budget):
        self.oracle = oracle
        self.budget = budget
        self.deepest = -1

    @property
    def exact(self):
        return self.oracle.exact

    @property
    def label(self):
        return self.oracle.label

    def _check(self, k):
        if k > self.budget:
            raise PrecisionExhausted(k, self.budget, f"oracle {self.oracle.label} queried at depth {k}")
        self.deepest = max(self.deepest, k)

    def query(self, k):
        self._check(k)
        return self.oracle.query(k)

    __call__ = query

    def enclosure(self, k):
        self._check(k)
        return self.oracle.enclosure(k)


@dataclass(frozen=True)
class EffectiveMap:
    arity_in: int
    arity_out: int
    evaluate: Callable[[Sequence[RealOracle], int], Sequence[Fraction]]
    name: str = ''

    @classmethod
    def from_expressions(cls, expressions, arity_in, name=''):
        expressions = list(expressions)

        def evaluate(inputs, k):
            return refine_loop(expressions, inputs, k)

        return cls(arity_in=arity_in, arity_out=len(expressions), evaluate=evaluate, name=name)

    @classmethod
    def constant(cls, values, arity_in, name='constant'):
        values = [as_rational(v) for v in values]
        return cls(arity_in=arity_in, arity_out=len(values), evaluate=lambda inputs, k: list(values), name=name)


def evaluate_effective(effective_map, inputs, k, budget=None):
    """Evaluate an effective map to within 2^{-k} per output coordinate."""
    if k < 0:
        raise DomainViolation(f"precision must be non-negative, got {k}")
    if len(inputs) != effective_map.arity_in:
        raise DomainViolation(
            f"{effective_map.name or 'map'} expects {effective_map.arity_in} inputs, got {len(inputs)}")
    budget = default_query_budget(k) if budget is None else budget
    wrapped = [BudgetedOracle(oracle, budget) for oracle in inputs]
    outputs = [as_rational(v) for v in effective_map.evaluate(wrapped, k)]
    if len(outputs) != effective_map.arity_out:
        raise EffectiveEvaluationError(
            f"{effective_map.name or 'map'} returned {len(outputs)} outputs, expected {effective_map.arity_out}")
    logger.debug("Evaluated %s at precision %s, deepest query %s", effective_map.name, k,
                 max((w.deepest for w in wrapped), default=-1))
    return outputs


def _enclosure_function(expr):
    if isinstance(expr, Expr):
        return lambda boxes: [expr.enclose(boxes)]
    if callable(expr):
        return expr
    expressions = list(expr)
    return lambda boxes: [e.enclose(boxes) for e in expressions]


def refine_loop(expr, inputs, k, budget=None, start=None):
    """Refine oracle queries until every output enclosure is at most 2^{-k} wide.

    ``expr`` is an Expr, a sequence of Exprs, or a callable mapping input
    boxes to output boxes. Returns the enclosure midpoints.
    """
    enclose = _enclosure_function(expr)
    budget = default_query_budget(k) if budget is None else budget
    target = dyadic(k)
    depth = k + 1 if start is None else start
    reason = ''
    while depth <= budget:
        boxes = [oracle.enclosure(depth) for oracle in inputs]
        try:
            enclosures = enclose(boxes)
        except PrecisionRefinementRequired as exc:
            reason = str(exc)
        else:
            if all(box.width <= target for box in enclosures):
                return [box.midpoint for box in enclosures]
            reason = f"enclosure width above 2^-{k} at depth {depth}"
        if all(oracle.exact is not None for oracle in inputs):
            # exact inputs give the same boxes at every depth
            break
        depth += 1
    logger.warning("Refinement gave up at depth %s for precision %s: %s", depth, k, reason)
    raise PrecisionExhausted(k, budget, reason)
