"""Interval branch-and-bound for BP-A.

Minimizes p(x) = sum_i q(x_i) over the closed ball ||x||_2 <= sqrt(N) beta
subject to ||Ax - y||_2^2 <= eps^2. Boxes are kept in a heap keyed by
(lower bound, box id), so the processing order is deterministic.
"""
import heapq
import logging
from dataclasses import dataclass
from fractions import Fraction

from django.conf import settings

from exact.interval import DyadicInterval
from exact.linalg import matvec, squared_norm, vec_sub
from exact.rational import as_rational, format_rational, format_vector
from invprob.basis_pursuit import solve_bp
from invprob.exceptions import InfeasibleInstanceError, InstanceFormatError
from invprob.results import BUDGET, OPTIMAL, TRIVIAL, SolveResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Box:
    ident: str
    sides: tuple

    @property
    def width(self):
        return max(side.width for side in self.sides)

    @property
    def center(self):
        return [side.midpoint for side in self.sides]

    def split(self):
        widths = [side.width for side in self.sides]
        axis = widths.index(max(widths))
        side = self.sides[axis]
        halves = (DyadicInterval(side.lo, side.midpoint), DyadicInterval(side.midpoint, side.hi))
        return [
            Box(self.ident + str(i), self.sides[:axis] + (half,) + self.sides[axis + 1:])
            for i, half in enumerate(halves)
        ]


def residual_enclosure(A, y, sides):
    total = DyadicInterval.point(0)
    for row, target in zip(A, y):
        value = DyadicInterval.point(-target)
        for coefficient, side in zip(row, sides):
            value = value + side.scale(coefficient)
        total = total + value.square()
    return total


def norm_enclosure(sides):
    total = DyadicInterval.point(0)
    for side in sides:
        total = total + side.square()
    return total


def _result(sides, lower, upper, status, nodes, p, ball2, point=None):
    gap = upper - lower
    certificate = {
        'valid': status == OPTIMAL,
        'lower_bound': format_rational(lower),
        'upper_bound': format_rational(upper),
        'gap': format_rational(gap),
    }
    metadata = {
        'nodes': nodes,
        'degree': p.degree,
        'boundary_contact': norm_enclosure(sides).hi >= ball2,
    }
    if point is not None:
        metadata['point'] = format_vector(point)
    return SolveResult(
        problem='bpa',
        minimizer=list(sides),
        objective=DyadicInterval(lower, upper),
        certificate=certificate,
        status=status,
        metadata=metadata,
    )


def candidate_boxes(heap, upper):
    """Live boxes that may still hold a global minimizer."""
    if upper is None:
        return [box for _, _, box in heap]
    return [box for lower, _, box in heap if lower <= upper] or [box for _, _, box in heap]


def hull_of(boxes):
    sides = boxes[0].sides
    for box in boxes[1:]:
        sides = tuple(a.hull(b) for a, b in zip(sides, box.sides))
    return sides


def _budget_result(heap, incumbent, nodes, p, ball2):
    lower = heap[0][0]
    if incumbent is None:
        boxes = candidate_boxes(heap, None)
        upper = max(p.enclose(box.sides).hi for box in boxes)
        point = None
    else:
        upper, point = incumbent
        boxes = candidate_boxes(heap, upper)
    return _result(hull_of(boxes), lower, upper, BUDGET, nodes, p, ball2, point)


def solve_bpa_branch_bound(A, y, epsilon, p, tol, node_budget=None):
    """Enclose every global minimizer of BP-A.

    A box is dropped only when the interval tests exclude it or its lower
    bound exceeds the best feasible value found, so the live boxes with
    lower bound <= that value cover all global minimizers. The result is
    optimal once their hull is at most tol wide and the objective interval
    [lower, upper] is at most tol wide; at the node budget the same hull is
    returned flagged as budget.
    """
    A = [[Fraction(v) for v in row] for row in A]
    y = [Fraction(v) for v in y]
    eps2 = as_rational(epsilon) ** 2
    tol = as_rational(tol)
    N = len(A[0])
    if p.dimension != N:
        raise InstanceFormatError('A', f"approximation built for N={p.dimension}, instance has N={N}")
    budget = settings.WORKBENCH_BNB_NODE_BUDGET if node_budget is None else node_budget
    ball2 = N * p.beta * p.beta

    def excluded(box):
        return residual_enclosure(A, y, box.sides).lo > eps2 or norm_enclosure(box.sides).lo > ball2

    def feasible(point):
        return squared_norm(vec_sub(matvec(A, point), y)) <= eps2 and squared_norm(point) <= ball2

    root = Box('r', tuple(DyadicInterval(-p.radius, p.radius) for _ in range(N)))
    if excluded(root):
        residual = residual_enclosure(A, y, root.sides)
        raise InfeasibleInstanceError({'residual_squared_lower': format_rational(residual.lo),
                                       'epsilon_squared': format_rational(eps2)},
                                      "constraint set misses the domain box")
    if root.width <= tol:
        objective = p.enclose(root.sides)
        status = OPTIMAL if objective.width <= tol else TRIVIAL
        return _result(root.sides, objective.lo, objective.hi, status, 1, p, ball2)

    heap = [(p.enclose(root.sides).lo, root.ident, root)]
    incumbent = None
    nodes = 1
    next_check = 0
    while heap:
        if incumbent is not None and nodes >= next_check:
            upper, point = incumbent
            lower = heap[0][0]
            if upper - lower <= tol:
                sides = hull_of(candidate_boxes(heap, upper))
                if max(side.width for side in sides) <= tol:
                    logger.info("BP-A solved after %s nodes: objective in [%s, %s]", nodes, lower, upper)
                    return _result(sides, lower, upper, OPTIMAL, nodes, p, ball2, point)
                # rescan once as many nodes as the heap holds have been added
                next_check = nodes + len(heap)
        if nodes >= budget:
            logger.warning("BP-A node budget %s exhausted at lower bound %s", budget, heap[0][0])
            return _budget_result(heap, incumbent, nodes, p, ball2)
        lower, _, box = heapq.heappop(heap)
        if incumbent is not None and lower > incumbent[0]:
            continue
        for child in box.split():
            nodes += 1
            if excluded(child):
                continue
            center = child.center
            if feasible(center):
                upper = p.enclose_at(center).hi
                if incumbent is None or upper < incumbent[0]:
                    incumbent = (upper, center)
            child_lower = p.enclose(child.sides).lo
            if incumbent is not None and child_lower > incumbent[0]:
                continue
            heapq.heappush(heap, (child_lower, child.ident, child))
        logger.debug("BP-A node %s: lower %s, heap %s", box.ident, lower, len(heap))
    raise InfeasibleInstanceError({'nodes': nodes, 'epsilon_squared': format_rational(eps2)},
                                  "every box excluded by the interval residual or ball test")


def check_bpa_domain(A, y, epsilon, p, bp_result=None):
    """Prove that BP-A minimizers lie inside the open ball from the exact BP optimum.

    A BP-A minimizer x has ||x||_2 <= ||x||_1 <= p(x) + gamma <= opt + 2 gamma,
    so (opt + 2 gamma)^2 < N beta^2 places it strictly inside.
    """
    if p.gamma is None:
        raise ValueError("approximation carries no certified gamma")
    result = bp_result or solve_bp(A, y, epsilon)
    bound = result.objective + 2 * p.gamma
    ball2 = p.dimension * p.beta * p.beta
    return {
        'valid': bound * bound < ball2,
        'bp_objective': result.objective,
        'bound': bound,
        'ball_radius_squared': ball2,
    }
