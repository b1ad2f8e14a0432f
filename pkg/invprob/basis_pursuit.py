"""Basis pursuit min ||x||_1 s.t. ||Ax - y||_2 <= eps via the lasso^2 path.

The residual along the path is a piecewise quadratic in lam. The BP
minimizer is the path point where it first reaches eps^2, so the matching
lam is a root of a rational quadratic and lives in Q(sqrt(D)).
"""
import logging
from fractions import Fraction

from exact.linalg import squared_norm
from exact.quadext import QuadExt, sqrt_rational
from exact.rational import ZERO, format_rational
from exact.scalars import absolute, simplify
from invprob.exceptions import InfeasibleInstanceError
from invprob.homotopy import LassoPath
from invprob.kkt import kkt_check_bp
from invprob.results import SolveResult

logger = logging.getLogger(__name__)


def l1_norm(x):
    total = ZERO
    for value in x:
        total = total + absolute(value)
    return simplify(total)


def _matching_lambda(segment, eps2):
    a, b, c = segment.residual_quadratic()
    c = c - eps2
    if a == 0:
        if b == 0:
            return segment.lam_hi
        return -c / b
    discriminant = b * b - 4 * a * c
    # larger root: the residual grows with lam on this segment
    root = (sqrt_rational(discriminant) - b) / (2 * a)
    return simplify(root)


def solve_bp(A, y, epsilon, max_steps=None):
    A = [[Fraction(v) for v in row] for row in A]
    y = [Fraction(v) for v in y]
    epsilon = Fraction(epsilon)
    eps2 = epsilon * epsilon
    N = len(A[0])
    if squared_norm(y) <= eps2:
        x = [ZERO] * N
        logger.info("BP origin is feasible (||y||^2 <= eps^2)")
        return SolveResult('bp', x, ZERO, kkt_check_bp(A, y, epsilon, x), metadata={'epsilon': epsilon})

    path = LassoPath(A, y, max_steps=max_steps)
    breakpoints = []
    last = None
    for segment in path.segments():
        last = segment
        if segment.event is not None:
            breakpoints.append(segment.event)
        if segment.residual_squared(segment.lam_lo) > eps2:
            continue
        lam = _matching_lambda(segment, eps2)
        x = segment.point(lam, N)
        certificate = kkt_check_bp(A, y, epsilon, x, multiplier=lam)
        radicand = lam.d if isinstance(lam, QuadExt) else 1
        logger.info("Solved BP (m=%s, N=%s) at eps %s, matched lambda in Q(sqrt(%s)), support %s",
                    len(A), N, epsilon, radicand, list(segment.support))
        return SolveResult(
            problem='bp',
            minimizer=x,
            objective=l1_norm(x),
            certificate=certificate,
            breakpoints=breakpoints,
            metadata={'epsilon': epsilon, 'lambda': lam, 'radicand': radicand},
        )
    residual2 = last.residual_squared(ZERO)
    witness = {'min_residual_squared': format_rational(residual2), 'epsilon_squared': format_rational(eps2)}
    raise InfeasibleInstanceError(witness, "residual stays above eps on the whole path")
