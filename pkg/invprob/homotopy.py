"""Exact lasso^2 regularization path.

Minimizers of lam*||x||_1 + ||Ax - y||_2^2 are piecewise linear in lam.
On a segment with support S and signs s the KKT system reads
G x_S = A_S^T y - lam*s/2 with G = A_S^T A_S, so x_S(lam) = u - lam*v and
the correlations 2 A^T (y - A x) are affine in lam. Breakpoints are found
with field operations and comparisons only, so every quantity below stays
an exact rational.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from django.conf import settings

from exact.exceptions import SingularSystemError
from exact.linalg import dot, gram, matvec, solve, squared_norm, transpose, vec_add, vec_scale, vec_sub
from exact.rational import ZERO
from exact.scalars import absolute, sign, simplify
from invprob.exceptions import DegenerateInstanceError
from invprob.kkt import kkt_check_lasso2
from invprob.results import Breakpoint, SolveResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathSegment:
    """x(lam) = u - lam*v on [lam_lo, lam_hi]; lam_hi None means unbounded."""
    lam_hi: Optional[Fraction]
    lam_lo: Fraction
    support: tuple
    signs: tuple
    u: tuple
    v: tuple
    # residual y - A x(lam) = r0 + lam * r1
    r0: tuple
    r1: tuple
    event: Optional[Breakpoint] = None

    def contains(self, lam):
        return self.lam_lo <= lam and (self.lam_hi is None or lam <= self.lam_hi)

    def point(self, lam, dimension):
        x = [ZERO] * dimension
        for position, index in enumerate(self.support):
            x[index] = simplify(self.u[position] - lam * self.v[position])
        return x

    def residual_squared(self, lam):
        return squared_norm(vec_add(self.r0, vec_scale(lam, self.r1)))

    def residual_quadratic(self):
        """Coefficients (a, b, c) with ||y - A x(lam)||^2 = a lam^2 + b lam + c."""
        return squared_norm(self.r1), 2 * dot(self.r0, self.r1), squared_norm(self.r0)


class LassoPath:
    """Iterates path segments from lam = infinity down to lam = 0."""

    def __init__(self, A, y, max_steps=None):
        self.A = [list(row) for row in A]
        self.y = list(y)
        self.columns = transpose(self.A)
        self.N = len(self.columns)
        self.max_steps = settings.WORKBENCH_HOMOTOPY_MAX_STEPS if max_steps is None else max_steps
        self.correlations = [2 * dot(col, self.y) for col in self.columns]
        self.lam_max = max((absolute(c) for c in self.correlations), default=ZERO)

    def _segment_data(self, support, signs):
        if not support:
            zero = tuple(ZERO for _ in self.y)
            return (), (), tuple(self.y), zero
        active = [self.columns[i] for i in support]
        G = gram(active)
        rhs_u = [dot(col, self.y) for col in active]
        rhs_v = [Fraction(s, 2) for s in signs]
        try:
            u, v = solve(G, rhs_u), solve(G, rhs_v)
        except SingularSystemError:
            raise DegenerateInstanceError(support, "singular active-set system") from None
        active_rows = transpose(active)
        r0 = vec_sub(self.y, matvec(active_rows, u))
        r1 = matvec(active_rows, v)
        return tuple(u), tuple(v), tuple(r0), tuple(r1)

    def _next_event(self, lam_c, support, signs, u, v, r0, r1, last):
        """Largest breakpoint in (0, lam_c]; ties go to the lowest index."""
        best = None
        for i in range(self.N):
            join_sign = 0
            if i in support:
                position = support.index(i)
                if signs[position] * v[position] >= 0:
                    continue
                lam_e, event = u[position] / v[position], 'drop'
            else:
                alpha = 2 * dot(self.columns[i], r0)
                beta = 2 * dot(self.columns[i], r1)
                lam_e, event = None, 'join'
                for s in (1, -1):
                    slope = 1 - s * beta
                    if slope <= 0:
                        continue
                    candidate = s * alpha / slope
                    if lam_e is None or candidate > lam_e:
                        lam_e, join_sign = candidate, s
                if lam_e is None:
                    continue
            if lam_e <= 0 or lam_e > lam_c:
                continue
            if lam_e == lam_c and i == last:
                continue
            if best is None or lam_e > best[0]:
                best = (lam_e, event, i, join_sign)
        return best

    def segments(self):
        support, signs = (), ()
        u, v, r0, r1 = self._segment_data(support, signs)
        lam_hi, last, event = None, None, None
        for _ in range(self.max_steps):
            upper = self.lam_max if lam_hi is None else lam_hi
            found = self._next_event(upper, support, signs, u, v, r0, r1, last)
            lam_lo = ZERO if found is None else found[0]
            yield PathSegment(lam_hi, lam_lo, support, signs, u, v, r0, r1, event=event)
            if found is None:
                return
            lam_e, kind, index, join_sign = found
            if kind == 'join':
                sign_of = dict(zip(support, signs))
                sign_of[index] = join_sign
                support = tuple(sorted(sign_of))
                signs = tuple(sign_of[i] for i in support)
            else:
                position = support.index(index)
                support = support[:position] + support[position + 1:]
                signs = signs[:position] + signs[position + 1:]
            logger.debug("Breakpoint %s of index %s at lambda %s, support %s", kind, index, lam_e, support)
            u, v, r0, r1 = self._segment_data(support, signs)
            lam_hi, last, event = lam_e, index, Breakpoint(lam_e, kind, index, support)
        raise DegenerateInstanceError(support, f"no path end after {self.max_steps} breakpoints")



def lasso2_objective(A, y, lam, x):
    residual = vec_sub(matvec(A, x), y)
    total = squared_norm(residual)
    for value in x:
        total = total + lam * absolute(value)
    return simplify(total)


def solve_lasso2_homotopy(A, y, lam, max_steps=None):
    """Exact minimizer of lam*||x||_1 + ||Ax - y||_2^2 by following the path."""
    A = [[Fraction(v) for v in row] for row in A]
    y = [Fraction(v) for v in y]
    lam = Fraction(lam)
    path = LassoPath(A, y, max_steps=max_steps)
    breakpoints = []
    x = None
    for segment in path.segments():
        if segment.event is not None:
            breakpoints.append(segment.event)
        if segment.contains(lam):
            x = segment.point(lam, path.N)
            break
    if x is None:
        x = [ZERO] * path.N
    certificate = kkt_check_lasso2(A, y, lam, x)
    objective = lasso2_objective(A, y, lam, x)
    logger.info("Solved lasso2 (m=%s, N=%s) at lambda %s, support %s after %s breakpoints",
                len(A), path.N, lam, [i for i, value in enumerate(x) if sign(value) != 0], len(breakpoints))
    return SolveResult(
        problem='lasso2',
        minimizer=x,
        objective=objective,
        certificate=certificate,
        breakpoints=breakpoints,
        metadata={'lambda': lam, 'lambda_max': path.lam_max},
    )
