"""A one-parameter BP family whose minimizer jumps at a rational threshold.

A = [1, 1 + t], y = (1), eps = 1/8. For t < 0 the first column is the
cheaper one and the minimizer is (1 - eps, 0); for t > 0 it is
(0, (1 - eps)/(1 + t)). Any two minimizers on opposite sides are at
Euclidean distance at least 1 - eps.
"""
from fractions import Fraction

from exact.rational import as_rational
from invprob.exceptions import InstanceFormatError
from invprob.instance import Instance

THRESHOLD = Fraction(0)
EPSILON = Fraction(1, 8)
PARAMETER_RANGE = (Fraction(-1, 2), Fraction(1, 2))
JUMP = 1 - EPSILON


def discontinuity_family(t, epsilon=EPSILON):
    t = as_rational(t)
    low, high = PARAMETER_RANGE
    if not low < t < high:
        raise InstanceFormatError('t', f"parameter must lie in ({low}, {high}), got {t}")
    return Instance.build([[1, 1 + t]], [1], epsilon=epsilon)
