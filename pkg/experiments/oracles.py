"""A computable real that is not rational: pi via Machin's formula.

pi = 16 atan(1/5) - 4 atan(1/239). Each arctangent series alternates with
decreasing terms, so the first omitted term bounds its tail.
"""
from fractions import Fraction

from exact.oracle import RealOracle
from exact.rational import dyadic, floor_dyadic


def _atan_inverse(x, tolerance):
    """Partial sum of atan(1/x) with |tail| <= tolerance."""
    total = Fraction(0)
    power = x
    j = 0
    while True:
        term = Fraction(1, (2 * j + 1) * power)
        if term <= tolerance:
            return total
        total += term if j % 2 == 0 else -term
        power *= x * x
        j += 1


def machin_pi(k):
    """Rational r with |r - pi| <= 2^-k."""
    # series error <= 2^-(k+1), rounding error < 2^-(k+1)
    series = 16 * _atan_inverse(5, dyadic(k + 6)) - 4 * _atan_inverse(239, dyadic(k + 4))
    return floor_dyadic(series, k + 2)


def pi_oracle():
    return RealOracle(query=machin_pi, label='pi:machin')
